#pragma once

#include <map>
#include <string>
#include <vector>

#include "perbase/laurent.hpp"
#include "perbase/representation.hpp"

namespace perbase {

/// Sliding-window digit conversion. The output digit at power j is
/// phi(x_{j+t}, ..., x_j, ..., x_{j-r}), window listed from the highest power.
struct ConversionRule {
  enum class Kind { Builtin32, Table };
  Kind kind = Kind::Table;
  Field field;
  int t = 0;
  int r = 0;
  long input_lo = 0;
  long input_hi = 0;
  Alphabet alphabet;
  std::map<std::vector<long>, long> table;

  long apply(const std::vector<long>& window) const;
};

/// Two-pass carry rule for base 3/2: {-3..3} -> {-2..2}.
ConversionRule builtin_rule_32(const Field& field);
/// {"t", "r", "input_range": [lo, hi], "alphabet": [...], "table": {"w1,w2,...": out}}.
ConversionRule rule_from_json(const Field& field, const std::string& json_text);
ConversionRule identity_rule(const Field& field, const Alphabet& alphabet);

bool is_base_32(const Field& field);

/// Rows of the two carry passes over powers top, top-1, ..., bottom.
struct Convert32Rows {
  long top = 0;
  long bottom = 0;
  std::vector<long> a, q, c, p, b;
};
Convert32Rows convert_32_rows(const Representation& a, long top, long bottom);

Representation apply_rule(const ConversionRule& rule, const Representation& rep);
Representation convert_32(const Field& field, const Representation& rep);

/// Digitwise sum on the common window (lcm of the period lengths).
Representation digitwise_add(const Representation& x, const Representation& y, const BigInt& ky = 1);

/// Brings digits into the rule's output alphabet; fails with
/// NormalizerRangeExceeded when the rule cannot absorb them.
Representation normalize(const ConversionRule& rule, const Representation& rep);

Representation per_add(const Field& field, const Representation& x, const Representation& y,
                       const ConversionRule* normalizer = nullptr);
Representation per_sub(const Field& field, const Representation& x, const Representation& y,
                       const ConversionRule* normalizer = nullptr);

LaurentIntElement fin_add(const LaurentIntElement& z, const LaurentIntElement& w);
LaurentIntElement fin_sub(const LaurentIntElement& z, const LaurentIntElement& w);
LaurentIntElement fin_mul(const LaurentIntElement& z, const LaurentIntElement& w);

Representation fin_times_per(const LaurentIntElement& z, const Representation& rep,
                             const ConversionRule* normalizer = nullptr);

/// Finite base-3/2 expansion with digits in {-2..2} of an element of Z[1/6].
LaurentIntElement fin_normalize_32(const Field& field, const BigRational& value);

/// Finite representation of a Laurent element (digits are its coefficients).
Representation laurent_to_rep(const LaurentIntElement& z);

}  // namespace perbase
