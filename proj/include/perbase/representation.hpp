#pragma once

#include <string>
#include <vector>

#include "perbase/number_field.hpp"

namespace perbase {

/// Eventually periodic digit string. The first preperiod digit multiplies
/// beta^L, the following ones beta^(L-1), beta^(L-2), ...; the period block
/// repeats forever after the preperiod. The canonical zero has empty
/// preperiod and period.
struct Representation {
  long L = 0;
  std::vector<BigInt> preperiod;
  std::vector<BigInt> period;

  bool is_zero() const { return preperiod.empty() && period.empty(); }
  bool is_finite() const { return period.empty(); }
  /// Largest digit magnitude.
  BigInt alphabet_bound() const;
  /// Digit multiplying beta^e (e <= L).
  BigInt digit_at(long e) const;
  friend bool operator==(const Representation& a, const Representation& b) {
    return a.L == b.L && a.preperiod == b.preperiod && a.period == b.period;
  }
};

/// Sorted integer digit set containing 0.
struct Alphabet {
  std::vector<BigInt> digits;
  static Alphabet range(long lo, long hi);
  bool contains(const BigInt& a) const;
};

FieldElement eval_rep(const Field& field, const Representation& rep);
Representation canonicalize(Representation rep);

/// "1,2•0,(0,-1)ω"; ascii uses "." and "^w".
std::string format_rep(const Representation& rep, bool ascii = false);
/// Accepts the Unicode and ASCII spellings; throws ParseError.
Representation parse_rep(const std::string& text);

/// |eval(rep)| >= c |beta|^L.
bool weak_greedy_check(const Field& field, const Representation& rep, const BigRational& c);

/// Field-valued digits with their common-denominator expansion
/// eps_j = (sum_i p[j][i] beta^i) / Q.
struct FieldAlphabet {
  std::vector<FieldElement> digits;
  BigInt Q = 1;
  std::vector<std::vector<BigInt>> p;

  static FieldAlphabet from_digits(const std::vector<FieldElement>& digits);
  BigInt max_coefficient() const;
};

/// Digit string over the indices of a FieldAlphabet.
struct IndexRepresentation {
  long L = 0;
  std::vector<int> preperiod;
  std::vector<int> period;
};

FieldElement eval_index_rep(const Field& field, const FieldAlphabet& alphabet, const IndexRepresentation& rep);

struct ReducedRepresentation {
  Representation rep;  // integer digits, eval(rep) = Q * eval(input)
  BigInt Q = 1;
};

/// Regroups the coordinate expansion of the field digits into integer digits
/// b_n = sum_i p_i^(a_{n+i}). The output represents Q times the input value
/// with |b_n| <= d * max|p| and leading index at most L + d - 1.
ReducedRepresentation reduce_alphabet_to_integers(const Field& field, const FieldAlphabet& alphabet,
                                                  const IndexRepresentation& rep);

/// Interleaves base-gamma representations of x_0, ..., x_{k-1}, where
/// gamma = beta^m, into one base-beta representation of sum x_i beta^i.
Representation lift_rep_from_power_base(const Field& field, unsigned m, const std::vector<Representation>& components);

/// Image of y in Q(gamma) under gamma -> beta^m.
FieldElement power_field_to_base(const FieldElement& y, const Field& field, unsigned m);

}  // namespace perbase
