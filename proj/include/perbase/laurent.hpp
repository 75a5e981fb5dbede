#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "perbase/number_field.hpp"

namespace perbase {

/// Sum c_e beta^e over finitely many integer exponents, coefficients in Z.
/// Distinct presentations may denote the same field element; compare with
/// laurent_to_field.
class LaurentIntElement {
 public:
  LaurentIntElement() = default;
  explicit LaurentIntElement(Field field) : field_(std::move(field)) {}
  LaurentIntElement(Field field, const std::map<long, BigInt>& terms);

  static LaurentIntElement monomial(const Field& field, long exp, const BigInt& c = 1);
  static LaurentIntElement constant(const Field& field, const BigInt& c);

  const Field& field() const { return field_; }
  const std::map<long, BigInt>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  long min_exp() const { return terms_.begin()->first; }
  long max_exp() const { return terms_.rbegin()->first; }
  BigInt coeff(long e) const;

  LaurentIntElement& add_term(long exp, const BigInt& c);
  LaurentIntElement shifted(long k) const;
  LaurentIntElement operator-() const;
  friend LaurentIntElement operator+(const LaurentIntElement& a, const LaurentIntElement& b);
  friend LaurentIntElement operator-(const LaurentIntElement& a, const LaurentIntElement& b);
  friend LaurentIntElement operator*(const LaurentIntElement& a, const LaurentIntElement& b);
  friend LaurentIntElement operator*(const BigInt& k, const LaurentIntElement& a);
  friend bool operator==(const LaurentIntElement& a, const LaurentIntElement& b) { return a.terms_ == b.terms_; }
  LaurentIntElement pow(unsigned long k) const;

  /// "c_e*b^e + ..." with descending exponents, "0" when empty.
  std::string to_string() const;

 private:
  Field field_;
  std::map<long, BigInt> terms_;
};

/// Exact sum c_e beta^e for terms sorted by exponent (duplicates allowed).
FieldElement eval_terms(const Field& field, const std::vector<std::pair<long, BigInt>>& terms);

FieldElement laurent_to_field(const LaurentIntElement& z);

}  // namespace perbase
