#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perbase/bigint.hpp"

namespace perbase {

/// Exact complex rational number, used for root approximations and for
/// fields whose embedding has rational coordinates.
struct RatComplex {
  BigRational re = 0;
  BigRational im = 0;

  friend RatComplex operator+(const RatComplex& a, const RatComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend RatComplex operator-(const RatComplex& a, const RatComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend RatComplex operator/(const RatComplex& a, const RatComplex& b);
  friend bool operator==(const RatComplex& a, const RatComplex& b) { return a.re == b.re && a.im == b.im; }
  BigRational norm2() const { return re * re + im * im; }
  RatComplex conj() const { return {re, -im}; }
};

/// Polynomial with integer coefficients, ascending by exponent. Trailing
/// zero coefficients are never stored; the zero polynomial has no
/// coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  static IntPoly from_ints(std::initializer_list<long> coeffs);
  static IntPoly monomial(const BigInt& c, std::size_t exp);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const BigInt& leading() const { return coeffs_.back(); }
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  BigInt content() const;
  /// Divides by the content and makes the leading coefficient positive.
  IntPoly primitive() const;
  bool is_primitive() const { return !is_zero() && content() == 1; }

  IntPoly derivative() const;
  /// x^d f(1/x)
  IntPoly reversed() const;
  /// f(-x)
  IntPoly negated_argument() const;

  BigRational eval(const BigRational& x) const;
  BigInt eval(const BigInt& x) const;
  RatComplex eval(const RatComplex& z) const;
  int sign_at(const BigRational& x) const { return sgn(eval(x)); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& c, const IntPoly& a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Exact quotient in Z[x] if `divisor` divides *this, else nullopt.
  std::optional<IntPoly> exact_div(const IntPoly& divisor) const;

  /// Comma-separated ascending coefficients, the field-spec text format.
  std::string to_spec() const;
  /// Human-readable "x^2 - x - 1".
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

IntPoly parse_poly_spec(const std::string& text);

/// Polynomial over the rationals; used for gcds and resultant-free
/// elimination steps.
struct RatPoly {
  std::vector<BigRational> c;  // ascending

  static RatPoly from(const IntPoly& p);
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
  RatPoly monic() const;
  IntPoly to_primitive_int() const;
};

RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly gcd(RatPoly a, RatPoly b);
/// s with s*a = 1 mod m (a, m coprime); throws DivisionByZero otherwise.
RatPoly inverse_mod(const RatPoly& a, const RatPoly& m);

bool is_squarefree(const IntPoly& f);

/// f(x) = +-x^d f(1/x).
bool is_self_reciprocal(const IntPoly& f);

/// For palindromic f of even degree 2n, the g with f(x) = x^n g(x + 1/x).
IntPoly reciprocal_trace_poly(const IntPoly& f);

/// Sturm sequence of a squarefree polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& f);
  int sign_changes(const BigRational& x) const;
  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count_roots(const BigRational& lo, const BigRational& hi) const;

 private:
  std::vector<IntPoly> seq_;
};

/// Cauchy bound: every complex root has modulus < bound.
BigRational root_modulus_bound(const IntPoly& f);

/// Degrees attainable by a nontrivial factor over Z, inferred from
/// distinct-degree factorizations modulo several small primes. Always
/// contains 0 and deg f.
std::vector<int> possible_factor_degrees(const IntPoly& f);

/// Power sums p_k = sum r^k over the roots, k = 1..count (Newton identities).
std::vector<BigRational> power_sums(const IntPoly& f, int count);
/// Monic polynomial with the given power sums (its degree = sums.size()).
RatPoly from_power_sums(const std::vector<BigRational>& sums);

}  // namespace perbase
