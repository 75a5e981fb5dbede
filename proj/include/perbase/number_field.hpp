#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "perbase/int_poly.hpp"
#include "perbase/interval.hpp"
#include "perbase/root_isolation.hpp"

namespace perbase {

class NumberField;
using Field = std::shared_ptr<const NumberField>;

/// Approximate location of the wanted root.
struct RootHint {
  BigRational re = 0, im = 0;
};

/// Parses "re,im" or "re" (decimals or rationals).
RootHint parse_root_hint(const std::string& text);

/// Q(beta) for beta a selected root of an irreducible primitive integer
/// polynomial with positive leading coefficient and |beta| > 1.
class NumberField {
 public:
  NumberField(IntPoly minpoly, RootBox box, int index, std::optional<RatComplex> exact);

  const IntPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  /// a = a_d > 0.
  const BigInt& leading() const { return minpoly_.leading(); }
  bool is_rational() const { return degree() == 1; }
  bool beta_is_real() const { return box_.real; }
  /// beta itself when it is rational or a Gaussian rational.
  const std::optional<RatComplex>& exact_beta() const { return exact_; }
  /// Position of beta in the root ordering of isolate_roots.
  int beta_index() const { return index_; }
  /// Certified box around beta of size <= eps (refined on demand, cached).
  RootBox beta_box(const BigRational& eps) const;
  RootBox beta_box() const;
  std::string spec() const { return minpoly_.to_spec(); }

  /// Reduces an integer polynomial in beta modulo the minimal polynomial;
  /// the result is num / den with num of length d.
  void reduce(std::vector<BigInt>& num, BigInt& den) const;

 private:
  IntPoly minpoly_;
  mutable RootBox box_;
  mutable std::mutex mutex_;
  int index_;
  std::optional<RatComplex> exact_;
};

/// Verifies irreducibility, normalizes the polynomial and selects beta.
/// Without a hint, beta is a root of maximal modulus, ties broken by largest
/// real part, then positive imaginary part.
Field make_field(const std::vector<BigInt>& coeffs, const std::optional<RootHint>& hint = std::nullopt);
Field make_field(const IntPoly& f, const std::optional<RootHint>& hint = std::nullopt);
/// Field spec text "a0,a1,...,ad", optional hint text "re,im".
Field parse_field(const std::string& spec, const std::string& hint = "");

bool same_field(const Field& a, const Field& b);

/// A nontrivial factor of f over Z, if any.
std::optional<IntPoly> find_factor(const IntPoly& f);
bool is_irreducible(const IntPoly& f);

/// Element of Q(beta) stored as integer coordinates over a common positive
/// denominator, in lowest terms.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(Field field);

  static FieldElement from_rational(const Field& field, const BigRational& v);
  static FieldElement from_coords(const Field& field, const std::vector<BigRational>& coords);
  /// sum c_i beta^i / den for a coefficient list of any length.
  static FieldElement from_poly(const Field& field, std::vector<BigInt> coeffs, BigInt den = 1);
  static FieldElement beta(const Field& field);

  const Field& field() const { return field_; }
  const std::vector<BigInt>& num() const { return num_; }
  const BigInt& den() const { return den_; }
  std::vector<BigRational> coords() const;
  BigRational coord(std::size_t i) const;
  bool is_zero() const;
  std::optional<BigRational> as_rational() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const BigRational& k, const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;
  FieldElement pow(long k) const;
  std::size_t hash() const;
  /// "p/q" for rational elements, otherwise "c0;c1;...".
  std::string to_string() const;

 private:
  void normalize();
  Field field_;
  std::vector<BigInt> num_;
  BigInt den_ = 1;
};

struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const { return x.hash(); }
};

FieldElement elem_add(const FieldElement& x, const FieldElement& y);
FieldElement elem_sub(const FieldElement& x, const FieldElement& y);
FieldElement elem_mul(const FieldElement& x, const FieldElement& y);
FieldElement elem_inv(const FieldElement& x);

/// "p/q" or "c0;c1;...;c_{d-1}".
FieldElement parse_element(const Field& field, const std::string& text);

/// Rectangle of size <= eps containing the complex value of x. Calls with
/// smaller eps return nested rectangles.
CInterval embed(const FieldElement& x, const BigRational& eps);
/// Value of x under an explicit box for beta.
CInterval embed_in(const FieldElement& x, const RootBox& box);
/// Exact complex value when beta is rational or a Gaussian rational.
std::optional<RatComplex> exact_value(const FieldElement& x);

/// Exact sign of x for real beta.
int sign_real(const FieldElement& x);
/// Exact floor of x for real beta.
BigInt floor_real(const FieldElement& x);
/// Sign of |x| - r. Exact for real beta and Gaussian-rational beta; for
/// other complex fields an undecided tie after 4096 bits reports 0.
int compare_modulus(const FieldElement& x, const BigRational& r);

std::vector<RootBox> conjugate_boxes(const Field& field, const BigRational& eps);

/// Primitive minimal polynomial of an element (positive leading coefficient).
IntPoly minpoly_of_element(const FieldElement& x);
IntPoly minpoly_of_power(const Field& field, unsigned m);

}  // namespace perbase
