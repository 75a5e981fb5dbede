#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perbase/representation.hpp"

namespace perbase {

enum class SelectorKind { Greedy, Balanced, ItoSadahiro, ThurstonDisk, ThurstonPolygon };

std::string_view selector_kind_name(SelectorKind k);

/// Closed convex polygon with rational vertices in counter-clockwise order.
using Polygon = std::vector<RatComplex>;

/// Region Omega with a digit map D such that T(x) = beta x - D(x) stays in
/// Omega. Real selectors use the half-open interval [lo, hi); Thurston
/// selectors use a closed disk about 0 or a closed convex polygon.
struct DigitSelector {
  SelectorKind kind = SelectorKind::Greedy;
  Field field;
  std::vector<FieldElement> digits;  // sorted by (re, im) of their values
  bool integer_digits = true;
  FieldElement lo, hi;            // real interval regions
  BigRational radius = 0;         // ThurstonDisk
  Polygon polygon;                // ThurstonPolygon
  BigRational c = 0;              // |x| >= c |beta|^L for emitted representations

  /// Integer digits as an Alphabet (only when integer_digits).
  Alphabet alphabet() const;
};

DigitSelector greedy_selector(const Field& field);
DigitSelector balanced_selector(const Field& field);
DigitSelector ito_sadahiro_selector(const Field& field);
/// Thurston-type selector; fails with CoverageFails unless
/// beta * Omega is covered by the translates a + Omega.
DigitSelector thurston_disk_selector(const Field& field, const std::vector<FieldElement>& digits, const BigRational& radius);
DigitSelector thurston_polygon_selector(const Field& field, const std::vector<FieldElement>& digits, const Polygon& polygon);
/// Unit disk with all Gaussian-grid digits a where B(a, 1) meets B(0, |beta|).
DigitSelector thurston_default_selector(const Field& field);

/// Integer digits as field elements.
std::vector<FieldElement> integer_digits(const Field& field, const std::vector<long>& values);
/// x + iy as an element of Q(beta), for fields containing i.
FieldElement gaussian_element(const Field& field, const BigRational& re, const BigRational& im);

/// Exact membership (closed polygons and disks, half-open intervals); for
/// complex fields without exact embedding an undecided point reports
/// `ambiguous` and counts as a member.
bool in_region(const DigitSelector& sel, const FieldElement& x, bool* ambiguous = nullptr);

struct DigitChoice {
  std::size_t index = 0;  // into sel.digits
  bool ambiguous = false;
};
DigitChoice select_digit(const DigitSelector& sel, const FieldElement& x);

struct ScaleResult {
  long n = 0;
  FieldElement scaled;  // x / beta^n, inside Omega
};
ScaleResult scale_into_domain(const DigitSelector& sel, const FieldElement& x);

struct OrbitStep {
  FieldElement remainder;  // T_n
  std::size_t digit = 0;   // index of a_{n+1} emitted from T_n
  bool ambiguous = false;
};

struct OrbitTrace {
  long n_scale = 0;
  std::vector<OrbitStep> steps;
  std::optional<std::pair<long, long>> repeat;  // (n, n + l) with T_n = T_{n+l}
};

constexpr long kDefaultMaxSteps = 1000000;

/// Iterates T until an exact remainder repeats. Field-valued digits are
/// converted to integers through the alphabet lemma (requires a common
/// denominator of 1).
Representation orbit_periodize(const DigitSelector& sel, const FieldElement& x, long max_steps = kDefaultMaxSteps,
                               OrbitTrace* trace = nullptr);

/// Geometry helpers.
bool polygon_contains(const Polygon& p, const RatComplex& z);
bool polygon_on_boundary(const Polygon& p, const RatComplex& z);
BigRational polygon_area2(const Polygon& p);
/// P minus the interior of Q, as convex pieces of positive area.
std::vector<Polygon> polygon_subtract(const Polygon& p, const Polygon& q);

}  // namespace perbase
