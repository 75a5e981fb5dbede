#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "perbase/dynamics.hpp"
#include "perbase/error.hpp"

using namespace perbase;

namespace {

Field field_of(std::initializer_list<long> c, std::optional<RootHint> hint = std::nullopt) {
  return make_field(IntPoly::from_ints(c), hint);
}

Field golden() { return field_of({-1, -1, 1}); }
Field base_im1() { return field_of({2, 2, 1}, RootHint{-1, 1}); }

// Omega for base i - 1 with digits {-1, 0, 1}; beta * Omega is the hull of
// +-2, 1 +- i, -1 +- i.
Polygon hexagon() {
  return {RatComplex{1, 0}, RatComplex{1, 1}, RatComplex{0, 1}, RatComplex{-1, 0}, RatComplex{-1, -1}, RatComplex{0, -1}};
}

Polygon wide_hexagon() {
  return {RatComplex{2, 0}, RatComplex{1, 1}, RatComplex{-1, 1}, RatComplex{-2, 0}, RatComplex{-1, -1}, RatComplex{1, -1}};
}

DigitSelector hex_selector(Field f) { return thurston_polygon_selector(f, integer_digits(f, {-1, 0, 1}), hexagon()); }

FieldElement rat(const Field& f, long p, long q) { return FieldElement::from_rational(f, BigRational(p, q)); }

FieldElement random_element(std::mt19937_64& rng, const Field& f, long maxnum, long maxden) {
  std::vector<BigRational> c;
  for (int i = 0; i < f->degree(); ++i) c.push_back(oracle::random_rational(rng, maxnum, maxden));
  return FieldElement::from_coords(f, c);
}

long double approx_abs(const FieldElement& x) {
  CInterval b = embed(x, BigRational(1, 1L << 40));
  long double re = b.re.mid().get_d(), im = b.im.mid().get_d();
  return std::sqrt(re * re + im * im);
}

void check_orbit(const DigitSelector& sel, const FieldElement& x) {
  OrbitTrace tr;
  Representation r = orbit_periodize(sel, x, kDefaultMaxSteps, &tr);
  CHECK_MESSAGE(eval_rep(sel.field, r) == x, x.to_string() << " -> " << format_rep(r, true));
  FieldElement beta = FieldElement::beta(sel.field);
  for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i)
    CHECK(beta * tr.steps[i].remainder - sel.digits[tr.steps[i].digit] == tr.steps[i + 1].remainder);
  long double amax = 0;
  for (const auto& d : sel.digits) amax = std::max(amax, approx_abs(d));
  long double bound = amax / (approx_abs(beta) - 1);
  for (const auto& st : tr.steps) {
    CHECK(in_region(sel, st.remainder));
    CHECK(approx_abs(st.remainder) <= bound + 1e-12L);
  }
  // Field digits pass through the alphabet reduction, which can raise the
  // leading index by up to d - 1.
  BigRational c = sel.c;
  if (!sel.integer_digits) {
    BigRational beta_up(static_cast<long>(std::ceil(approx_abs(beta))) + 1);
    for (int i = 1; i < sel.field->degree(); ++i) c /= beta_up;
  }
  if (!x.is_zero()) CHECK(weak_greedy_check(sel.field, r, c));
}

}  // namespace

TEST_CASE("greedy selector examples") {
  Field g = golden();
  DigitSelector s = greedy_selector(g);
  CHECK(s.alphabet().digits == std::vector<BigInt>{0, 1});
  DigitChoice ch = select_digit(s, rat(g, 1, 2));
  CHECK(s.digits[ch.index].is_zero());
  CHECK(FieldElement::beta(g) * rat(g, 1, 2) - s.digits[ch.index] == BigRational(1, 2) * FieldElement::beta(g));

  Field five = field_of({-5, 1});
  DigitSelector s5 = greedy_selector(five);
  CHECK(format_rep(orbit_periodize(s5, rat(five, 1, 5)), true) == "0.1");

  Field f32 = field_of({-3, 2});
  DigitSelector s32 = greedy_selector(f32);
  CHECK(s32.alphabet().digits == std::vector<BigInt>{0, 1});
  ch = select_digit(s32, rat(f32, 2, 3));
  CHECK(*s32.digits[ch.index].as_rational() == 1);
  CHECK((FieldElement::beta(f32) * rat(f32, 2, 3) - s32.digits[ch.index]).is_zero());

  CHECK_THROWS_AS(greedy_selector(base_im1()), Error);
  CHECK_THROWS_AS(greedy_selector(field_of({2, 1})), Error);
  try {
    greedy_selector(base_im1());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRealBase);
  }
}

TEST_CASE("balanced selector examples") {
  Field five = field_of({-5, 1});
  DigitSelector s = balanced_selector(five);
  CHECK(s.alphabet().digits == std::vector<BigInt>{-2, -1, 0, 1, 2});
  Representation r = orbit_periodize(s, rat(five, 1, 6));
  CHECK(r.period == std::vector<BigInt>{1, -1});
  CHECK(eval_rep(five, r) == rat(five, 1, 6));
  CHECK(orbit_periodize(s, FieldElement(five)).is_zero());
  CHECK(format_rep(orbit_periodize(s, rat(five, 2, 5)), true) == "0.2");
}

TEST_CASE("Ito-Sadahiro selector examples") {
  Field m2 = field_of({2, 1});
  DigitSelector s = ito_sadahiro_selector(m2);
  CHECK(s.alphabet().digits == std::vector<BigInt>{0, 1, 2});
  CHECK(s.lo == rat(m2, -2, 3));
  DigitChoice ch = select_digit(s, rat(m2, -1, 3));
  CHECK(*s.digits[ch.index].as_rational() == 1);
  Representation r = orbit_periodize(s, rat(m2, -1, 3));
  CHECK(r.period == std::vector<BigInt>{1});
  CHECK(eval_rep(m2, r) == rat(m2, -1, 3));
  ch = select_digit(s, rat(m2, 1, 4));
  CHECK(s.digits[ch.index].is_zero());
  check_orbit(s, rat(m2, 1, 4));
  CHECK(orbit_periodize(s, FieldElement(m2)).is_zero());
  try {
    ito_sadahiro_selector(golden());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNegativeRealBase);
  }
}

TEST_CASE("Thurston coverage") {
  Field f = base_im1();
  CHECK_NOTHROW(hex_selector(f));
  // Independent check of the image: beta times each vertex lands on the wide hexagon.
  Polygon img;
  RatComplex beta{-1, 1};
  for (const auto& v : hexagon()) img.push_back(beta * v);
  for (const auto& v : wide_hexagon()) CHECK(std::find(img.begin(), img.end(), v) != img.end());
  // 2i lies in beta * wide_hexagon but in no translate by -1, 0, 1.
  CHECK_THROWS_AS(thurston_polygon_selector(f, integer_digits(f, {-1, 0, 1}), wide_hexagon()), Error);
  try {
    thurston_polygon_selector(f, integer_digits(f, {0}), hexagon());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageFails);
  }
  DigitSelector d = thurston_default_selector(f);
  // Oracle: lattice points with |x + iy| < |beta| + 1 = sqrt(2) + 1, i.e. x^2 + y^2 <= 5.
  std::size_t count = 0;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) {
      long double r = std::sqrt(static_cast<long double>(x * x + y * y));
      if (r < std::sqrt(2.0L) + 1) ++count;
    }
  CHECK(d.digits.size() == count);
  CHECK_THROWS_AS(thurston_disk_selector(f, integer_digits(f, {0}), 1), Error);
}

TEST_CASE("scale into domain") {
  Field g = golden();
  DigitSelector s = greedy_selector(g);
  CHECK(scale_into_domain(s, rat(g, 1, 2)).n == 0);
  ScaleResult r = scale_into_domain(s, rat(g, 5, 1));
  CHECK(r.n == 4);
  CHECK(r.scaled == rat(g, 5, 1) * FieldElement::beta(g).pow(-4));
  try {
    scale_into_domain(s, rat(g, -1, 2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRepresentable);
  }
  Field f = base_im1();
  CHECK(scale_into_domain(hex_selector(f), FieldElement(f)).n == 0);
}

TEST_CASE("orbit periodization examples") {
  Field g = golden();
  DigitSelector s = greedy_selector(g);
  CHECK(orbit_periodize(s, FieldElement(g)).is_zero());
  check_orbit(s, rat(g, 1, 2));
  Field f = base_im1();
  DigitSelector h = hex_selector(f);
  check_orbit(h, rat(f, 1, 3));
  DigitSelector d = thurston_default_selector(f);
  check_orbit(d, rat(f, 1, 3));
  check_orbit(d, gaussian_element(f, BigRational(2, 7), BigRational(-1, 5)));
}

TEST_CASE("orbit budget") {
  Field f = field_of({-3, 2});
  DigitSelector s = greedy_selector(f);
  try {
    orbit_periodize(s, rat(f, 1, 5), 1000);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRepeatWithinBudget);
  }
}

TEST_CASE("selector soundness on random points of Omega") {
  std::mt19937_64 rng(7);
  std::vector<DigitSelector> sels;
  sels.push_back(greedy_selector(golden()));
  sels.push_back(greedy_selector(field_of({-5, 1})));
  sels.push_back(greedy_selector(field_of({-3, 2})));
  sels.push_back(balanced_selector(field_of({-5, 1})));
  sels.push_back(balanced_selector(field_of({-1, -1, -1, 1})));
  sels.push_back(ito_sadahiro_selector(field_of({2, 1})));
  sels.push_back(ito_sadahiro_selector(field_of({-1, 1, 1})));
  sels.push_back(hex_selector(base_im1()));
  sels.push_back(thurston_default_selector(base_im1()));
  for (const auto& s : sels) {
    int accepted = 0;
    // Points of Omega with rational coordinates in the embedding: sample
    // field elements and keep those inside.
    for (int tries = 0; accepted < 1000 && tries < 20000; ++tries) {
      FieldElement x = random_element(rng, s.field, 3, 16);
      if (!in_region(s, x)) continue;
      ++accepted;
      DigitChoice ch = select_digit(s, x);
      CHECK(in_region(s, FieldElement::beta(s.field) * x - s.digits[ch.index]));
    }
    CHECK(accepted == 1000);
  }
}

TEST_CASE("periodization round trips and weak greedy constant") {
  Field g = golden();
  DigitSelector s = greedy_selector(g);
  for (long q = 2; q <= 20; ++q)
    for (long p = 0; p < q; ++p) check_orbit(s, rat(g, p, q));
  Field five = field_of({-5, 1});
  DigitSelector b = balanced_selector(five);
  for (long q = 1; q <= 15; ++q)
    for (long p = -2 * q; p <= 2 * q; ++p) check_orbit(b, rat(five, p, q));
  Field m2 = field_of({2, 1});
  DigitSelector is = ito_sadahiro_selector(m2);
  for (long q = 1; q <= 12; ++q)
    for (long p = -3 * q; p <= 3 * q; ++p) check_orbit(is, rat(m2, p, q));
  Field f = base_im1();
  DigitSelector h = hex_selector(f);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) check_orbit(h, random_element(rng, f, 9, 7));
}
