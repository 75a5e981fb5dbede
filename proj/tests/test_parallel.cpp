#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "perbase/dynamics.hpp"
#include "perbase/error.hpp"
#include "perbase/parallel.hpp"

using namespace perbase;

namespace {

Field field_of(std::initializer_list<long> c) { return make_field(IntPoly::from_ints(c)); }
Field base32() { return field_of({-3, 2}); }

// Value of a digit stream in base 3/2 with plain rational arithmetic.
BigRational value_32(const Representation& r) {
  BigRational beta(3, 2), total = 0, block = 0;
  long e = r.L;
  for (const auto& d : r.preperiod) total += BigRational(d) * pow(beta, e--);
  if (r.period.empty()) return total;
  for (const auto& d : r.period) block += BigRational(d) * pow(beta, e--);
  return total + block / (1 - pow(beta, -static_cast<long>(r.period.size())));
}

Representation random_rep(std::mt19937_64& rng, int lo, int hi, int maxlen = 6) {
  std::uniform_int_distribution<int> dig(lo, hi), len(0, maxlen), lead(-3, 3);
  Representation r;
  r.L = lead(rng);
  int np = len(rng), s = len(rng);
  for (int i = 0; i < np; ++i) r.preperiod.emplace_back(dig(rng));
  for (int i = 0; i < s; ++i) r.period.emplace_back(dig(rng));
  return canonicalize(r);
}

bool within(const Representation& r, long lo, long hi) {
  for (const auto* v : {&r.preperiod, &r.period})
    for (const auto& d : *v)
      if (d < lo || d > hi) return false;
  return true;
}

LaurentIntElement random_laurent(std::mt19937_64& rng, const Field& f, int terms, int coef) {
  std::uniform_int_distribution<int> e(-4, 4), c(-coef, coef);
  std::map<long, BigInt> m;
  for (int i = 0; i < terms; ++i) m[e(rng)] += c(rng);
  return LaurentIntElement(f, m);
}

}  // namespace

TEST_CASE("carry rows reproduce the worked table") {
  Representation a = parse_rep("2,3•(3,-1,1)ω");
  Convert32Rows rows = convert_32_rows(a, 3, -6);
  CHECK(rows.a == std::vector<long>{0, 0, 2, 3, 3, -1, 1, 3, -1, 1});
  CHECK(rows.q == std::vector<long>{0, 0, 1, 1, 1, 0, 1, 1, 0, 1});
  CHECK(rows.c == std::vector<long>{0, 2, 1, 2, 0, 1, 0, 0, 1, 0});
  CHECK(rows.p == std::vector<long>(10, 0));
  CHECK(rows.b == std::vector<long>{0, 2, 1, 2, 0, 1, 0, 0, 1, 0});
  Field f = base32();
  Representation b = convert_32(f, a);
  CHECK(format_rep(b, true) == "2,1,2.(0,1,0)^w");
  CHECK(eval_rep(f, b) == eval_rep(f, a));
  CHECK(convert_32(f, Representation{}).is_zero());
  CHECK_THROWS_AS(convert_32(f, parse_rep("4•")), Error);
}

TEST_CASE("convert_32 on random streams") {
  Field f = base32();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 400; ++i) {
    Representation a = random_rep(rng, -3, 3);
    Representation b = convert_32(f, a);
    CHECK(within(b, -2, 2));
    CHECK(value_32(b) == value_32(a));
    if (!a.is_zero()) {
      {
        long e0 = a.L - static_cast<long>(a.preperiod.size());
        Convert32Rows rows = convert_32_rows(a, a.L + 2, e0 - 8);
        for (long c : rows.c) CHECK((c >= -3 && c <= 2));
      }
    }
  }
}

TEST_CASE("addition of periodic representations") {
  Field f = base32();
  ConversionRule rule = builtin_rule_32(f);
  Representation x = parse_rep("1•(1,0,2)ω"), y = parse_rep("2,2•(2,-1,-1)ω");
  Representation s = per_add(f, x, y, &rule);
  CHECK(format_rep(s, true) == "2,1,2.(0,1,0)^w");
  CHECK(per_add(f, x, Representation{}) == canonicalize(x));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Representation a = random_rep(rng, -2, 2), b = random_rep(rng, -2, 2);
    Representation c = per_add(f, a, b, &rule);
    CHECK(within(c, -2, 2));
    CHECK(value_32(c) == value_32(a) + value_32(b));
    Representation d = per_sub(f, a, b, &rule);
    CHECK(within(d, -2, 2));
    CHECK(value_32(d) == value_32(a) - value_32(b));
  }
  CHECK_THROWS_AS(per_add(f, parse_rep("3•"), parse_rep("1•"), &rule), Error);

  Field g = field_of({-1, -1, 1});
  DigitSelector sel = greedy_selector(g);
  FieldElement half = FieldElement::from_rational(g, BigRational(1, 2));
  FieldElement third = FieldElement::from_rational(g, BigRational(1, 3));
  Representation sum = per_add(g, orbit_periodize(sel, half), orbit_periodize(sel, third));
  CHECK(eval_rep(g, sum) == FieldElement::from_rational(g, BigRational(5, 6)));
  CHECK_THROWS_AS(per_add(g, sum, sum, &rule), Error);
}

TEST_CASE("finite Laurent arithmetic") {
  Field f = base32();
  LaurentIntElement bm1(f, {{1, 1}, {0, -1}});
  LaurentIntElement sq = fin_mul(bm1, bm1);
  CHECK(sq == LaurentIntElement(f, {{2, 1}, {1, -2}, {0, 1}}));
  CHECK(laurent_to_field(sq) == FieldElement::from_rational(f, BigRational(1, 4)));
  CHECK(fin_add(bm1, LaurentIntElement(f)) == bm1);
  LaurentIntElement w(f, {{4, 1}, {2, -1}, {0, -2}});
  CHECK(laurent_to_field(w) == FieldElement::from_rational(f, BigRational(13, 16)));
  CHECK_THROWS_AS(fin_add(bm1, LaurentIntElement(field_of({-1, -1, 1}), {{0, 1}})), Error);

  std::mt19937_64 rng(9);
  for (Field k : {f, field_of({-1, -1, 1}), field_of({-1, -1, -1, 1}), field_of({2, 2, 1}), field_of({-5, 0, 1})}) {
    for (int i = 0; i < 100; ++i) {
      LaurentIntElement a = random_laurent(rng, k, 5, 9), b = random_laurent(rng, k, 5, 9);
      CHECK(laurent_to_field(fin_add(a, b)) == laurent_to_field(a) + laurent_to_field(b));
      CHECK(laurent_to_field(fin_sub(a, b)) == laurent_to_field(a) - laurent_to_field(b));
      CHECK(laurent_to_field(fin_mul(a, b)) == laurent_to_field(a) * laurent_to_field(b));
    }
  }
}

TEST_CASE("Laurent times periodic") {
  Field f = base32();
  ConversionRule rule = builtin_rule_32(f);
  LaurentIntElement w(f, {{4, 1}, {2, -1}, {0, -2}});
  Representation geo = parse_rep("0•(0,0,0,1)ω");
  Representation r = fin_times_per(w, geo);
  CHECK(value_32(r) == BigRational(1, 5));
  Representation rn = fin_times_per(w, geo, &rule);
  CHECK(value_32(rn) == BigRational(1, 5));
  CHECK(format_rep(rn) == "1•(0,-1)ω");
  CHECK(within(rn, -2, 2));
  CHECK(value_32(parse_rep("1•(0,-1)ω")) == BigRational(1, 5));

  Representation x = parse_rep("2,-1•1,(2,0,-1)ω");
  CHECK(fin_times_per(LaurentIntElement::constant(f, 1), x) == canonicalize(x));
  Representation shifted = fin_times_per(LaurentIntElement::monomial(f, 3), x);
  Representation expect = canonicalize(x);
  expect.L += 3;
  CHECK(shifted == expect);

  std::mt19937_64 rng(13);
  for (Field k : {f, field_of({-1, -1, 1}), field_of({2, 2, 1}), field_of({-5, 0, 1})}) {
    for (int i = 0; i < 300; ++i) {
      LaurentIntElement z = random_laurent(rng, k, 4, 5);
      Representation a = random_rep(rng, -2, 2), b = random_rep(rng, -2, 2);
      Representation prod = fin_times_per(z, a);
      CHECK(eval_rep(k, prod) == laurent_to_field(z) * eval_rep(k, a));
      Representation sum = per_add(k, a, b);
      CHECK(eval_rep(k, sum) == eval_rep(k, a) + eval_rep(k, b));
    }
  }
  for (int i = 0; i < 100; ++i) {
    LaurentIntElement z = random_laurent(rng, f, 4, 5);
    Representation a = random_rep(rng, -2, 2);
    Representation prod = fin_times_per(z, a, &rule);
    CHECK(within(prod, -2, 2));
    CHECK(value_32(prod) == value_32(laurent_to_rep(z)) * value_32(a));
  }
}

TEST_CASE("conversion rules") {
  Field f = base32();
  ConversionRule id = identity_rule(f, Alphabet::range(-2, 2));
  Representation x = parse_rep("2,-1•1,(2,0,-1)ω");
  CHECK(apply_rule(id, x) == canonicalize(x));
  CHECK(apply_rule(builtin_rule_32(f), parse_rep("2,3•(3,-1,1)ω")) == parse_rep("2,1,2•(0,1,0)ω"));

  // Window (x_j, x_{j-1}); maps 1 at power j to 1 at power j-1: not value preserving.
  std::string bad = R"({"t": 0, "r": 1, "input_range": [0, 1], "alphabet": [0, 1],
    "table": {"0,0": 0, "0,1": 1, "1,0": 0, "1,1": 1}})";
  ConversionRule rb = rule_from_json(f, bad);
  CHECK(rb.r == 1);
  try {
    apply_rule(rb, parse_rep("1•"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValueNotPreserved);
  }
  // Identity written as a table with a one-digit look-ahead.
  std::string good = R"({"t": 0, "r": 1, "input_range": [0, 1], "alphabet": [0, 1],
    "table": {"0,0": 0, "0,1": 0, "1,0": 1, "1,1": 1}})";
  ConversionRule rg = rule_from_json(f, good);
  CHECK(apply_rule(rg, parse_rep("1,0,1•(1,0)ω")) == parse_rep("1,0,1•(1,0)ω"));
  CHECK_THROWS_AS(apply_rule(rg, parse_rep("2•")), Error);
  CHECK_THROWS_AS(rule_from_json(f, "{"), Error);
  CHECK_THROWS_AS(rule_from_json(f, R"({"t":0,"r":0,"input_range":[0,1],"alphabet":[0,1],"table":{"0":1,"1":1}})"), Error);
  CHECK_THROWS_AS(builtin_rule_32(field_of({-1, -1, 1})), Error);
}

TEST_CASE("finite normalization in base 3/2") {
  Field f = base32();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(-100000, 100000), e2(0, 12), e3(0, 6);
  for (int i = 0; i < 300; ++i) {
    BigRational v(num(rng), pow(BigInt(2), e2(rng)) * pow(BigInt(3), e3(rng)));
    v.canonicalize();
    LaurentIntElement z = fin_normalize_32(f, v);
    CHECK(laurent_to_field(z) == FieldElement::from_rational(f, v));
    for (const auto& [e, c] : z.terms()) CHECK((c >= -2 && c <= 2));
  }
  CHECK(fin_normalize_32(f, 0).empty());
  CHECK_THROWS_AS(fin_normalize_32(f, BigRational(1, 5)), Error);
}
