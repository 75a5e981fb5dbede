#include "perbase/parallel.hpp"

#include "json.hpp"
#include <numeric>
#include <sstream>

#include "perbase/error.hpp"

namespace perbase {

namespace {

struct Layout {
  long e0;  // power of the first period digit
  long s;   // period length, 1 for finite streams
};

Layout layout(const Representation& r) {
  return {r.L - static_cast<long>(r.preperiod.size()), std::max<long>(1, static_cast<long>(r.period.size()))};
}

// Stream whose digits at powers hi..ps+1 form the preperiod and ps..ps-s+1 the period.
template <class DigitFn>
Representation build(long hi, long ps, long s, DigitFn digit) {
  Representation out;
  out.L = hi;
  for (long j = hi; j > ps; --j) out.preperiod.push_back(digit(j));
  for (long j = ps; j > ps - s; --j) out.period.push_back(digit(j));
  return canonicalize(std::move(out));
}

template <class F>
Representation map_digits(Representation r, F f) {
  for (auto& d : r.preperiod) d = f(d);
  for (auto& d : r.period) d = f(d);
  return canonicalize(std::move(r));
}

bool digits_within(const Representation& r, long lo, long hi) {
  for (const auto* v : {&r.preperiod, &r.period})
    for (const auto& d : *v)
      if (d < lo || d > hi) return false;
  return true;
}

void require_value(const FieldElement& got, const FieldElement& want, const char* what) {
  if (got != want) fail(ErrorCode::ValueNotPreserved, std::string(what) + " changed the value");
}

long q_of(long a) { return a >= 1 && a <= 3 ? 1 : 0; }
long p_of(long c) { return c >= -3 && c <= -1 ? -1 : 0; }

long carry_c(long a_j, long a_below) {
  long c = a_j - 3 * q_of(a_j) + 2 * q_of(a_below);
  if (c < -3 || c > 2) fail(ErrorCode::DigitOutOfRange, "intermediate digit outside {-3..2}");
  return c;
}

}  // namespace

long ConversionRule::apply(const std::vector<long>& w) const {
  if (kind == Kind::Builtin32) {
    // w = (a_j, a_{j-1}, a_{j-2})
    long c_j = carry_c(w[0], w[1]);
    long c_below = carry_c(w[1], w[2]);
    return c_j - 3 * p_of(c_j) + 2 * p_of(c_below);
  }
  auto it = table.find(w);
  if (it == table.end()) fail(ErrorCode::DigitOutOfRange, "window not covered by the conversion table");
  return it->second;
}

bool is_base_32(const Field& field) { return field->minpoly() == IntPoly::from_ints({-3, 2}); }

ConversionRule builtin_rule_32(const Field& field) {
  if (!is_base_32(field)) fail(ErrorCode::InvalidArgument, "the built-in conversion rule needs the field 2x-3");
  ConversionRule r;
  r.kind = ConversionRule::Kind::Builtin32;
  r.field = field;
  r.t = 0;
  r.r = 2;
  r.input_lo = -3;
  r.input_hi = 3;
  r.alphabet = Alphabet::range(-2, 2);
  return r;
}

ConversionRule identity_rule(const Field& field, const Alphabet& alphabet) {
  ConversionRule r;
  r.field = field;
  r.alphabet = alphabet;
  r.input_lo = alphabet.digits.front().get_si();
  r.input_hi = alphabet.digits.back().get_si();
  for (const auto& d : alphabet.digits) r.table[{d.get_si()}] = d.get_si();
  return r;
}

ConversionRule rule_from_json(const Field& field, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("conversion rule: ") + e.what());
  }
  ConversionRule r;
  r.field = field;
  try {
    r.t = j.at("t").get<int>();
    r.r = j.at("r").get<int>();
    auto range = j.at("input_range");
    r.input_lo = range.at(0).get<long>();
    r.input_hi = range.at(1).get<long>();
    std::vector<long> alpha = j.at("alphabet").get<std::vector<long>>();
    std::sort(alpha.begin(), alpha.end());
    for (long a : alpha) r.alphabet.digits.emplace_back(a);
    for (const auto& [key, value] : j.at("table").items()) {
      std::vector<long> w;
      std::stringstream ss(key);
      std::string part;
      while (std::getline(ss, part, ',')) w.push_back(parse_integer(part).get_si());
      if (static_cast<int>(w.size()) != r.t + r.r + 1)
        fail(ErrorCode::ParseError, "table key '" + key + "' has the wrong window length");
      r.table[w] = value.get<long>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("conversion rule: ") + e.what());
  }
  if (r.t < 0 || r.r < 0 || r.input_lo > r.input_hi) fail(ErrorCode::InvalidArgument, "bad conversion rule extents");
  std::vector<long> zero(r.t + r.r + 1, 0);
  auto z = r.table.find(zero);
  if (z == r.table.end() || z->second != 0) fail(ErrorCode::InvalidArgument, "a conversion rule must map the zero window to 0");
  for (const auto& [w, out] : r.table)
    if (!r.alphabet.contains(BigInt(out))) fail(ErrorCode::InvalidArgument, "table output outside the alphabet");
  return r;
}

Convert32Rows convert_32_rows(const Representation& a, long top, long bottom) {
  Convert32Rows rows;
  rows.top = top;
  rows.bottom = bottom;
  auto digit = [&](long e) {
    BigInt v = a.digit_at(e);
    if (v < -3 || v > 3) fail(ErrorCode::DigitOutOfRange, "digit " + to_string(v) + " outside {-3..3}");
    return v.get_si();
  };
  for (long j = top; j >= bottom; --j) {
    long aj = digit(j);
    long c = carry_c(aj, digit(j - 1));
    long c_below = carry_c(digit(j - 1), digit(j - 2));
    rows.a.push_back(aj);
    rows.q.push_back(q_of(aj));
    rows.c.push_back(c);
    rows.p.push_back(p_of(c));
    rows.b.push_back(c - 3 * p_of(c) + 2 * p_of(c_below));
  }
  return rows;
}

Representation apply_rule(const ConversionRule& rule, const Representation& rep) {
  if (rep.is_zero()) return rep;
  if (!digits_within(rep, rule.input_lo, rule.input_hi))
    fail(ErrorCode::DigitOutOfRange, "digits outside the rule's input range");
  Layout ly = layout(rep);
  std::vector<long> w(rule.t + rule.r + 1);
  Representation out = build(rep.L + rule.r, ly.e0 - rule.t, ly.s, [&](long j) {
    for (int i = 0; i <= rule.t + rule.r; ++i) w[i] = rep.digit_at(j + rule.t - i).get_si();
    return BigInt(rule.apply(w));
  });
  require_value(eval_rep(rule.field, out), eval_rep(rule.field, rep), "digit conversion");
  return out;
}

Representation convert_32(const Field& field, const Representation& rep) {
  return apply_rule(builtin_rule_32(field), rep);
}

Representation digitwise_add(const Representation& x, const Representation& y, const BigInt& ky) {
  if (y.is_zero() || ky == 0) return canonicalize(x);
  if (x.is_zero()) return map_digits(y, [&](const BigInt& d) { return BigInt(ky * d); });
  Layout lx = layout(x), lyy = layout(y);
  long s = std::lcm(lx.s, lyy.s);
  return build(std::max(x.L, y.L), std::min(lx.e0, lyy.e0), s,
               [&](long j) { return BigInt(x.digit_at(j) + ky * y.digit_at(j)); });
}

Representation normalize(const ConversionRule& rule, const Representation& rep) {
  bool done = true;
  for (const auto* v : {&rep.preperiod, &rep.period})
    for (const auto& d : *v)
      if (!rule.alphabet.contains(d)) done = false;
  if (done) return rep;
  if (digits_within(rep, rule.input_lo, rule.input_hi)) return apply_rule(rule, rep);
  if (rule.kind != ConversionRule::Kind::Builtin32)
    fail(ErrorCode::NormalizerRangeExceeded, "digits exceed the conversion rule's input range");
  // Peel unit layers: acc in {-2..2} plus a layer in {-1..1} stays in {-3..3}.
  Representation residual = rep, acc;
  while (!residual.is_zero()) {
    Representation layer = map_digits(residual, [](const BigInt& d) { return BigInt(sgn(d)); });
    residual = digitwise_add(residual, layer, -1);
    acc = apply_rule(rule, digitwise_add(acc, layer));
  }
  return acc;
}

namespace {

Representation add_normalized(const Field& field, const Representation& x, const Representation& y, const BigInt& ky,
                              const ConversionRule* rule) {
  if (rule && !same_field(rule->field, field)) fail(ErrorCode::FieldMismatch, "normalizer belongs to another field");
  Representation sum = digitwise_add(x, y, ky);
  Representation out = sum;
  if (rule) {
    if (rule->kind == ConversionRule::Kind::Builtin32) {
      if (!digits_within(x, -2, 2) || !digits_within(y, -2, 2))
        fail(ErrorCode::NormalizerRangeExceeded, "operands must use digits {-2..2}");
      if (digits_within(sum, -3, 3)) {
        out = apply_rule(*rule, sum);
      } else {
        // Split the second operand into two {-1..1} halves.
        Representation ys = map_digits(y, [&](const BigInt& d) { return BigInt(ky * d); });
        Representation h2 = map_digits(ys, [](const BigInt& d) { return BigInt(d / 2); });
        Representation h1 = digitwise_add(ys, h2, -1);
        out = apply_rule(*rule, digitwise_add(apply_rule(*rule, digitwise_add(x, h1)), h2));
      }
    } else {
      if (!digits_within(sum, rule->input_lo, rule->input_hi))
        fail(ErrorCode::NormalizerRangeExceeded, "digit sums exceed the conversion rule's input range");
      out = apply_rule(*rule, sum);
    }
  }
  FieldElement want = eval_rep(field, x) + BigRational(ky) * eval_rep(field, y);
  require_value(eval_rep(field, out), want, "addition");
  return out;
}

void same(const LaurentIntElement& z, const LaurentIntElement& w) {
  if (z.field() && w.field() && !same_field(z.field(), w.field())) fail(ErrorCode::FieldMismatch, "Laurent elements from different fields");
}

}  // namespace

Representation per_add(const Field& field, const Representation& x, const Representation& y, const ConversionRule* normalizer) {
  return add_normalized(field, x, y, 1, normalizer);
}

Representation per_sub(const Field& field, const Representation& x, const Representation& y, const ConversionRule* normalizer) {
  return add_normalized(field, x, y, -1, normalizer);
}

LaurentIntElement fin_add(const LaurentIntElement& z, const LaurentIntElement& w) {
  same(z, w);
  return z + w;
}

LaurentIntElement fin_sub(const LaurentIntElement& z, const LaurentIntElement& w) {
  same(z, w);
  return z - w;
}

LaurentIntElement fin_mul(const LaurentIntElement& z, const LaurentIntElement& w) {
  same(z, w);
  return z * w;
}

Representation laurent_to_rep(const LaurentIntElement& z) {
  Representation r;
  if (z.empty()) return r;
  r.L = z.max_exp();
  for (long e = z.max_exp(); e >= z.min_exp(); --e) r.preperiod.push_back(z.coeff(e));
  return canonicalize(r);
}

Representation fin_times_per(const LaurentIntElement& z, const Representation& rep, const ConversionRule* normalizer) {
  if (z.empty() || rep.is_zero()) return Representation{};
  const Field& field = z.field();
  if (normalizer && !same_field(normalizer->field, field)) fail(ErrorCode::FieldMismatch, "normalizer belongs to another field");
  Layout ly = layout(rep);
  long hi = rep.L + z.max_exp();
  long ps = ly.e0 + z.min_exp();
  long lo = ps - ly.s + 1;
  std::vector<BigInt> out(hi - lo + 1);
  std::vector<long> pre_nz, per_nz;
  for (long i = 0; i < static_cast<long>(rep.preperiod.size()); ++i)
    if (rep.preperiod[i] != 0) pre_nz.push_back(i);
  for (long o = 0; o < static_cast<long>(rep.period.size()); ++o)
    if (rep.period[o] != 0) per_nz.push_back(o);
  BigInt v;
  for (const auto& [e, c] : z.terms()) {
    for (long i : pre_nz) out[hi - (rep.L - i + e)] += c * rep.preperiod[i];
    for (long o : per_nz) {
      v = c * rep.period[o];
      for (long p = ly.e0 - o + e; p >= lo; p -= ly.s) out[hi - p] += v;
    }
  }
  Representation result;
  result.L = hi;
  result.preperiod.assign(out.begin(), out.begin() + (hi - ps));
  if (!rep.period.empty()) result.period.assign(out.begin() + (hi - ps), out.end());
  result = canonicalize(std::move(result));
  if (normalizer) result = normalize(*normalizer, result);
  require_value(eval_rep(field, result), laurent_to_field(z) * eval_rep(field, rep), "Laurent multiplication");
  return result;
}

LaurentIntElement fin_normalize_32(const Field& field, const BigRational& value) {
  if (!is_base_32(field)) fail(ErrorCode::InvalidArgument, "finite normalization is specific to base 3/2");
  BigInt den = value.get_den();
  unsigned long i = mpz_scan1(den.get_mpz_t(), 0);
  den >>= i;
  unsigned long j = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 3)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 3);
    ++j;
  }
  if (den != 1) fail(ErrorCode::NotRepresentable, to_string(value) + " has no finite expansion in base 3/2");
  // value = beta^-j * N / 2^(i+j); peel w = d + beta w'.
  BigInt N = value.get_num(), t;
  unsigned long k = i + j;
  std::map<long, BigInt> terms;
  long pos = 0;
  while (k > 0 || N != 0) {
    long d;
    if (k > 0) {
      unsigned long rr = mpz_fdiv_ui(N.get_mpz_t(), 3);
      if (k % 2 == 1) rr = (3 - rr) % 3;
      d = rr == 2 ? -1 : static_cast<long>(rr);
      if (d != 0) {
        mpz_set_si(t.get_mpz_t(), d);
        mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), k);
        N -= t;
      }
      mpz_divexact_ui(N.get_mpz_t(), N.get_mpz_t(), 3);
      --k;
    } else if (abs(N) <= 2) {
      d = N.get_si();
      N = 0;
    } else {
      unsigned long rr = mpz_fdiv_ui(N.get_mpz_t(), 3);
      d = rr == 2 ? -1 : static_cast<long>(rr);
      N -= d;
      mpz_divexact_ui(N.get_mpz_t(), N.get_mpz_t(), 3);
      N *= 2;
    }
    if (d != 0) terms[pos - static_cast<long>(j)] = d;
    ++pos;
  }
  return LaurentIntElement(field, terms);
}

}  // namespace perbase
