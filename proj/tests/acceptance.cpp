// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "perbase/classify.hpp"
#include "perbase/cli.hpp"
#include "perbase/dynamics.hpp"
#include "perbase/error.hpp"
#include "perbase/parallel.hpp"
#include "perbase/pipeline.hpp"

using namespace perbase;

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kCriterion1Seconds = 1e-3;
constexpr double kCriterion4Seconds = 60;
constexpr double kCriterion6Seconds = 10;
constexpr double kCriterion8Seconds = 120;
constexpr long kRandomBound = 10000;
constexpr int kRoundTripsPerBase = 200;
constexpr int kClosurePairsPerBase = 300;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Field field_of(const std::vector<long>& c) { return make_field(std::vector<BigInt>(c.begin(), c.end())); }

const std::vector<std::vector<long>> kBases = {{-3, 2}, {-1, -1, 1}, {-1, -1, -1, 1}, {2, 2, 1}, {-5, 0, 1}};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

// Plain rational evaluation of a Laurent polynomial at beta = 3/2.
BigRational laurent_value_32(const LaurentIntElement& z) {
  BigRational total = 0;
  for (const auto& [e, c] : z.terms()) total += BigRational(c) * pow(BigRational(3, 2), e);
  return total;
}

// Plain rational evaluation of a digit stream at beta = 3/2.
BigRational rep_value_32(const Representation& r) {
  BigRational beta(3, 2), total = 0, block = 0;
  long e = r.L;
  for (const auto& d : r.preperiod) total += BigRational(d) * pow(beta, e--);
  if (r.period.empty()) return total;
  for (const auto& d : r.period) block += BigRational(d) * pow(beta, e--);
  return total + block / (1 - pow(beta, -static_cast<long>(r.period.size())));
}

bool smooth_23(long n) {
  for (long p : {2, 3})
    while (n % p == 0) n /= p;
  return n == 1;
}

Verdict criterion1() {
  Verdict v;
  Field f = field_of({-3, 2});
  Representation a = parse_rep("2,3•(3,-1,1)ω");
  auto t0 = Clock::now();
  Convert32Rows rows = convert_32_rows(a, 3, -6);
  Representation b = convert_32(f, a);
  double t = seconds_since(t0);
  v.require(rows.a == std::vector<long>{0, 0, 2, 3, 3, -1, 1, 3, -1, 1}, "a row");
  v.require(rows.q == std::vector<long>{0, 0, 1, 1, 1, 0, 1, 1, 0, 1}, "q row");
  v.require(rows.c == std::vector<long>{0, 2, 1, 2, 0, 1, 0, 0, 1, 0}, "c row");
  v.require(rows.p == std::vector<long>(10, 0), "p row");
  v.require(rows.b == std::vector<long>{0, 2, 1, 2, 0, 1, 0, 0, 1, 0}, "b row");
  v.require(format_rep(b, true) == "2,1,2.(0,1,0)^w", "converted representation");
  v.require(rep_value_32(b) == rep_value_32(a), "value preserved");
  v.require(t < kCriterion1Seconds, "runtime");
  v.detail << "rows exact, " << t * 1e6 << " us";
  return v;
}

Verdict criterion2() {
  Verdict v;
  Field f = field_of({-3, 2});
  PipelineTrace tr;
  Representation r = invert_denominator(f, 5, nullptr, &tr);
  v.require(tr.s == 4, "s = 4");
  v.require(laurent_value_32(tr.z) == 13, "z = 13");
  BigRational beta(3, 2);
  v.require(16 * (pow(beta, 4) - 1) == BigRational(5 * 13), "2^4 (beta^4 - 1) = 5 * 13");
  v.require(rep_value_32(r) == BigRational(1, 5), "eval of produced representation");
  v.require(eval_rep(f, r) == FieldElement::from_rational(f, BigRational(1, 5)), "eval_rep of produced representation");
  v.require(eval_rep(f, parse_rep("1•(0,-1)ω")) == FieldElement::from_rational(f, BigRational(1, 5)),
            "eval of 1•(0,-1)ω");
  v.detail << "s=" << tr.s << " z=" << tr.z.to_string() << " rep " << format_rep(r);
  return v;
}

Verdict criterion3() {
  Verdict v;
  Field f = field_of({-3, 2});
  int invertible = 0;
  for (long n = 1; n <= 200; ++n) {
    auto inv = invert_integer_thm_finite(f, n);
    v.require(inv.has_value() == smooth_23(n), "verdict for n = " + std::to_string(n));
    if (inv) {
      ++invertible;
      v.require(laurent_value_32(*inv) == BigRational(1, n), "value 1/n for n = " + std::to_string(n));
    }
  }
  for (long n : {5, 7, 11}) v.require(!invert_integer_thm_finite(f, n), "NotInvertible for " + std::to_string(n));
  v.detail << invertible << " invertible n <= 200";
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::vector<Field> fields;
  std::vector<BaseClassification> cls;
  for (const auto& c : kBases) {
    fields.push_back(field_of(c));
    cls.push_back(classify_base(fields.back()));
  }
  std::vector<int> done(kBases.size(), 0), exact(kBases.size(), 0), errors(kBases.size(), 0);
  std::vector<double> spent(kBases.size(), 0);
  std::mt19937_64 rng(2024);
  auto t0 = Clock::now();
  bool out_of_time = false;
  // Round-robin over the bases so a slow base cannot starve the others.
  for (int i = 0; i < kRoundTripsPerBase && !out_of_time; ++i) {
    for (std::size_t b = 0; b < kBases.size(); ++b) {
      if (seconds_since(t0) >= kCriterion4Seconds) {
        out_of_time = true;
        break;
      }
      std::uniform_int_distribution<long> den(1, kRandomBound), num(-kRandomBound, kRandomBound);
      long q = den(rng);
      std::vector<BigRational> coords;
      for (int k = 0; k < fields[b]->degree(); ++k) {
        BigRational c(num(rng), q);
        c.canonicalize();
        coords.push_back(c);
      }
      FieldElement x = FieldElement::from_coords(fields[b], coords);
      RepresentOptions opt;
      opt.classification = &cls[b];
      auto ti = Clock::now();
      try {
        if (eval_rep(fields[b], represent_field_element(x, opt)) == x) ++exact[b];
      } catch (const Error& e) {
        ++errors[b];
      }
      spent[b] += seconds_since(ti);
      ++done[b];
    }
  }
  double total = seconds_since(t0);
  for (std::size_t b = 0; b < kBases.size(); ++b) {
    v.require(done[b] == kRoundTripsPerBase && exact[b] == kRoundTripsPerBase,
              fields[b]->minpoly().to_string() + " did not complete " + std::to_string(kRoundTripsPerBase) +
                  " exact round trips");
    v.detail << fields[b]->minpoly().to_string() << ": " << exact[b] << "/" << done[b] << " exact";
    if (errors[b]) v.detail << " (" << errors[b] << " errors)";
    v.detail << " in " << spent[b] << " s; ";
  }
  v.require(total < kCriterion4Seconds && !out_of_time, "runtime");
  v.detail << "total " << total << " s";
  return v;
}

Verdict criterion5() {
  Verdict v;
  struct Row {
    std::vector<long> c;
    const char* label;
  };
  for (const Row& r : {Row{{-1, -1, 1}, "Pisot"}, Row{{-1, -1, -1, 1}, "Pisot"}, Row{{2, 2, 1}, "ComplexPisot"},
                       Row{{1, -1, -1, -1, 1}, "Salem"}, Row{{-3, 2}, "None"}, Row{{-5, 0, 1}, "None"}}) {
    Field f = field_of(r.c);
    BaseClassification c = classify_base(f);
    bool residual_ok = false;
    std::string oracle = oracle::numeric_label(r.c, residual_ok);
    std::string name = f->minpoly().to_string();
    v.require(residual_ok, "oracle residual for " + name);
    v.require(label_name(c.label) == r.label, "label of " + name);
    v.require(oracle == r.label, "oracle label of " + name);
  }
  v.require(classify_base(field_of({1, -1, -1, -1, 1})).unit_circle_count == 2, "Salem unit-circle count 2");
  BaseClassification c32 = classify_base(field_of({-3, 2}));
  v.require(!c32.is_algebraic_integer, "2x-3 not an algebraic integer");
  v.require(c32.unit_circle_count.value_or(0) == 0, "2x-3 has no unit-circle conjugates");
  Field five = field_of({-5, 0, 1});
  BaseClassification c5 = classify_base(five);
  v.require(std::find(c5.collapse_exponents.begin(), c5.collapse_exponents.end(), 2u) != c5.collapse_exponents.end(),
            "x^2-5 collapse exponent 2");
  v.require(weak_greedy_advisory(five).impossible, "x^2-5 advisory impossible");
  v.detail << "six bases, labels agree with numeric oracle";
  return v;
}

Verdict criterion6() {
  Verdict v;
  Field g = field_of({-1, -1, 1});
  DigitSelector sel = greedy_selector(g);
  auto t0 = Clock::now();
  int count = 0;
  for (long q = 1; q <= 20; ++q) {
    for (long p = 0; p < q; ++p) {
      BigRational r(p, q);
      if (r.get_den() != q) continue;
      FieldElement x = FieldElement::from_rational(g, r);
      std::string what = std::to_string(p) + "/" + std::to_string(q);
      try {
        Representation rep = orbit_periodize(sel, x);
        v.require(eval_rep(g, rep) == x, "round trip " + what);
        if (!x.is_zero()) v.require(weak_greedy_check(g, rep, sel.c), "bound for " + what);
        ++count;
      } catch (const Error& e) {
        v.require(false, what + ": " + std::string(e.name()));
      }
    }
  }
  double t = seconds_since(t0);
  v.require(t < kCriterion6Seconds, "runtime");
  v.detail << count << " values, c=" << to_string(sel.c) << ", " << t << " s";
  return v;
}

Representation random_rep(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dig(lo, hi), len(0, 5), lead(-3, 3);
  Representation r;
  r.L = lead(rng);
  int np = len(rng), s = len(rng);
  for (int i = 0; i < np; ++i) r.preperiod.emplace_back(dig(rng));
  for (int i = 0; i < s; ++i) r.period.emplace_back(dig(rng));
  return canonicalize(r);
}

LaurentIntElement random_laurent(std::mt19937_64& rng, const Field& f) {
  std::uniform_int_distribution<int> e(-4, 4), c(-3, 3), n(1, 4);
  std::map<long, BigInt> m;
  for (int i = n(rng); i > 0; --i) m[e(rng)] += c(rng);
  return LaurentIntElement(f, m);
}

bool eventually_periodic(const Representation& r) { return canonicalize(r) == r; }

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(77);
  long checks = 0;
  for (const auto& c : kBases) {
    Field f = field_of(c);
    bool base32 = is_base_32(f);
    std::optional<ConversionRule> rule;
    if (base32) rule = builtin_rule_32(f);
    std::string name = f->minpoly().to_string();
    for (int i = 0; i < kClosurePairsPerBase; ++i) {
      Representation x = random_rep(rng, -2, 2), y = random_rep(rng, -2, 2);
      const ConversionRule* norm = base32 && i % 2 ? &*rule : nullptr;
      Representation sum = per_add(f, x, y, norm);
      v.require(eventually_periodic(sum), "per_add canonical on " + name);
      v.require(eval_rep(f, sum) == eval_rep(f, x) + eval_rep(f, y), "per_add value on " + name);
      if (base32) v.require(rep_value_32(sum) == rep_value_32(x) + rep_value_32(y), "per_add rational oracle");

      LaurentIntElement z = random_laurent(rng, f), w = random_laurent(rng, f);
      Representation prod = fin_times_per(z, x, norm);
      v.require(eventually_periodic(prod), "fin_times_per canonical on " + name);
      v.require(eval_rep(f, prod) == laurent_to_field(z) * eval_rep(f, x), "fin_times_per value on " + name);
      if (base32) v.require(rep_value_32(prod) == laurent_value_32(z) * rep_value_32(x), "fin_times_per rational oracle");

      v.require(laurent_to_field(fin_add(z, w)) == laurent_to_field(z) + laurent_to_field(w), "fin_add on " + name);
      v.require(laurent_to_field(fin_sub(z, w)) == laurent_to_field(z) - laurent_to_field(w), "fin_sub on " + name);
      v.require(laurent_to_field(fin_mul(z, w)) == laurent_to_field(z) * laurent_to_field(w), "fin_mul on " + name);
      checks += 5;
    }
  }
  v.detail << checks << " closure checks over " << kBases.size() << " bases";
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::ostringstream out, err;
  auto t0 = Clock::now();
  int status = cli::run({"bench", "--field", "-3,2", "--qmax", "10000", "--normalize"}, out, err);
  double t = seconds_since(t0);
  v.require(status == 0, "bench exit status");
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  long rows = 0, ok = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find(",ok,") != std::string::npos) ++ok;
  }
  v.require(rows == 9999 && ok == rows, "all rows post-checked");
  v.require(t < kCriterion8Seconds, "runtime");
  v.detail << ok << "/" << rows << " rows ok in " << t << " s";
  return v;
}

}  // namespace

int main() {
  std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    if (!v.pass) ++failures;
    std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail.str() << ")"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
