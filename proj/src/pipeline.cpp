#include "perbase/pipeline.hpp"

#include <unordered_map>

#include "perbase/error.hpp"

namespace perbase {

namespace {

using SmallMatrix = std::vector<int64_t>;  // row-major d x d residues

struct SmallHash {
  std::size_t operator()(const SmallMatrix& m) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int64_t v : m) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

SmallMatrix small_mul(const SmallMatrix& x, const SmallMatrix& y, int d, int64_t q) {
  SmallMatrix out(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < d; ++k) acc += static_cast<__int128>(x[i * d + k]) * y[k * d + j];
      out[i * d + j] = static_cast<int64_t>(acc % q);
    }
  return out;
}

SmallMatrix small_identity(int d, int64_t q) {
  SmallMatrix m(d * d, 0);
  for (int i = 0; i < d; ++i) m[i * d + i] = 1 % q;
  return m;
}

SmallMatrix small_of(const IntMatrix& A, int64_t q) {
  int d = static_cast<int>(A.size());
  SmallMatrix m(d * d);
  BigInt qq(static_cast<long>(q)), t;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      mpz_fdiv_r(t.get_mpz_t(), A[i][j].get_mpz_t(), qq.get_mpz_t());
      m[i * d + j] = t.get_si();
    }
  return m;
}

SmallMatrix small_pow(SmallMatrix base, long e, int d, int64_t q) {
  SmallMatrix r = small_identity(d, q);
  while (e > 0) {
    if (e & 1) r = small_mul(r, base, d, q);
    base = small_mul(base, base, d, q);
    e >>= 1;
  }
  return r;
}

int64_t small_modulus(const BigInt& q) {
  if (q < 2) fail(ErrorCode::InvalidArgument, "modulus must be at least 2");
  if (mpz_sizeinbase(q.get_mpz_t(), 2) > 62) fail(ErrorCode::InvalidArgument, "modulus too large for residue search");
  return q.get_si();
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  std::size_t d = x.size();
  IntMatrix out(d, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  return out;
}

IntMatrix mat_identity(std::size_t d) {
  IntMatrix m(d, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

IntMatrix mat_pow(IntMatrix base, long e) {
  IntMatrix r = mat_identity(base.size());
  while (e > 0) {
    if (e & 1) r = mat_mul(r, base);
    e >>= 1;
    if (e > 0) base = mat_mul(base, base);
  }
  return r;
}

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Representation geometric_rep(long s) {
  Representation g;
  g.L = 0;
  g.preperiod = {BigInt(0)};
  g.period.assign(s, BigInt(0));
  g.period.back() = 1;
  return canonicalize(g);
}

// 1/q = prefactor * sum_{i >= 1} beta^{-s i}  (s = 0: 1/q = prefactor).
struct Plan {
  LaurentIntElement prefactor;
  std::optional<FieldElement> prefactor_value;  // base 3/2 shortcut
  long s = 0;
};

Plan plan_denominator(const Field& field, const BigInt& q, PipelineTrace& tr, long max_states) {
  CompanionMatrix cm = companion_matrix(field);
  const BigInt& a = cm.a;
  tr.q = q;
  tr.r = 1;
  tr.qbar = q;
  for (const auto& [p, e] : factor_integer(q)) {
    if (a % p == 0) {
      tr.r *= pow(p, e);
      tr.qbar /= pow(p, e);
    }
  }
  tr.k = 0;
  for (BigInt ak = 1; ak % tr.r != 0; ak *= a) ++tr.k;
  bool base32 = is_base_32(field);
  Plan plan;
  // 1/r = (a^k / r) (1/a)^k
  LaurentIntElement inv_r = LaurentIntElement::constant(field, 1);
  std::optional<LaurentIntElement> inv_a;
  if (a != 1) {
    inv_a = invert_integer_thm_finite(field, a);
    if (!inv_a && (tr.r != 1 || tr.qbar != 1))
      fail(ErrorCode::HypothesisViolated, "1/a_d is not in Z[beta, 1/beta] for a_d = " + to_string(a));
  }
  if (tr.r != 1) inv_r = LaurentIntElement::constant(field, pow(a, tr.k) / tr.r) * inv_a->pow(tr.k);
  if (tr.qbar == 1) {
    plan.prefactor = inv_r;
    if (base32) plan.prefactor_value = laurent_to_field(inv_r);
    return plan;
  }
  tr.cycle = find_cycle_mod(cm, tr.qbar, max_states);
  tr.s = find_s(cm, tr.qbar, tr.cycle);
  long m = tr.cycle.m, s = tr.s;
  IntMatrix M = mat_pow(cm.A, s);
  BigInt as = pow(a, s);
  for (int i = 0; i < cm.d; ++i) M[i][i] -= as;
  if (m > 0) M = mat_mul(mat_pow(cm.A, m), M);
  for (auto& row : M)
    for (auto& v : row) {
      if (v % tr.qbar != 0) fail(ErrorCode::InvalidArgument, "internal: matrix not divisible by q");
      v /= tr.qbar;
    }
  tr.Z = M;
  std::map<long, BigInt> zt;
  for (int k = 0; k < cm.d; ++k)
    if (M[cm.d - 1][k] != 0) zt[cm.d - 1 - k] = M[cm.d - 1][k];
  tr.z = LaurentIntElement(field, zt);
  // a^{s+m} beta^m (beta^s - 1) = qbar z
  FieldElement beta = FieldElement::beta(field), one = FieldElement::from_rational(field, 1);
  FieldElement lhs = BigRational(pow(a, s + m)) * beta.pow(m) * (beta.pow(s) - one);
  if (lhs != BigRational(tr.qbar) * laurent_to_field(tr.z))
    fail(ErrorCode::InvalidArgument, "internal: structural identity failed");
  plan.s = s;
  if (base32) {
    plan.prefactor_value =
        BigRational(1, pow(a, s + m)) * (laurent_to_field(inv_r) * laurent_to_field(tr.z) * beta.pow(-m));
    return plan;
  }
  LaurentIntElement pre = tr.z.shifted(-m) * inv_r;
  if (a != 1) pre = pre * inv_a->pow(static_cast<unsigned long>(s + m));
  plan.prefactor = pre;
  return plan;
}

Representation assemble(const Field& field, Plan plan, const ConversionRule* normalizer) {
  if (plan.prefactor_value) plan.prefactor = fin_normalize_32(field, *plan.prefactor_value->as_rational());
  if (plan.s == 0) {
    Representation r = laurent_to_rep(plan.prefactor);
    return normalizer ? normalize(*normalizer, r) : r;
  }
  return fin_times_per(plan.prefactor, geometric_rep(plan.s), normalizer);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n0) {
  std::vector<std::pair<BigInt, unsigned>> out;
  BigInt n = abs(n0);
  for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

CompanionMatrix companion_matrix(const Field& field) {
  const IntPoly& f = field->minpoly();
  int d = f.degree();
  CompanionMatrix cm;
  cm.d = d;
  cm.a = f.leading();
  cm.A.assign(d, std::vector<BigInt>(d));
  for (int k = 0; k < d; ++k) cm.A[0][k] = -f.coeff(d - 1 - k);  // a_{d-1-k} in the t:X convention
  for (int i = 1; i < d; ++i) cm.A[i][i - 1] = cm.a;
  // A b = a beta b
  FieldElement beta = FieldElement::beta(field);
  std::vector<FieldElement> b;
  for (int i = 0; i < d; ++i) b.push_back(beta.pow(d - 1 - i));
  for (int i = 0; i < d; ++i) {
    FieldElement row(field);
    for (int k = 0; k < d; ++k) row = row + BigRational(cm.A[i][k]) * b[k];
    if (row != BigRational(cm.a) * beta * b[i]) fail(ErrorCode::InvalidArgument, "internal: companion identity failed");
  }
  return cm;
}

Cycle find_cycle_mod(const CompanionMatrix& cm, const BigInt& q, long max_states) {
  int64_t qq = small_modulus(q);
  int d = cm.d;
  SmallMatrix A = small_of(cm.A, qq), cur = small_identity(d, qq);
  std::unordered_map<SmallMatrix, long, SmallHash> seen;
  for (long k = 0;; ++k) {
    auto [it, inserted] = seen.emplace(cur, k);
    if (!inserted) return Cycle{it->second, k - it->second};
    if (k >= max_states)
      fail(ErrorCode::NoRepeatWithinBudget, "no repeated power of A modulo " + to_string(q) + " within the state budget");
    cur = small_mul(cur, A, d, qq);
  }
}

long find_s(const CompanionMatrix& cm, const BigInt& q, const Cycle& cycle) {
  if (gcd_big(cm.a, q) != 1) fail(ErrorCode::NotCoprime, "a_d and q must be coprime");
  int64_t qq = small_modulus(q);
  int d = cm.d;
  BigInt phi = 1;
  for (const auto& [p, e] : factor_integer(q)) phi *= pow(p, e - 1) * (p - 1);
  SmallMatrix A = small_of(cm.A, qq);
  SmallMatrix Am = small_pow(A, cycle.m, d, qq);
  SmallMatrix Al = small_pow(A, cycle.l, d, qq);
  BigInt al_big;
  mpz_powm_ui(al_big.get_mpz_t(), BigInt(cm.a % q + q).get_mpz_t(), cycle.l, q.get_mpz_t());
  int64_t al = al_big.get_si();
  SmallMatrix As = Al;
  int64_t as = al;
  for (long n = 1; phi >= n; ++n) {
    SmallMatrix D = As;
    for (int i = 0; i < d; ++i) D[i * d + i] = ((D[i * d + i] - as) % qq + qq) % qq;
    SmallMatrix P = small_mul(Am, D, d, qq);
    if (std::all_of(P.begin(), P.end(), [](int64_t v) { return v == 0; })) return n * cycle.l;
    As = small_mul(As, Al, d, qq);
    as = static_cast<int64_t>(static_cast<__int128>(as) * al % qq);
  }
  fail(ErrorCode::InvalidArgument, "internal: no s up to l * phi(q)");
}

std::optional<LaurentIntElement> invert_integer_thm_finite(const Field& field, const BigInt& n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  const IntPoly& f = field->minpoly();
  int d = f.degree();
  LaurentIntElement result = LaurentIntElement::constant(field, 1);
  for (const auto& [p, e] : factor_integer(n)) {
    int j = -1, count = 0;
    for (int i = 0; i <= d; ++i)
      if (f.coeff(i) % p != 0) {
        j = i;
        ++count;
      }
    if (count != 1) return std::nullopt;
    // a_j x + p y = 1 with 0 <= x < p
    BigInt g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), f.coeff(j).get_mpz_t(), p.get_mpz_t());
    if (g < 0) {
      x = -x;
      g = -g;
    }
    BigInt x0;
    mpz_fdiv_r(x0.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    BigInt y0 = (1 - f.coeff(j) * x0) / p;
    std::map<long, BigInt> terms;
    terms[0] = y0;
    for (int i = 0; i <= d; ++i)
      if (i != j) terms[i - j] -= x0 * (f.coeff(i) / p);
    LaurentIntElement inv_p(field, terms);
    result = result * inv_p.pow(e);
  }
  if (laurent_to_field(result) != FieldElement::from_rational(field, BigRational(1) / BigRational(n)))
    fail(ErrorCode::InvalidArgument, "internal: inverse check failed");
  return result;
}

Representation invert_denominator(const Field& field, const BigInt& q, const ConversionRule* normalizer,
                                  PipelineTrace* trace, long max_states) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "denominator must be positive");
  PipelineTrace local;
  PipelineTrace& tr = trace ? *trace : local;
  tr = PipelineTrace{};
  Plan plan = plan_denominator(field, q, tr, max_states);
  Representation rep = assemble(field, plan, normalizer);
  if (eval_rep(field, rep) != FieldElement::from_rational(field, BigRational(1) / BigRational(q)))
    fail(ErrorCode::ValueNotPreserved, "representation of 1/q failed its post-check");
  tr.result = rep;
  return rep;
}

Representation represent_field_element(const FieldElement& x, const RepresentOptions& opt, PipelineTrace* trace) {
  const Field& field = x.field();
  if (x.is_zero()) return Representation{};
  BaseClassification local;
  const BaseClassification* cls = opt.classification;
  if (!cls) {
    local = classify_base(field);
    cls = &local;
  }
  if (opt.selector) {
    BaseLabel lb = cls->label;
    if (lb == BaseLabel::Pisot || lb == BaseLabel::ComplexPisot || lb == BaseLabel::NegPisot) {
      try {
        return orbit_periodize(*opt.selector, x, opt.max_steps);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoRepeatWithinBudget) throw;
      }
    }
  }
  for (const auto& c : cls->conjugates)
    if (c.verdict == ModulusVerdict::Eq1)
      fail(ErrorCode::HypothesisViolated, "a conjugate of beta lies on the unit circle");
  PipelineTrace local_trace;
  PipelineTrace& tr = trace ? *trace : local_trace;
  tr = PipelineTrace{};
  BigInt q = x.den();
  Plan plan = plan_denominator(field, q, tr, opt.max_states);
  std::map<long, BigInt> nt;
  for (int i = 0; i < field->degree(); ++i)
    if (x.num()[i] != 0) nt[i] = x.num()[i];
  LaurentIntElement N(field, nt);
  if (plan.prefactor_value) {
    plan.prefactor_value = laurent_to_field(N) * *plan.prefactor_value;
  } else if (is_base_32(field)) {
    plan.prefactor_value = laurent_to_field(N) * laurent_to_field(plan.prefactor);
  } else {
    plan.prefactor = N * plan.prefactor;
  }
  Representation rep = assemble(field, plan, opt.normalizer);
  if (eval_rep(field, rep) != x) fail(ErrorCode::ValueNotPreserved, "representation failed its post-check");
  tr.result = rep;
  return rep;
}

}  // namespace perbase
