#include "perbase/int_poly.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

#include "perbase/error.hpp"

namespace perbase {

RatComplex operator/(const RatComplex& a, const RatComplex& b) {
  BigRational n = b.norm2();
  if (n == 0) fail(ErrorCode::DivisionByZero, "complex division by zero");
  RatComplex p = a * b.conj();
  return {p.re / n, p.im / n};
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::from_ints(std::initializer_list<long> coeffs) {
  std::vector<BigInt> c;
  for (long v : coeffs) c.emplace_back(v);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::monomial(const BigInt& c, std::size_t exp) {
  std::vector<BigInt> v(exp + 1, BigInt(0));
  v[exp] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return *this;
  BigInt g = content();
  if (leading() < 0) g = -g;
  std::vector<BigInt> c = coeffs_;
  for (auto& v : c) v /= g;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
  std::vector<BigInt> c;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPoly(std::move(c));
}

IntPoly IntPoly::reversed() const {
  std::vector<BigInt> c(coeffs_.rbegin(), coeffs_.rend());
  return IntPoly(std::move(c));
}

IntPoly IntPoly::negated_argument() const {
  std::vector<BigInt> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return IntPoly(std::move(c));
}

BigRational IntPoly::eval(const BigRational& x) const {
  // Horner on numerator/denominator to avoid per-step gcds.
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  BigInt acc = 0;
  BigInt qpow = 1;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * p + coeffs_[i] * qpow;
    qpow *= q;
  }
  // acc = sum c_i p^i q^(n-1-i) * ... ; divide by q^(deg)
  if (coeffs_.empty()) return 0;
  BigRational r(acc, pow(q, coeffs_.size() - 1));
  r.canonicalize();
  return r;
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

RatComplex IntPoly::eval(const RatComplex& z) const {
  RatComplex acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * z;
    acc.re += coeffs_[i];
  }
  return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(c));
}

IntPoly operator*(const BigInt& k, const IntPoly& a) {
  std::vector<BigInt> c = a.coeffs_;
  for (auto& v : c) v *= k;
  return IntPoly(std::move(c));
}

std::optional<IntPoly> IntPoly::exact_div(const IntPoly& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return IntPoly();
  if (degree() < divisor.degree()) return std::nullopt;
  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> quot(coeffs_.size() - divisor.coeffs_.size() + 1, BigInt(0));
  const BigInt& lc = divisor.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt& top = rem[k + divisor.coeffs_.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    BigInt q = top / lc;
    quot[k] = q;
    for (std::size_t j = 0; j < divisor.coeffs_.size(); ++j) rem[k + j] -= q * divisor.coeffs_[j];
  }
  for (const auto& v : rem)
    if (v != 0) return std::nullopt;
  return IntPoly(std::move(quot));
}

std::string IntPoly::to_spec() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += coeffs_[i].get_str();
  }
  return out;
}

std::string IntPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPoly parse_poly_spec(const std::string& text) {
  std::vector<BigInt> c;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) c.push_back(parse_integer(item));
  if (c.empty()) fail(ErrorCode::ParseError, "empty polynomial spec");
  return IntPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly RatPoly::from(const IntPoly& p) {
  RatPoly r;
  for (const auto& v : p.coeffs()) r.c.emplace_back(v);
  return r;
}

void RatPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

RatPoly RatPoly::monic() const {
  RatPoly r = *this;
  if (r.c.empty()) return r;
  BigRational lc = r.c.back();
  for (auto& v : r.c) v /= lc;
  return r;
}

IntPoly RatPoly::to_primitive_int() const {
  BigInt l = 1;
  for (const auto& v : c) l = lcm(l, BigInt(v.get_den()));
  std::vector<BigInt> out;
  for (const auto& v : c) {
    BigRational s = v * BigRational(l);
    out.push_back(s.get_num());
  }
  return IntPoly(std::move(out)).primitive();
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  RatPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), BigRational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.trim();
  return r;
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  r = a;
  r.trim();
  q.c.clear();
  if (r.degree() < b.degree()) return;
  q.c.assign(r.c.size() - b.c.size() + 1, BigRational(0));
  const BigRational& lc = b.c.back();
  for (std::size_t k = q.c.size(); k-- > 0;) {
    BigRational t = r.c[k + b.c.size() - 1] / lc;
    q.c[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[k + j] -= t * b.c[j];
  }
  r.trim();
  q.trim();
}

RatPoly gcd(RatPoly a, RatPoly b) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    RatPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatPoly inverse_mod(const RatPoly& a, const RatPoly& m) {
  RatPoly q, r;
  RatPoly r0 = m, r1;
  divmod(a, m, q, r1);
  RatPoly s0, s1;
  s1.c = {BigRational(1)};
  while (!r1.is_zero()) {
    divmod(r0, r1, q, r);
    RatPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) fail(ErrorCode::DivisionByZero, "element not invertible modulo polynomial");
  BigRational c = r0.c[0];
  for (auto& v : s0.c) v /= c;
  RatPoly out;
  divmod(s0, m, q, out);
  return out;
}

bool is_squarefree(const IntPoly& f) {
  if (f.degree() <= 1) return true;
  return gcd(RatPoly::from(f), RatPoly::from(f.derivative())).degree() == 0;
}

bool is_self_reciprocal(const IntPoly& f) {
  if (f.is_zero()) return false;
  IntPoly r = f.reversed();
  if (r.degree() != f.degree()) return false;  // zero constant term
  return r == f || r == BigInt(-1) * f;
}

IntPoly reciprocal_trace_poly(const IntPoly& f) {
  int d = f.degree();
  if (d % 2 != 0) fail(ErrorCode::InvalidArgument, "reciprocal trace needs even degree");
  int n = d / 2;
  // V_0 = 2, V_1 = y, V_{k+1} = y V_k - V_{k-1}; x^k + x^-k = V_k(x + 1/x).
  std::vector<IntPoly> v;
  v.push_back(IntPoly::from_ints({2}));
  v.push_back(IntPoly::from_ints({0, 1}));
  IntPoly y = IntPoly::from_ints({0, 1});
  for (int k = 2; k <= n; ++k) v.push_back(y * v[k - 1] - v[k - 2]);
  IntPoly g = IntPoly(std::vector<BigInt>{f.coeff(n)});
  for (int k = 1; k <= n; ++k) g = g + f.coeff(n + k) * v[k];
  return g;
}

// ---------------------------------------------------------------------------
// Sturm

namespace {

// Pseudo-remainder scaled by a positive factor so that signs are kept.
IntPoly signed_prem(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  BigInt lc = bc.back();
  BigInt alc = abs(lc);
  int db = b.degree();
  while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
    BigInt top = r.back();
    int shift = static_cast<int>(r.size()) - 1 - db;
    // r = |lc| * r - sign(lc) * top * x^shift * b
    for (auto& v : r) v *= alc;
    BigInt t = (lc > 0) ? top : BigInt(-top);
    for (int j = 0; j <= db; ++j) r[shift + j] -= t * bc[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  IntPoly out(std::move(r));
  if (out.is_zero()) return out;
  BigInt g = out.content();
  std::vector<BigInt> c = out.coeffs();
  for (auto& v : c) v /= g;
  return IntPoly(std::move(c));
}

}  // namespace

SturmSequence::SturmSequence(const IntPoly& f) {
  seq_.push_back(f);
  if (f.degree() <= 0) return;
  seq_.push_back(f.derivative());
  while (seq_.back().degree() > 0) {
    IntPoly r = signed_prem(seq_[seq_.size() - 2], seq_.back());
    if (r.is_zero()) break;
    seq_.push_back(BigInt(-1) * r);
  }
}

int SturmSequence::sign_changes(const BigRational& x) const {
  int changes = 0;
  int prev = 0;
  for (const auto& p : seq_) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int SturmSequence::count_roots(const BigRational& lo, const BigRational& hi) const {
  return sign_changes(lo) - sign_changes(hi);
}

BigRational root_modulus_bound(const IntPoly& f) {
  BigRational m = 0;
  for (int i = 0; i < f.degree(); ++i) {
    BigRational r(abs(f.coeff(i)), abs(f.leading()));
    r.canonicalize();
    if (r > m) m = r;
  }
  return m + 1;
}

// ---------------------------------------------------------------------------
// distinct-degree factorization modulo small primes

namespace {

using ModPoly = std::vector<std::int64_t>;  // ascending

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a = mod(a, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mmod(ModPoly a, const ModPoly& b, std::int64_t p) {
  mtrim(a);
  std::int64_t inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    std::int64_t t = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod(a[shift + j] - mulmod(t, b[j], p), p);
    mtrim(a);
  }
  return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + mulmod(a[i], b[j], p), p);
  mtrim(r);
  return r;
}

ModPoly mgcd(ModPoly a, ModPoly b, std::int64_t p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::int64_t inv = powmod(a.back(), p - 2, p);
    for (auto& v : a) v = mulmod(v, inv, p);
  }
  return a;
}

ModPoly mdiv(ModPoly a, const ModPoly& b, std::int64_t p) {
  mtrim(a);
  ModPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  std::int64_t inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size() && !a.empty()) {
    std::int64_t t = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    q[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod(a[shift + j] - mulmod(t, b[j], p), p);
    mtrim(a);
  }
  mtrim(q);
  return q;
}

ModPoly mpow_x(std::int64_t e, const ModPoly& f, std::int64_t p, ModPoly base) {
  ModPoly r{1};
  while (e) {
    if (e & 1) r = mmod(mmul(r, base, p), f, p);
    base = mmod(mmul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

bool small_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Multiset of irreducible factor degrees of f mod p, or empty if p is bad.
std::vector<int> factor_degrees_mod(const IntPoly& f, std::int64_t p) {
  ModPoly g;
  for (const auto& c : f.coeffs()) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    g.push_back(r.get_si());
  }
  mtrim(g);
  if (static_cast<int>(g.size()) - 1 != f.degree()) return {};
  ModPoly dg;
  for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(mulmod(g[i], static_cast<std::int64_t>(i) % p, p));
  mtrim(dg);
  if (dg.empty() || mgcd(g, dg, p).size() != 1) return {};
  std::vector<int> degs;
  ModPoly rest = g;
  ModPoly h{0, 1};
  for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
    h = mpow_x(p, rest, p, mmod(h, rest, p));
    ModPoly t = h;
    if (t.size() < 2) t.resize(2, 0);
    t[1] = mod(t[1] - 1, p);
    mtrim(t);
    ModPoly gg = mgcd(rest, t, p);
    int dgg = static_cast<int>(gg.size()) - 1;
    if (dgg > 0) {
      for (int k = 0; k < dgg / i; ++k) degs.push_back(i);
      rest = mdiv(rest, gg, p);
      h = mmod(h, rest, p);
    }
  }
  if (rest.size() > 1) degs.push_back(static_cast<int>(rest.size()) - 1);
  return degs;
}

}  // namespace

std::vector<int> possible_factor_degrees(const IntPoly& f) {
  int d = f.degree();
  std::set<int> allowed;
  for (int k = 0; k <= d; ++k) allowed.insert(k);
  int used = 0;
  for (std::int64_t p = 3; p < 2000 && used < 8; ++p) {
    if (!small_prime(p)) continue;
    std::vector<int> degs = factor_degrees_mod(f, p);
    if (degs.empty()) continue;
    ++used;
    std::set<int> sums{0};
    for (int dd : degs) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + dd);
      sums = std::move(next);
    }
    std::set<int> inter;
    std::set_intersection(allowed.begin(), allowed.end(), sums.begin(), sums.end(),
                          std::inserter(inter, inter.begin()));
    allowed = std::move(inter);
    if (allowed.size() == 2) break;
  }
  return {allowed.begin(), allowed.end()};
}

std::vector<BigRational> power_sums(const IntPoly& f, int count) {
  int d = f.degree();
  std::vector<BigRational> e(d + 1);
  e[0] = 1;
  for (int k = 1; k <= d; ++k) {
    BigRational v(f.coeff(d - k), f.leading());
    v.canonicalize();
    e[k] = (k % 2 ? -v : v);
  }
  std::vector<BigRational> p(count + 1, BigRational(0));
  for (int k = 1; k <= count; ++k) {
    BigRational acc = 0;
    for (int i = 1; i < k && i <= d; ++i) {
      BigRational t = e[i] * p[k - i];
      acc += (i % 2 ? t : BigRational(-t));
    }
    if (k <= d) {
      BigRational t = e[k] * k;
      acc += (k % 2 ? t : BigRational(-t));
    }
    p[k] = acc;
  }
  p.erase(p.begin());
  return p;
}

RatPoly from_power_sums(const std::vector<BigRational>& sums) {
  int n = static_cast<int>(sums.size());
  std::vector<BigRational> e(n + 1, BigRational(0));
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    BigRational acc = 0;
    for (int i = 1; i <= k; ++i) {
      BigRational t = e[k - i] * sums[i - 1];
      acc += (i % 2 ? t : BigRational(-t));
    }
    e[k] = acc / k;
  }
  RatPoly r;
  r.c.assign(n + 1, BigRational(0));
  for (int k = 0; k <= n; ++k) r.c[n - k] = (k % 2 ? BigRational(-e[k]) : e[k]);
  r.trim();
  return r;
}

}  // namespace perbase
