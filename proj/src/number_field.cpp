#include "perbase/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "perbase/error.hpp"

namespace perbase {

namespace {

BigRational two_pow_neg(unsigned bits) { return BigRational(1, pow(BigInt(2), bits)); }

BigRational parse_decimal(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto dot = s.find('.');
  if (dot == std::string::npos) return parse_rational(s);
  bool neg = false;
  std::size_t start = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    start = 1;
  }
  std::string whole = s.substr(start, dot - start);
  std::string frac = s.substr(dot + 1);
  if (whole.empty()) whole = "0";
  for (char ch : whole + frac)
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail(ErrorCode::ParseError, "bad decimal '" + s + "'");
  BigRational v(BigInt(whole + frac), pow(BigInt(10), frac.size()));
  v.canonicalize();
  return neg ? BigRational(-v) : v;
}

}  // namespace

RootHint parse_root_hint(const std::string& text) {
  RootHint h;
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    h.re = parse_decimal(text);
  } else {
    h.re = parse_decimal(std::string_view(text).substr(0, comma));
    h.im = parse_decimal(std::string_view(text).substr(comma + 1));
  }
  return h;
}

NumberField::NumberField(IntPoly minpoly, RootBox box, int index, std::optional<RatComplex> exact)
    : minpoly_(std::move(minpoly)), box_(std::move(box)), index_(index), exact_(std::move(exact)) {}

RootBox NumberField::beta_box() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return box_;
}

RootBox NumberField::beta_box(const BigRational& eps) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (box_.size() > eps) box_ = refine_to(minpoly_, box_, eps);
  return box_;
}

void NumberField::reduce(std::vector<BigInt>& num, BigInt& den) const {
  const auto& f = minpoly_.coeffs();
  int d = degree();
  const BigInt& ad = leading();
  for (int k = static_cast<int>(num.size()) - 1; k >= d; --k) {
    if (num[k] == 0) continue;
    BigInt c = num[k];
    int shift = k - d;
    if (ad != 1) {
      for (int i = 0; i < k; ++i) num[i] *= ad;
      den *= ad;
    }
    for (int i = 0; i < d; ++i) num[shift + i] -= c * f[i];
    num[k] = 0;
  }
  num.resize(d);
}

std::optional<IntPoly> find_factor(const IntPoly& f) {
  int d = f.degree();
  if (d <= 1) return std::nullopt;
  if (f.coeff(0) == 0) return IntPoly::monomial(1, 1);
  if (!is_squarefree(f)) {
    RatPoly g = gcd(RatPoly::from(f), RatPoly::from(f.derivative()));
    return g.to_primitive_int();
  }
  std::vector<int> degs;
  for (int k : possible_factor_degrees(f))
    if (k >= 1 && 2 * k <= d) degs.push_back(k);
  if (degs.empty()) return std::nullopt;

  BigRational bound = root_modulus_bound(f) + 1;
  unsigned bits = static_cast<unsigned>(mpz_sizeinbase(f.leading().get_mpz_t(), 2)) + 2 * d + 8;
  bits += static_cast<unsigned>(d * std::max(1.0, std::log2(bound.get_d()) + 1));
  auto roots = isolate_roots(f, two_pow_neg(bits));
  std::vector<RatPoly> reals, pairs;
  for (const auto& b : roots) {
    RatComplex c = b.center();
    if (b.real) {
      reals.push_back(RatPoly{{-c.re, 1}});
    } else if (c.im > 0) {
      pairs.push_back(RatPoly{{c.norm2(), -2 * c.re, 1}});
    }
  }
  BigRational lc(f.leading());
  auto try_candidate = [&](const RatPoly& p) -> std::optional<IntPoly> {
    std::vector<BigInt> coeffs;
    for (const auto& c : p.c) coeffs.push_back(floor(lc * c + BigRational(1, 2)));
    IntPoly h = IntPoly(coeffs);
    if (h.degree() != p.degree() || h.degree() < 1) return std::nullopt;
    h = h.primitive();
    if (f.exact_div(h)) return h;
    return std::nullopt;
  };
  // Conjugation-closed root subsets: r real roots plus np complex pairs.
  std::function<std::optional<IntPoly>(const std::vector<RatPoly>&, std::size_t, int, RatPoly,
                                       const std::function<std::optional<IntPoly>(const RatPoly&)>&)>
      choose = [&](const std::vector<RatPoly>& pool, std::size_t start, int left, RatPoly acc,
                   const std::function<std::optional<IntPoly>(const RatPoly&)>& done) -> std::optional<IntPoly> {
    if (left == 0) return done(acc);
    for (std::size_t i = start; i + left <= pool.size(); ++i) {
      if (auto r = choose(pool, i + 1, left - 1, acc * pool[i], done)) return r;
    }
    return std::nullopt;
  };
  for (int k : degs) {
    for (int np = 0; 2 * np <= k; ++np) {
      int nr = k - 2 * np;
      if (nr > static_cast<int>(reals.size()) || np > static_cast<int>(pairs.size())) continue;
      auto found = choose(pairs, 0, np, RatPoly{{1}}, [&](const RatPoly& pp) {
        return choose(reals, 0, nr, pp, try_candidate);
      });
      if (found) return found;
    }
  }
  return std::nullopt;
}

bool is_irreducible(const IntPoly& f) {
  if (f.degree() < 1) return false;
  if (!f.is_primitive() && f.degree() > 0 && f.content() != 1) return false;
  return !find_factor(f);
}

namespace {

int select_default(const std::vector<RootBox>& roots) {
  std::vector<int> cand;
  BigRational best_lower = -1;
  for (const auto& r : roots) best_lower = std::max(best_lower, r.modulus2_lower());
  for (int i = 0; i < static_cast<int>(roots.size()); ++i)
    if (roots[i].modulus2_upper() >= best_lower) cand.push_back(i);
  BigRational best_re = roots[cand[0]].re_lo;
  for (int i : cand) best_re = std::max(best_re, roots[i].re_lo);
  std::vector<int> cand2;
  for (int i : cand)
    if (roots[i].re_hi >= best_re) cand2.push_back(i);
  for (int i : cand2)
    if (roots[i].real || roots[i].center().im > 0) return i;
  return cand2[0];
}

}  // namespace

Field make_field(const IntPoly& input, const std::optional<RootHint>& hint) {
  if (input.degree() < 1) fail(ErrorCode::InvalidArgument, "field polynomial must have degree >= 1");
  IntPoly f = input.primitive();
  if (auto g = find_factor(f)) fail(ErrorCode::ReduciblePolynomial, f.to_string() + " has the factor " + g->to_string());
  int d = f.degree();
  auto roots = isolate_roots(f, two_pow_neg(60));
  int index = 0;
  if (hint) {
    RatComplex h{hint->re, hint->im};
    std::vector<std::pair<double, int>> dist;
    for (int i = 0; i < d; ++i) dist.push_back({std::sqrt((roots[i].center() - h).norm2().get_d()), i});
    std::sort(dist.begin(), dist.end());
    if (d > 1 && dist[1].first - dist[0].first < 1e-9 * (1 + dist[0].first))
      fail(ErrorCode::AmbiguousRootHint, "root hint is equidistant from several roots");
    index = dist[0].second;
  } else {
    index = select_default(roots);
  }
  RootBox box = roots[index];
  for (unsigned bits = 60;; bits *= 2) {
    if (box.modulus2_lower() > 1) break;
    if (box.modulus2_upper() < 1 || bits > 1024)
      fail(ErrorCode::NoRootOutsideUnitDisk, "selected root of " + f.to_string() + " has modulus <= 1");
    box = refine_to(f, box, two_pow_neg(bits * 2));
  }
  std::optional<RatComplex> exact;
  if (d == 1) {
    BigRational r(-f.coeff(0), f.coeff(1));
    r.canonicalize();
    exact = RatComplex{r, 0};
    box = RootBox{r, r, 0, 0, true};
  } else if (d == 2) {
    BigInt disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
    if (disc < 0) {
      BigInt s = isqrt(BigInt(-disc));
      if (s * s == -disc) {
        BigRational re(-f.coeff(1), 2 * f.coeff(2)), im(s, 2 * f.coeff(2));
        re.canonicalize();
        im.canonicalize();
        if (box.center().im < 0) im = -im;
        exact = RatComplex{re, im};
        box = RootBox{re, re, im, im, false};
      }
    }
  }
  return std::make_shared<NumberField>(f, box, index, exact);
}

Field make_field(const std::vector<BigInt>& coeffs, const std::optional<RootHint>& hint) {
  return make_field(IntPoly(coeffs), hint);
}

Field parse_field(const std::string& spec, const std::string& hint) {
  IntPoly f = parse_poly_spec(spec);
  if (f.degree() < 1) fail(ErrorCode::ParseError, "field spec needs degree >= 1: '" + spec + "'");
  std::optional<RootHint> h;
  if (!hint.empty()) h = parse_root_hint(hint);
  return make_field(f, h);
}

bool same_field(const Field& a, const Field& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (!(a->minpoly() == b->minpoly())) return false;
  if (a->exact_beta() && b->exact_beta()) return *a->exact_beta() == *b->exact_beta();
  return a->beta_box().intersects(b->beta_box()) && a->beta_index() == b->beta_index();
}

namespace {

void check_same(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.field(), b.field())) fail(ErrorCode::FieldMismatch, "elements belong to different fields");
}

}  // namespace

FieldElement::FieldElement(Field field) : field_(std::move(field)) { num_.assign(field_->degree(), 0); }

void FieldElement::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  BigInt g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

FieldElement FieldElement::from_rational(const Field& field, const BigRational& v) {
  FieldElement x(field);
  BigRational c = v;
  c.canonicalize();
  x.num_[0] = c.get_num();
  x.den_ = c.get_den();
  return x;
}

FieldElement FieldElement::from_coords(const Field& field, const std::vector<BigRational>& coords) {
  if (static_cast<int>(coords.size()) > field->degree())
    fail(ErrorCode::InvalidArgument, "too many coordinates for a degree-" + std::to_string(field->degree()) + " field");
  BigInt l = 1;
  for (const auto& c : coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  FieldElement x(field);
  for (std::size_t i = 0; i < coords.size(); ++i) x.num_[i] = coords[i].get_num() * (l / coords[i].get_den());
  x.den_ = l;
  x.normalize();
  return x;
}

FieldElement FieldElement::from_poly(const Field& field, std::vector<BigInt> coeffs, BigInt den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  FieldElement x(field);
  if (static_cast<int>(coeffs.size()) < field->degree()) coeffs.resize(field->degree());
  field->reduce(coeffs, den);
  x.num_ = std::move(coeffs);
  x.den_ = std::move(den);
  x.normalize();
  return x;
}

FieldElement FieldElement::beta(const Field& field) { return from_poly(field, {0, 1}); }

std::vector<BigRational> FieldElement::coords() const {
  std::vector<BigRational> out;
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coord(i));
  return out;
}

BigRational FieldElement::coord(std::size_t i) const {
  BigRational r(num_[i], den_);
  r.canonicalize();
  return r;
}

bool FieldElement::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; });
}

std::optional<BigRational> FieldElement::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  return coord(0);
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  FieldElement r(a.field_);
  if (a.den_ == b.den_) {
    for (std::size_t i = 0; i < r.num_.size(); ++i) r.num_[i] = a.num_[i] + b.num_[i];
    r.den_ = a.den_;
  } else {
    for (std::size_t i = 0; i < r.num_.size(); ++i) r.num_[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    r.den_ = a.den_ * b.den_;
  }
  r.normalize();
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  int d = a.field_->degree();
  std::vector<BigInt> prod(2 * d - 1);
  for (int i = 0; i < d; ++i) {
    if (a.num_[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] += a.num_[i] * b.num_[j];
  }
  return FieldElement::from_poly(a.field_, std::move(prod), a.den_ * b.den_);
}

FieldElement operator*(const BigRational& k, const FieldElement& a) {
  FieldElement r = a;
  for (auto& c : r.num_) c *= k.get_num();
  r.den_ *= k.get_den();
  r.normalize();
  return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.field_, b.field_)) return false;
  return a.den_ == b.den_ && a.num_ == b.num_;
}

namespace {

// Fraction-free determinant.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  std::size_t n = m.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (auto r = as_rational()) return from_rational(field_, 1 / *r);
  // Cramer's rule on the integer multiplication matrix of num: column j holds
  // num * beta^j scaled to the common denominator D.
  int d = field_->degree();
  std::vector<FieldElement> cols;
  BigInt D = 1;
  for (int j = 0; j < d; ++j) {
    std::vector<BigInt> shifted(j, BigInt(0));
    shifted.insert(shifted.end(), num_.begin(), num_.end());
    cols.push_back(from_poly(field_, std::move(shifted)));
    D = lcm(D, cols.back().den_);
  }
  std::vector<std::vector<BigInt>> m(d, std::vector<BigInt>(d));
  for (int j = 0; j < d; ++j) {
    BigInt scale = D / cols[j].den_;
    for (int i = 0; i < d; ++i) m[i][j] = cols[j].num_[i] * scale;
  }
  BigInt det = bareiss_det(m);
  if (det == 0) fail(ErrorCode::DivisionByZero, "singular multiplication matrix");
  std::vector<BigInt> w(d);
  for (int i = 0; i < d; ++i) {
    auto mi = m;
    for (int r = 0; r < d; ++r) mi[r][i] = r == 0 ? D : BigInt(0);
    w[i] = bareiss_det(std::move(mi)) * den_;
  }
  return from_poly(field_, std::move(w), det);
}

FieldElement FieldElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElement result = from_rational(field_, 1), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::size_t FieldElement::hash() const {
  std::size_t h = hash_value(den_);
  for (const auto& c : num_) h = h * 1000003u ^ hash_value(c);
  return h;
}

std::string FieldElement::to_string() const {
  if (auto r = as_rational()) return perbase::to_string(*r);
  std::string out;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) out += ";";
    out += perbase::to_string(coord(i));
  }
  return out;
}

FieldElement elem_add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement elem_sub(const FieldElement& x, const FieldElement& y) { return x - y; }
FieldElement elem_mul(const FieldElement& x, const FieldElement& y) { return x * y; }
FieldElement elem_inv(const FieldElement& x) { return x.inverse(); }

FieldElement parse_element(const Field& field, const std::string& text) {
  if (text.find(';') == std::string::npos) return FieldElement::from_rational(field, parse_rational(text));
  std::vector<BigRational> coords;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(';', start);
    coords.push_back(parse_rational(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (static_cast<int>(coords.size()) > field->degree())
    fail(ErrorCode::ParseError, "value has more coordinates than the field degree");
  return FieldElement::from_coords(field, coords);
}

std::optional<RatComplex> exact_value(const FieldElement& x) {
  const auto& beta = x.field()->exact_beta();
  if (!beta) return std::nullopt;
  RatComplex acc;
  for (int i = static_cast<int>(x.num().size()) - 1; i >= 0; --i) acc = acc * *beta + RatComplex{BigRational(x.num()[i]), 0};
  BigRational inv(1, x.den());
  return RatComplex{acc.re * inv, acc.im * inv};
}

CInterval embed_in(const FieldElement& x, const RootBox& box) {
  CInterval b{{box.re_lo, box.re_hi}, {box.im_lo, box.im_hi}};
  CInterval acc;
  bool real = box.real;
  for (int i = static_cast<int>(x.num().size()) - 1; i >= 0; --i) {
    if (real) {
      acc.re = acc.re * b.re;
    } else {
      acc = acc * b;
    }
    acc.re = acc.re + Interval::point(BigRational(x.num()[i]));
  }
  BigRational inv(1, x.den());
  return inv * acc;
}

CInterval embed(const FieldElement& x, const BigRational& eps) {
  if (auto v = exact_value(x)) return {Interval::point(v->re), Interval::point(v->im)};
  const Field& f = x.field();
  RootBox box = f->beta_box();
  BigRational m = box.modulus_upper(16) + 1, s = 0, mp = 1;
  for (std::size_t i = 1; i < x.num().size(); ++i) {
    s += BigRational(abs(x.num()[i])) * static_cast<long>(i) * mp;
    mp *= m;
  }
  s /= BigRational(x.den());
  BigRational w = eps / (4 * (s + 1));
  while (true) {
    CInterval r = embed_in(x, f->beta_box(w));
    if (r.size() <= eps) return r;
    w /= 256;
  }
}

int sign_real(const FieldElement& x) {
  if (!x.field()->beta_is_real()) fail(ErrorCode::NotRealBase, "base is not real");
  if (x.is_zero()) return 0;
  if (auto v = exact_value(x)) return sgn(v->re);
  for (unsigned bits = 16;; bits += 48) {
    int s = embed(x, two_pow_neg(bits)).re.sign();
    if (s != 0) return s;
  }
}

BigInt floor_real(const FieldElement& x) {
  if (auto v = exact_value(x)) return floor(v->re);
  Interval iv = embed(x, two_pow_neg(16)).re;
  BigInt m = floor(iv.mid());
  auto one = FieldElement::from_rational(x.field(), 1);
  while (sign_real(x - BigRational(m) * one) < 0) m -= 1;
  while (sign_real(x - BigRational(m + 1) * one) >= 0) m += 1;
  return m;
}

int compare_modulus(const FieldElement& x, const BigRational& r) {
  BigRational r2 = r * r;
  if (auto v = exact_value(x)) return sgn(v->norm2() - r2);
  if (x.field()->beta_is_real()) {
    return sign_real(x * x - FieldElement::from_rational(x.field(), r2));
  }
  if (x.is_zero()) return r == 0 ? 0 : -1;
  for (unsigned bits = 16; bits <= 4096; bits *= 2) {
    Interval n = embed(x, two_pow_neg(bits)).norm2();
    if (n.lo > r2) return 1;
    if (n.hi < r2) return -1;
  }
  return 0;
}

std::vector<RootBox> conjugate_boxes(const Field& field, const BigRational& eps) {
  return isolate_roots(field->minpoly(), eps);
}

IntPoly minpoly_of_element(const FieldElement& x) {
  int d = x.field()->degree();
  struct Row {
    std::vector<BigRational> v, comb;
    int pivot;
  };
  std::vector<Row> basis;
  FieldElement power = FieldElement::from_rational(x.field(), 1);
  for (int k = 0; k <= d; ++k) {
    std::vector<BigRational> v = power.coords(), comb(k + 1, 0);
    comb[k] = 1;
    for (const auto& row : basis) {
      if (v[row.pivot] == 0) continue;
      BigRational factor = v[row.pivot] / row.v[row.pivot];
      for (int i = 0; i < d; ++i) v[i] -= factor * row.v[i];
      for (std::size_t i = 0; i < row.comb.size(); ++i) comb[i] -= factor * row.comb[i];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const BigRational& c) { return c != 0; });
    if (nz == v.end()) {
      RatPoly p{comb};
      p.trim();
      return p.to_primitive_int().primitive();
    }
    basis.push_back(Row{v, comb, static_cast<int>(nz - v.begin())});
    power = power * x;
  }
  fail(ErrorCode::InvalidArgument, "no linear relation found among powers");
}

IntPoly minpoly_of_power(const Field& field, unsigned m) {
  return minpoly_of_element(FieldElement::beta(field).pow(static_cast<long>(m)));
}

}  // namespace perbase
