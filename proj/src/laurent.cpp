#include "perbase/laurent.hpp"

#include <unordered_map>

#include "perbase/error.hpp"

namespace perbase {

LaurentIntElement::LaurentIntElement(Field field, const std::map<long, BigInt>& terms) : field_(std::move(field)) {
  for (const auto& [e, c] : terms)
    if (c != 0) terms_.emplace(e, c);
}

LaurentIntElement LaurentIntElement::monomial(const Field& field, long exp, const BigInt& c) {
  LaurentIntElement z(field);
  z.add_term(exp, c);
  return z;
}

LaurentIntElement LaurentIntElement::constant(const Field& field, const BigInt& c) { return monomial(field, 0, c); }

BigInt LaurentIntElement::coeff(long e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

LaurentIntElement& LaurentIntElement::add_term(long exp, const BigInt& c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms_.emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

LaurentIntElement LaurentIntElement::shifted(long k) const {
  LaurentIntElement z(field_);
  for (const auto& [e, c] : terms_) z.terms_.emplace_hint(z.terms_.end(), e + k, c);
  return z;
}

LaurentIntElement LaurentIntElement::operator-() const {
  LaurentIntElement z = *this;
  for (auto& [e, c] : z.terms_) c = -c;
  return z;
}

namespace {

void check_same(const LaurentIntElement& a, const LaurentIntElement& b) {
  if (!same_field(a.field(), b.field())) fail(ErrorCode::FieldMismatch, "Laurent elements belong to different fields");
}

}  // namespace

LaurentIntElement operator+(const LaurentIntElement& a, const LaurentIntElement& b) {
  check_same(a, b);
  LaurentIntElement z = a;
  for (const auto& [e, c] : b.terms_) z.add_term(e, c);
  return z;
}

LaurentIntElement operator-(const LaurentIntElement& a, const LaurentIntElement& b) { return a + (-b); }

LaurentIntElement operator*(const LaurentIntElement& a, const LaurentIntElement& b) {
  check_same(a, b);
  LaurentIntElement z(a.field_);
  for (const auto& [e1, c1] : a.terms_)
    for (const auto& [e2, c2] : b.terms_) z.add_term(e1 + e2, c1 * c2);
  return z;
}

LaurentIntElement operator*(const BigInt& k, const LaurentIntElement& a) {
  LaurentIntElement z(a.field_);
  if (k == 0) return z;
  for (const auto& [e, c] : a.terms_) z.terms_.emplace_hint(z.terms_.end(), e, k * c);
  return z;
}

LaurentIntElement LaurentIntElement::pow(unsigned long k) const {
  LaurentIntElement result = constant(field_, 1), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string LaurentIntElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (e == 0) {
      out += perbase::to_string(mag);
      continue;
    }
    if (mag != 1) out += perbase::to_string(mag) + "*";
    out += "b";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

class PowerCache {
 public:
  explicit PowerCache(Field field) : field_(std::move(field)) {}
  const FieldElement& get(long k) {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    FieldElement v = FieldElement::beta(field_).pow(k);
    return cache_.emplace(k, std::move(v)).first->second;
  }

 private:
  Field field_;
  std::unordered_map<long, FieldElement> cache_;
};

// sum_{i in [lo, hi)} c_i beta^(e_i - e_lo)
FieldElement eval_range(const Field& field, const std::vector<std::pair<long, BigInt>>& t, std::size_t lo,
                        std::size_t hi, PowerCache& powers) {
  int d = field->degree();
  long span = t[hi - 1].first - t[lo].first;
  if (span < 2L * d + 16 || hi - lo == 1) {
    std::vector<BigInt> coeffs(span + 1);
    for (std::size_t i = lo; i < hi; ++i) coeffs[t[i].first - t[lo].first] += t[i].second;
    return FieldElement::from_poly(field, std::move(coeffs));
  }
  std::size_t mid = lo + (hi - lo) / 2;
  if (mid == lo) mid = lo + 1;
  FieldElement left = eval_range(field, t, lo, mid, powers);
  FieldElement right = eval_range(field, t, mid, hi, powers);
  return left + right * powers.get(t[mid].first - t[lo].first);
}

}  // namespace

FieldElement eval_terms(const Field& field, const std::vector<std::pair<long, BigInt>>& terms) {
  if (terms.empty()) return FieldElement(field);
  PowerCache powers(field);
  FieldElement v = eval_range(field, terms, 0, terms.size(), powers);
  long e0 = terms.front().first;
  return e0 == 0 ? v : v * FieldElement::beta(field).pow(e0);
}

FieldElement laurent_to_field(const LaurentIntElement& z) {
  std::vector<std::pair<long, BigInt>> terms(z.terms().begin(), z.terms().end());
  return eval_terms(z.field(), terms);
}

}  // namespace perbase
