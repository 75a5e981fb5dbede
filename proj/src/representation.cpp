#include "perbase/representation.hpp"

#include <algorithm>
#include <numeric>

#include "perbase/error.hpp"
#include "perbase/laurent.hpp"

namespace perbase {

BigInt Representation::alphabet_bound() const {
  BigInt m = 0;
  for (const auto& v : preperiod) m = std::max(m, BigInt(abs(v)));
  for (const auto& v : period) m = std::max(m, BigInt(abs(v)));
  return m;
}

BigInt Representation::digit_at(long e) const {
  long k = L - e;
  if (k < 0) return 0;
  if (k < static_cast<long>(preperiod.size())) return preperiod[k];
  if (period.empty()) return 0;
  return period[(k - preperiod.size()) % period.size()];
}

Alphabet Alphabet::range(long lo, long hi) {
  Alphabet a;
  for (long v = lo; v <= hi; ++v) a.digits.emplace_back(v);
  return a;
}

bool Alphabet::contains(const BigInt& a) const { return std::binary_search(digits.begin(), digits.end(), a); }

namespace {

// sum_i digits[i] beta^(len-1-i)
FieldElement block_value(const Field& field, const std::vector<BigInt>& digits) {
  std::vector<std::pair<long, BigInt>> terms;
  long n = static_cast<long>(digits.size());
  for (long i = n - 1; i >= 0; --i)
    if (digits[i] != 0) terms.emplace_back(n - 1 - i, digits[i]);
  return eval_terms(field, terms);
}

}  // namespace

FieldElement eval_rep(const Field& field, const Representation& rep) {
  if (rep.is_zero()) return FieldElement(field);
  FieldElement value = block_value(field, rep.preperiod);
  if (!rep.period.empty()) {
    FieldElement one = FieldElement::from_rational(field, 1);
    FieldElement denom = FieldElement::beta(field).pow(static_cast<long>(rep.period.size())) - one;
    value = value + block_value(field, rep.period) / denom;
  }
  long shift = rep.L + 1 - static_cast<long>(rep.preperiod.size());
  return shift == 0 ? value : value * FieldElement::beta(field).pow(shift);
}

Representation canonicalize(Representation r) {
  auto is_zero_digit = [](const BigInt& v) { return v == 0; };
  if (std::all_of(r.period.begin(), r.period.end(), is_zero_digit)) r.period.clear();
  if (r.period.empty()) {
    while (!r.preperiod.empty() && r.preperiod.back() == 0) r.preperiod.pop_back();
    if (r.preperiod.empty()) return Representation{};
  }
  // Primitive period.
  std::size_t s = r.period.size();
  for (std::size_t t = 1; t < s; ++t) {
    if (s % t) continue;
    bool ok = true;
    for (std::size_t i = t; i < s && ok; ++i) ok = r.period[i] == r.period[i - t];
    if (ok) {
      r.period.resize(t);
      break;
    }
  }
  // Absorb preperiod digits equal to the period rotated right.
  if (!r.period.empty()) {
    std::size_t np = r.preperiod.size(), k = 0;
    s = r.period.size();
    while (k < np && r.preperiod[np - 1 - k] == r.period[s - 1 - k % s]) ++k;
    std::rotate(r.period.rbegin(), r.period.rbegin() + k % s, r.period.rend());
    r.preperiod.resize(np - k);
  }
  // Leading zeros.
  std::size_t lead = 0;
  while (lead < r.preperiod.size() && r.preperiod[lead] == 0) ++lead;
  r.preperiod.erase(r.preperiod.begin(), r.preperiod.begin() + lead);
  r.L -= static_cast<long>(lead);
  if (r.preperiod.empty()) {
    std::size_t k = 0;
    while (r.period[k] == 0) ++k;
    std::rotate(r.period.begin(), r.period.begin() + k, r.period.end());
    r.L -= static_cast<long>(k);
  }
  return r;
}

std::string format_rep(const Representation& rep, bool ascii) {
  const std::string dot = ascii ? "." : "•";
  const std::string omega = ascii ? "^w" : "ω";
  if (rep.is_zero()) return "0" + dot;
  std::vector<BigInt> pre = rep.preperiod, per = rep.period;
  long L = rep.L;
  // Unroll the period until it starts at a negative power.
  while (!per.empty() && L - static_cast<long>(pre.size()) >= 0) {
    pre.push_back(per.front());
    std::rotate(per.begin(), per.begin() + 1, per.end());
  }
  auto join = [](const std::vector<BigInt>& v, std::size_t from, std::size_t to) {
    std::string s;
    for (std::size_t i = from; i < to; ++i) {
      if (i > from) s += ",";
      s += to_string(v[i]);
    }
    return s;
  };
  std::string out;
  std::vector<BigInt> frac;
  if (L < 0) {
    out = "0";
    frac.assign(static_cast<std::size_t>(-L - 1), BigInt(0));
    frac.insert(frac.end(), pre.begin(), pre.end());
  } else {
    std::size_t nint = static_cast<std::size_t>(L + 1);
    if (pre.size() < nint) pre.resize(nint, BigInt(0));
    out = join(pre, 0, nint);
    frac.assign(pre.begin() + nint, pre.end());
  }
  out += dot;
  out += join(frac, 0, frac.size());
  if (!per.empty()) {
    if (!frac.empty()) out += ",";
    out += "(" + join(per, 0, per.size()) + ")" + omega;
  }
  return out;
}

namespace {

std::string normalize_text(const std::string& text) {
  std::string s;
  for (std::size_t i = 0; i < text.size();) {
    unsigned char c = text[i];
    if (text.compare(i, 3, "•") == 0) {
      s += '.';
      i += 3;
    } else if (text.compare(i, 3, "−") == 0) {
      s += '-';
      i += 3;
    } else if (text.compare(i, 3, "^ω") == 0) {
      s += 'w';
      i += 3;
    } else if (text.compare(i, 2, "ω") == 0) {
      s += 'w';
      i += 2;
    } else if (text.compare(i, 2, "^w") == 0) {
      s += 'w';
      i += 2;
    } else if (std::isspace(c)) {
      ++i;
    } else {
      s += static_cast<char>(c);
      ++i;
    }
  }
  return s;
}

std::vector<BigInt> parse_digits(const std::string& s, const std::string& whole) {
  std::vector<BigInt> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(',', start);
    std::string tok = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    std::size_t k = (!tok.empty() && tok[0] == '-') ? 1 : 0;
    if (tok.size() == k || !std::all_of(tok.begin() + k, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(ErrorCode::ParseError, "bad digit '" + tok + "' in representation '" + whole + "'");
    out.emplace_back(tok);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Representation parse_rep(const std::string& text) {
  std::string s = normalize_text(text);
  auto dot = s.find('.');
  if (dot == std::string::npos || s.find('.', dot + 1) != std::string::npos)
    fail(ErrorCode::ParseError, "representation needs exactly one radix point: '" + text + "'");
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  if (ip.empty()) ip = "0";
  Representation r;
  r.preperiod = parse_digits(ip, text);
  r.L = static_cast<long>(r.preperiod.size()) - 1;
  auto open = fp.find('(');
  std::string head = fp.substr(0, open);
  if (!head.empty() && head.back() == ',') head.pop_back();
  auto tail = parse_digits(head, text);
  r.preperiod.insert(r.preperiod.end(), tail.begin(), tail.end());
  if (open != std::string::npos) {
    auto close = fp.find(')', open);
    if (close == std::string::npos || fp.substr(close + 1) != "w")
      fail(ErrorCode::ParseError, "period must be written (...)w at the end: '" + text + "'");
    r.period = parse_digits(fp.substr(open + 1, close - open - 1), text);
    if (r.period.empty()) fail(ErrorCode::ParseError, "empty period in '" + text + "'");
  } else if (fp.find_first_of(")w") != std::string::npos) {
    fail(ErrorCode::ParseError, "unbalanced period in '" + text + "'");
  }
  return r;
}

bool weak_greedy_check(const Field& field, const Representation& rep, const BigRational& c) {
  if (rep.is_zero()) fail(ErrorCode::ZeroRepresentation, "weak greedy check needs a nonzero representation");
  FieldElement x = eval_rep(field, rep);
  if (x.is_zero()) fail(ErrorCode::ZeroRepresentation, "representation evaluates to zero");
  FieldElement scaled = x * FieldElement::beta(field).pow(-rep.L);
  return compare_modulus(scaled, c) >= 0;
}

FieldAlphabet FieldAlphabet::from_digits(const std::vector<FieldElement>& digits) {
  FieldAlphabet a;
  a.digits = digits;
  for (const auto& e : digits) mpz_lcm(a.Q.get_mpz_t(), a.Q.get_mpz_t(), e.den().get_mpz_t());
  for (const auto& e : digits) {
    std::vector<BigInt> row;
    BigInt scale = a.Q / e.den();
    for (const auto& c : e.num()) row.push_back(c * scale);
    a.p.push_back(row);
  }
  return a;
}

BigInt FieldAlphabet::max_coefficient() const {
  BigInt m = 0;
  for (const auto& row : p)
    for (const auto& c : row) m = std::max(m, BigInt(abs(c)));
  return m;
}

FieldElement eval_index_rep(const Field& field, const FieldAlphabet& alphabet, const IndexRepresentation& rep) {
  FieldElement total(field);
  FieldElement beta = FieldElement::beta(field);
  long e = rep.L;
  FieldElement pw = beta.pow(e);
  FieldElement inv = beta.inverse();
  for (int idx : rep.preperiod) {
    total = total + alphabet.digits.at(idx) * pw;
    pw = pw * inv;
  }
  if (!rep.period.empty()) {
    FieldElement block(field);
    FieldElement q = pw;
    for (int idx : rep.period) {
      block = block + alphabet.digits.at(idx) * q;
      q = q * inv;
    }
    FieldElement one = FieldElement::from_rational(field, 1);
    long s = static_cast<long>(rep.period.size());
    total = total + block / (one - beta.pow(-s));
  }
  return total;
}

ReducedRepresentation reduce_alphabet_to_integers(const Field& field, const FieldAlphabet& alphabet,
                                                  const IndexRepresentation& rep) {
  int d = field->degree();
  long np = static_cast<long>(rep.preperiod.size()), s = static_cast<long>(rep.period.size());
  auto index_at = [&](long k) -> int {  // k = offset from the first digit
    if (k < 0) return -1;
    if (k < np) return rep.preperiod[k];
    if (s == 0) return -1;
    return rep.period[(k - np) % s];
  };
  auto b_at = [&](long k) {  // offset relative to the first input digit
    BigInt b = 0;
    for (int i = 0; i < d; ++i) {
      int idx = index_at(k + i);
      if (idx >= 0) b += alphabet.p.at(idx)[i];
    }
    return b;
  };
  ReducedRepresentation out;
  out.Q = alphabet.Q;
  out.rep.L = rep.L + d - 1;
  for (long k = -(d - 1); k < np; ++k) out.rep.preperiod.push_back(b_at(k));
  for (long k = np; k < np + s; ++k) out.rep.period.push_back(b_at(k));
  BigInt bound = alphabet.max_coefficient() * d;
  if (out.rep.alphabet_bound() > bound) fail(ErrorCode::InvalidArgument, "reduced digit exceeds the proven bound");
  out.rep = canonicalize(out.rep);
  if (!out.rep.is_zero() && out.rep.L > rep.L + d - 1)
    fail(ErrorCode::InvalidArgument, "reduced leading index exceeds the proven bound");
  return out;
}

Representation lift_rep_from_power_base(const Field& field, unsigned m, const std::vector<Representation>& components) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "power must be positive");
  int sub_degree = minpoly_of_power(field, m).degree();
  int limit = field->degree() / sub_degree;
  if (static_cast<int>(components.size()) > limit)
    fail(ErrorCode::ComponentCountExceedsDegree, std::to_string(components.size()) + " components exceed [Q(beta):Q(beta^" +
                                                     std::to_string(m) + ")] = " + std::to_string(limit));
  std::vector<Representation> comps;
  for (const auto& c : components) comps.push_back(canonicalize(c));
  bool any = std::any_of(comps.begin(), comps.end(), [](const Representation& r) { return !r.is_zero(); });
  if (!any) return Representation{};
  long top = 0, bottom = 0;
  std::size_t S = 1;
  bool first = true;
  for (const auto& c : comps) {
    if (c.is_zero()) continue;
    long start = c.L - static_cast<long>(c.preperiod.size());  // first periodic power
    if (first || c.L > top) top = c.L;
    if (first || start < bottom) bottom = start;
    first = false;
    if (!c.period.empty()) S = std::lcm(S, c.period.size());
  }
  long lm = static_cast<long>(m);
  Representation out;
  out.L = lm * top + lm - 1;
  auto emit = [&](long P, std::vector<BigInt>& dst) {
    for (long i = lm - 1; i >= 0; --i) {
      BigInt v = 0;
      if (i < static_cast<long>(comps.size())) v = comps[i].digit_at(P);
      dst.push_back(v);
    }
  };
  for (long P = top; P > bottom; --P) emit(P, out.preperiod);
  bool periodic = std::any_of(comps.begin(), comps.end(), [](const Representation& r) { return !r.period.empty(); });
  if (periodic)
    for (long P = bottom; P > bottom - static_cast<long>(S); --P) emit(P, out.period);
  return canonicalize(out);
}

FieldElement power_field_to_base(const FieldElement& y, const Field& field, unsigned m) {
  std::vector<std::pair<long, BigInt>> terms;
  for (std::size_t j = 0; j < y.num().size(); ++j)
    if (y.num()[j] != 0) terms.emplace_back(static_cast<long>(m * j), y.num()[j]);
  FieldElement v = eval_terms(field, terms);
  return BigRational(1, y.den()) * v;
}

}  // namespace perbase
