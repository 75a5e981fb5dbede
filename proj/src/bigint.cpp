#include "perbase/bigint.hpp"

#include <cctype>

#include "perbase/error.hpp"

namespace perbase {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NoRootOutsideUnitDisk: return "NoRootOutsideUnitDisk";
    case ErrorCode::AmbiguousRootHint: return "AmbiguousRootHint";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroRepresentation: return "ZeroRepresentation";
    case ErrorCode::NotRealBase: return "NotRealBase";
    case ErrorCode::NotNegativeRealBase: return "NotNegativeRealBase";
    case ErrorCode::CoverageFails: return "CoverageFails";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::NoRepeatWithinBudget: return "NoRepeatWithinBudget";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::NormalizerRangeExceeded: return "NormalizerRangeExceeded";
    case ErrorCode::ValueNotPreserved: return "ValueNotPreserved";
    case ErrorCode::ComponentCountExceedsDegree: return "ComponentCountExceedsDegree";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

bool valid_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  std::string s = strip(text);
  if (!valid_integer_literal(s)) fail(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

BigRational parse_rational(std::string_view text) {
  std::string s = strip(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRational(parse_integer(s));
  BigInt num = parse_integer(s.substr(0, slash));
  BigInt den = parse_integer(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const BigRational& v) {
  if (v.get_den() == 1) return v.get_num().get_str(10);
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor(const BigRational& v) { return floor_div(v.get_num(), v.get_den()); }

BigInt ceil(const BigRational& v) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigRational pow(const BigRational& base, long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorCode::DivisionByZero, "negative power of zero");
    BigRational inv = 1 / base;
    return pow(inv, -exp);
  }
  BigRational r(pow(BigInt(base.get_num()), static_cast<unsigned long>(exp)),
                pow(BigInt(base.get_den()), static_cast<unsigned long>(exp)));
  return r;
}

std::size_t hash_value(const BigInt& v) noexcept {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(v.get_mpz_t()) + 1);
  std::size_t n = mpz_size(v.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(v.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

BigInt isqrt(const BigInt& v) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

BigRational sqrt_lower(const BigRational& v, unsigned bits) {
  if (v <= 0) return 0;
  // floor(sqrt(v * 4^bits)) / 2^bits
  BigInt scaled = floor(v * BigRational(pow(BigInt(4), bits)));
  BigRational r(isqrt(scaled), pow(BigInt(2), bits));
  r.canonicalize();
  return r;
}

BigRational sqrt_upper(const BigRational& v, unsigned bits) {
  if (v <= 0) return 0;
  BigInt scaled = ceil(v * BigRational(pow(BigInt(4), bits)));
  BigInt s = isqrt(scaled);
  if (s * s < scaled) s += 1;
  BigRational r(s, pow(BigInt(2), bits));
  r.canonicalize();
  return r;
}

BigRational round_down(const BigRational& v, unsigned bits) {
  BigInt scale = pow(BigInt(2), bits);
  BigRational r(floor(v * BigRational(scale)), scale);
  r.canonicalize();
  return r;
}

BigRational round_up(const BigRational& v, unsigned bits) {
  BigInt scale = pow(BigInt(2), bits);
  BigRational r(ceil(v * BigRational(scale)), scale);
  r.canonicalize();
  return r;
}

}  // namespace perbase
