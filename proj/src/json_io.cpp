#include "perbase/json_io.hpp"

#include <climits>
#include <sstream>

#include "perbase/error.hpp"

namespace perbase {

namespace {

BigRational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return BigRational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected a rational as integer or \"p/q\" string");
}

std::string decimal(const BigRational& v, int digits = 12) {
  std::ostringstream os;
  os.precision(digits);
  os << v.get_d();
  return os.str();
}

template <class F>
auto guarded(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

Json integer_json(const BigInt& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(to_string(v));
}

BigInt integer_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected an integer");
}

Json element_json(const FieldElement& x) {
  Json coords = Json::array();
  for (const auto& c : x.coords()) coords.push_back(to_string(c));
  return Json{{"coords", coords}};
}

FieldElement element_from_json(const Field& field, const Json& j) {
  return guarded([&] {
    std::vector<BigRational> c;
    for (const auto& v : j.at("coords")) c.push_back(rational_from_json(v));
    return FieldElement::from_coords(field, c);
  });
}

Json rep_json(const Representation& rep) {
  Json pre = Json::array(), per = Json::array();
  for (const auto& d : rep.preperiod) pre.push_back(integer_json(d));
  for (const auto& d : rep.period) per.push_back(integer_json(d));
  return Json{{"L", rep.L}, {"preperiod", pre}, {"period", per}};
}

Representation rep_from_json(const Json& j) {
  return guarded([&] {
    Representation r;
    r.L = j.at("L").get<long>();
    for (const auto& d : j.at("preperiod")) r.preperiod.push_back(integer_from_json(d));
    for (const auto& d : j.at("period")) r.period.push_back(integer_from_json(d));
    return r;
  });
}

Json laurent_json(const LaurentIntElement& z) {
  Json terms = Json::array();
  for (auto it = z.terms().rbegin(); it != z.terms().rend(); ++it) terms.push_back(Json::array({it->first, integer_json(it->second)}));
  return Json{{"terms", terms}};
}

LaurentIntElement parse_laurent(const Field& field, const std::string& text) {
  std::map<long, BigInt> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorCode::ParseError, "Laurent term '" + item + "' must be exponent:coefficient");
    BigInt e = parse_integer(item.substr(0, colon));
    if (!e.fits_slong_p()) fail(ErrorCode::ParseError, "exponent out of range");
    terms[e.get_si()] += parse_integer(item.substr(colon + 1));
  }
  return LaurentIntElement(field, terms);
}

Json classification_json(const BaseClassification& c, const WeakGreedyAdvisory& advisory) {
  Json conj = Json::array();
  for (const auto& ci : c.conjugates) {
    RatComplex m = ci.box.center();
    conj.push_back(Json{{"re", decimal(m.re)},
                        {"im", decimal(m.im)},
                        {"verdict", std::string(verdict_name(ci.verdict))},
                        {"is_beta", ci.is_beta}});
  }
  Json uc = c.unit_circle_count ? Json(*c.unit_circle_count) : Json(nullptr);
  return Json{{"label", std::string(label_name(c.label))},
              {"is_algebraic_integer", c.is_algebraic_integer},
              {"is_rational", c.is_rational},
              {"conjugates", conj},
              {"collapse_exponents", c.collapse_exponents},
              {"unit_circle_count", uc},
              {"weak_greedy_advisory", Json{{"verdict", advisory.verdict()}, {"reasons", advisory.reasons}}}};
}

Json trace_json(const PipelineTrace& t) {
  Json Z = Json::array();
  for (const auto& row : t.Z) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(integer_json(v));
    Z.push_back(r);
  }
  return Json{{"q", integer_json(t.q)},     {"r", integer_json(t.r)}, {"qbar", integer_json(t.qbar)},
              {"k", t.k},                   {"m", t.cycle.m},         {"l", t.cycle.l},
              {"s", t.s},                   {"Z", Z},                 {"z", t.z.field() ? laurent_json(t.z) : Json(nullptr)},
              {"result", rep_json(t.result)}};
}

Json orbit_trace_json(const DigitSelector& sel, const OrbitTrace& t) {
  Json steps = Json::array();
  for (const auto& st : t.steps)
    steps.push_back(Json{{"remainder", element_json(st.remainder)},
                         {"digit", element_json(sel.digits[st.digit])},
                         {"ambiguous", st.ambiguous}});
  Json rep = t.repeat ? Json::array({t.repeat->first, t.repeat->second}) : Json(nullptr);
  return Json{{"n_scale", t.n_scale}, {"steps", steps}, {"repeat", rep}};
}

DigitSelector selector_from_json(const Field& field, const Json& j) {
  return guarded([&] {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "greedy") return greedy_selector(field);
    if (kind == "balanced") return balanced_selector(field);
    if (kind == "itosadahiro") return ito_sadahiro_selector(field);
    if (kind != "thurston") fail(ErrorCode::ParseError, "unknown selector kind '" + kind + "'");
    if (!j.contains("region") && !j.contains("alphabet")) return thurston_default_selector(field);
    std::vector<long> alpha = j.at("alphabet").get<std::vector<long>>();
    std::vector<FieldElement> digits = integer_digits(field, alpha);
    const Json& region = j.at("region");
    if (region.contains("disk")) return thurston_disk_selector(field, digits, rational_from_json(region.at("disk")));
    Polygon poly;
    for (const auto& v : region.at("polygon")) poly.push_back(RatComplex{rational_from_json(v.at(0)), rational_from_json(v.at(1))});
    return thurston_polygon_selector(field, digits, poly);
  });
}

}  // namespace perbase
