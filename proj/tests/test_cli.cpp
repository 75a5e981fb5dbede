#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "perbase/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = perbase::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string chomp(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

const json& schema() {
  static const json s = [] {
    std::ifstream in(PERBASE_SCHEMA_PATH);
    return json::parse(in);
  }();
  return s;
}

// Subset validator: type, enum, required, properties, items, anyOf, local $ref.
bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

bool validate(const json& v, const json& s, std::string& why, const std::string& path = "$") {
  if (s.contains("$ref")) {
    std::string ref = s["$ref"];
    return validate(v, schema()["$defs"][ref.substr(ref.rfind('/') + 1)], why, path);
  }
  if (s.contains("anyOf")) {
    for (const auto& alt : s["anyOf"]) {
      std::string ignored;
      if (validate(v, alt, ignored, path)) return true;
    }
    why = path + ": no anyOf branch matches";
    return false;
  }
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_matches(v, t);
    } else {
      ok = type_matches(v, s["type"]);
    }
    if (!ok) {
      why = path + ": wrong type " + v.dump();
      return false;
    }
  }
  if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end()) {
    why = path + ": " + v.dump() + " not in enum";
    return false;
  }
  if (v.is_object()) {
    const json required = s.value("required", json::array());
    const json properties = s.value("properties", json::object());
    for (const auto& r : required)
      if (!v.contains(r.get<std::string>())) {
        why = path + ": missing " + r.get<std::string>();
        return false;
      }
    for (const auto& [k, sub] : properties.items())
      if (v.contains(k) && !validate(v[k], sub, why, path + "." + k)) return false;
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!validate(v[i], s["items"], why, path + "[" + std::to_string(i) + "]")) return false;
  }
  return true;
}

json checked(const Result& r, const std::string& def) {
  REQUIRE_MESSAGE(r.status == 0, r.err);
  json j = json::parse(r.out);
  std::string why;
  CHECK_MESSAGE(validate(j, schema()["$defs"][def], why), why);
  return j;
}

}  // namespace

TEST_CASE("eval of the worked 1/5 representation") {
  Result r = run({"eval", "--field", "-3,2", "--rep", "1•(0,-1)ω"});
  CHECK(r.status == 0);
  CHECK(chomp(r.out) == "1/5");
  CHECK(chomp(run({"eval", "--field", "-3,2", "--rep", "1.(0,-1)^w"}).out) == "1/5");
  json j = checked(run({"eval", "--field", "-3,2", "--rep", "1•(0,-1)ω", "--json"}), "eval");
  CHECK(j["value"] == "1/5");
}

TEST_CASE("invert") {
  Result r = run({"invert", "--field", "-3,2", "--n", "5"});
  CHECK(r.status == 0);
  CHECK(chomp(r.out) == "not invertible in Z[beta,1/beta]");
  json j = checked(run({"invert", "--field", "-3,2", "--n", "12", "--json"}), "invert");
  CHECK(j["invertible"] == true);
  json n = checked(run({"invert", "--field", "-3,2", "--n", "7", "--json"}), "invert");
  CHECK(n["invertible"] == false);
  CHECK(n["inverse"].is_null());
}

TEST_CASE("classify reports") {
  json g = checked(run({"classify", "--field", "-1,-1,1"}), "classify");
  CHECK(g["label"] == "Pisot");
  CHECK(g["is_algebraic_integer"] == true);
  json s = checked(run({"classify", "--field", "-5,0,1", "--json"}), "classify");
  CHECK(s["weak_greedy_advisory"]["verdict"] == "impossible");
  CHECK(std::find(s["collapse_exponents"].begin(), s["collapse_exponents"].end(), 2) != s["collapse_exponents"].end());
  json c = checked(run({"classify", "--field", "2,2,1"}), "classify");
  CHECK(c["label"] == "ComplexPisot");
  json t = checked(run({"classify", "--field", "1,-1,-1,-1,1"}), "classify");
  CHECK(t["label"] == "Salem");
  CHECK(t["unit_circle_count"] == 2);

  setenv("PERBASE_PRECISION_BITS", "40", 1);
  json p = checked(run({"classify", "--field", "-1,-1,1"}), "classify");
  unsetenv("PERBASE_PRECISION_BITS");
  CHECK(p["label"] == "Pisot");
  CHECK(p["conjugates"].size() == 2);
}

TEST_CASE("represent then eval reproduces the input") {
  struct Case {
    std::string field, value;
    std::vector<std::string> extra;
  };
  std::vector<Case> cases = {
      {"-3,2", "1/5", {"--normalize"}},
      {"-3,2", "-7/12", {}},
      {"-3,2", "22/7", {"--normalize"}},
      {"-1,-1,1", "3/7", {}},
      {"-1,-1,1", "1/2;1/3", {"--selector", "greedy"}},
      {"-5,0,1", "1/3;1/4", {}},
      {"2,2,1", "1/3", {}},
  };
  for (const auto& cs : cases) {
    std::vector<std::string> args = {"represent", "--field", cs.field, "--value", cs.value};
    args.insert(args.end(), cs.extra.begin(), cs.extra.end());
    Result text = run(args);
    REQUIRE_MESSAGE(text.status == 0, text.err);
    Result back = run({"eval", "--field", cs.field, "--rep", chomp(text.out)});
    CHECK_MESSAGE(chomp(back.out) == cs.value, cs.field << " " << cs.value);

    args.push_back("--json");
    json j = checked(run(args), "rep_output");
    CHECK(j["text"] == chomp(text.out));
    CHECK(j["value"] == cs.value);
  }
}

TEST_CASE("represent trace dump") {
  json j = checked(run({"represent", "--field", "-3,2", "--value", "1/5", "--trace", "--json"}), "rep_output");
  CHECK(j["trace"]["s"] == 4);
  CHECK(j["trace"]["q"] == 5);
  Result t = run({"represent", "--field", "-3,2", "--value", "1/5", "--trace"});
  CHECK(t.out.find("s=4") != std::string::npos);
}

TEST_CASE("arithmetic subcommands") {
  Result a = run({"add", "--field", "-3,2", "--x", "2,1.", "--y", "1.(0,-1)^w", "--normalize", "--ascii"});
  REQUIRE(a.status == 0);
  Result v = run({"eval", "--field", "-3,2", "--rep", chomp(a.out)});
  Result x = run({"eval", "--field", "-3,2", "--rep", "2,1."});
  CHECK(chomp(x.out) == "4");
  CHECK(chomp(v.out) == "21/5");

  Result s = run({"add", "--field", "-3,2", "--x", "2,1.", "--y", "2,1.", "--sub"});
  CHECK(chomp(run({"eval", "--field", "-3,2", "--rep", chomp(s.out)}).out) == "0");

  Result m = run({"mul", "--field", "-3,2", "--terms", "4:1,2:-1,0:-2", "--rep", "0•(0,0,0,1)ω", "--normalize"});
  CHECK(chomp(m.out) == "1•(0,-1)ω");
  Result f = run({"mul", "--field", "-1,-1,1", "--terms", "1:1", "--terms2", "-1:1"});
  CHECK(chomp(f.out) == "1");
  checked(run({"mul", "--field", "-1,-1,1", "--terms", "1:1", "--terms2", "1:1", "--json"}), "laurent");
}

TEST_CASE("convert rows") {
  json j = checked(run({"convert", "--field", "-3,2", "--rep", "2,1,2.(0,1,0)^w", "--rows", "--json"}), "rows");
  CHECK(j["text"] == "2,1,-2,2•(0,1,0)ω");
  Result c = run({"convert", "--field", "-3,2", "--rep", "2,1,2.(0,1,0)^w"});
  CHECK(chomp(c.out) == "2,1,-2,2•(0,1,0)ω");
}

TEST_CASE("lift and orbit") {
  Result l = run({"lift", "--field", "-5,0,1", "--m", "2", "--rep", "2•(1)ω", "--rep", "1•"});
  REQUIRE(l.status == 0);
  CHECK(chomp(run({"eval", "--field", "-5,0,1", "--rep", chomp(l.out)}).out) == "9/4;1");

  json o = checked(run({"orbit", "--field", "-1,-1,1", "--value", "1/3", "--selector", "greedy", "--trace", "--json"}),
                   "rep_output");
  CHECK(o["trace"]["repeat"].size() == 2);
  Result h = run({"orbit", "--field", "2,2,1", "--value", "1/3", "--selector",
                  R"({"kind":"thurston","region":{"polygon":[[1,0],[1,1],[0,1],[-1,0],[-1,-1],[0,-1]]},"alphabet":[-1,0,1]})"});
  REQUIRE_MESSAGE(h.status == 0, h.err);
  CHECK(chomp(run({"eval", "--field", "2,2,1", "--rep", chomp(h.out)}).out) == "1/3");
}

TEST_CASE("bench") {
  Result r = run({"bench", "--field", "-3,2", "--qmax", "100", "--normalize"});
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "q,status,preperiod,period,alphabet_bound,time_ms");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",ok,") != std::string::npos);
    if (line.rfind("5,", 0) == 0) CHECK(line.rfind("5,ok,1,2,", 0) == 0);
  }
  CHECK(rows == 99);

  Result empty = run({"bench", "--field", "-3,2", "--qmin", "10", "--qmax", "9", "--json"});
  json e = checked(empty, "bench");
  CHECK(e["rows"].empty());

  json g = checked(run({"bench", "--field", "-1,-1,1", "--qmax", "50", "--selector", "greedy", "--json"}), "bench");
  CHECK(g["rows"].size() == 49);
  for (const auto& row : g["rows"]) CHECK(row["status"] == "ok");
}

TEST_CASE("errors") {
  Result p = run({"eval", "--field", "-3,2", "--rep", "garbage"});
  CHECK(p.status == 2);
  CHECK(p.err.find("ParseError") != std::string::npos);
  CHECK(run({"eval", "--field", "-3,2"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"eval", "--field", "1,x", "--rep", "1."}).status == 2);

  Result d = run({"represent", "--field", "1,-1,-1,-1,1", "--value", "1/3", "--json"});
  CHECK(d.status == 1);
  json e = json::parse(d.err);
  std::string why;
  CHECK_MESSAGE(validate(e, schema()["$defs"]["error"], why), why);
  CHECK(e["error"] == "HypothesisViolated");

  Result b = run({"orbit", "--field", "-3,2", "--value", "1/5", "--selector", "greedy", "--max-steps", "100"});
  CHECK(b.status == 1);
  CHECK(b.err.find("NoRepeatWithinBudget") != std::string::npos);
  Result r = run({"represent", "--field", "-1,-1,1", "--value", "1/3", "--normalize"});
  CHECK(r.status == 1);
  CHECK(r.err.find("InvalidArgument") != std::string::npos);
}
