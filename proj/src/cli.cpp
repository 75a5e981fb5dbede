#include "perbase/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "perbase/error.hpp"
#include "perbase/json_io.hpp"
#include "perbase/parallel.hpp"

namespace perbase::cli {

namespace {

struct Common {
  std::string field;
  std::string root;
  bool json = false;
  bool ascii = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--field", c.field, "minimal polynomial coefficients a0,a1,...,ad")->required();
  sub->add_option("--root", c.root, "approximate root re,im selecting the base");
  sub->add_flag("--json", c.json, "emit JSON");
  sub->add_flag("--ascii", c.ascii, "print representations with . and ^w");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

/// Inline JSON, a bare kind name, or a path to a JSON file.
DigitSelector selector_arg(const Field& field, const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return selector_from_json(field, parse_json_text(arg));
  if (arg == "greedy" || arg == "balanced" || arg == "itosadahiro" || arg == "thurston")
    return selector_from_json(field, Json{{"kind", arg}});
  return selector_from_json(field, parse_json_text(read_file(arg)));
}

ConversionRule rule_arg(const Field& field, const std::string& path) {
  if (path.empty()) return builtin_rule_32(field);
  return rule_from_json(field, read_file(path));
}

BigRational classify_eps() {
  const char* bits = std::getenv("PERBASE_PRECISION_BITS");
  if (!bits) return BigRational(1, 100);
  long b = std::strtol(bits, nullptr, 10);
  if (b <= 0 || b > 4096) fail(ErrorCode::ParseError, "PERBASE_PRECISION_BITS must be in 1..4096");
  BigInt den = 1;
  den <<= static_cast<mp_bitcnt_t>(b);
  return BigRational(BigInt(1), den);
}

void print_rep(std::ostream& out, const Common& c, const Representation& rep) {
  if (c.json)
    out << Json{{"rep", rep_json(rep)}, {"text", format_rep(rep, c.ascii)}}.dump() << "\n";
  else
    out << format_rep(rep, c.ascii) << "\n";
}

void print_trace_text(std::ostream& out, const PipelineTrace& t) {
  out << "q=" << to_string(t.q) << " r=" << to_string(t.r) << " qbar=" << to_string(t.qbar) << " k=" << t.k
      << " m=" << t.cycle.m << " l=" << t.cycle.l << " s=" << t.s << " z=" << (t.z.field() ? t.z.to_string() : "-")
      << "\n";
}

int report(std::ostream& err, bool json, std::string_view name, const std::string& message) {
  if (json)
    err << Json{{"error", std::string(name)}, {"message", message}}.dump() << "\n";
  else
    err << "error: " << name << ": " << message << "\n";
  return name == error_name(ErrorCode::ParseError) ? 2 : 1;
}

struct BenchRow {
  long q;
  std::string status;
  std::size_t preperiod = 0, period = 0;
  BigInt bound = 0;
  double ms = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eventually periodic representations in algebraic bases"};
  app.name("perbase");
  app.require_subcommand(1);
  Common c;

  auto* classify = app.add_subcommand("classify", "classify the base");
  add_common(classify, c);

  std::string value, rep_text, rule_path, selector_text;
  bool use_normalizer = false, want_trace = false, want_rows = false, subtract = false;
  long max_steps = kDefaultMaxSteps;

  auto* represent = app.add_subcommand("represent", "eventually periodic representation of a field element");
  add_common(represent, c);
  represent->add_option("--value", value, "p/q or c0;c1;...")->required();
  represent->add_flag("--normalize", use_normalizer, "normalize digits with the conversion rule");
  represent->add_option("--rule", rule_path, "conversion rule JSON file (default: built-in base 3/2)");
  represent->add_option("--selector", selector_text, "digit selector JSON, kind name or file");
  represent->add_flag("--trace", want_trace, "dump the pipeline trace");

  auto* eval = app.add_subcommand("eval", "evaluate a representation");
  add_common(eval, c);
  eval->add_option("--rep", rep_text, "representation")->required();

  std::string x_text, y_text;
  auto* add = app.add_subcommand("add", "add two representations");
  add_common(add, c);
  add->add_option("--x", x_text)->required();
  add->add_option("--y", y_text)->required();
  add->add_flag("--sub", subtract, "compute x - y");
  add->add_flag("--normalize", use_normalizer);
  add->add_option("--rule", rule_path);

  std::string terms_text, terms2_text;
  auto* mul = app.add_subcommand("mul", "multiply a Laurent element by a representation or Laurent element");
  add_common(mul, c);
  mul->add_option("--terms", terms_text, "exponent:coefficient,...")->required();
  auto* mul_rep = mul->add_option("--rep", rep_text);
  auto* mul_terms2 = mul->add_option("--terms2", terms2_text);
  mul_rep->excludes(mul_terms2);
  mul->add_flag("--normalize", use_normalizer);
  mul->add_option("--rule", rule_path);

  auto* convert = app.add_subcommand("convert", "apply a conversion rule");
  add_common(convert, c);
  convert->add_option("--rep", rep_text)->required();
  convert->add_option("--rule", rule_path);
  convert->add_flag("--rows", want_rows, "print the carry table (built-in rule)");

  std::string n_text;
  auto* invert = app.add_subcommand("invert", "finite inverse of an integer");
  add_common(invert, c);
  invert->add_option("--n", n_text)->required();

  unsigned m = 1;
  std::vector<std::string> components;
  auto* lift = app.add_subcommand("lift", "combine representations in base beta^m");
  add_common(lift, c);
  lift->add_option("--m", m)->required();
  lift->add_option("--rep", components, "component representation (repeatable)")->required();

  auto* orbit = app.add_subcommand("orbit", "periodize the digit orbit");
  add_common(orbit, c);
  orbit->add_option("--value", value)->required();
  orbit->add_option("--selector", selector_text)->required();
  orbit->add_option("--max-steps", max_steps);
  orbit->add_flag("--trace", want_trace);

  long qmin = 2, qmax = 1;
  std::string format = "csv";
  auto* bench = app.add_subcommand("bench", "represent 1/q over a range of q");
  add_common(bench, c);
  bench->add_option("--qmin", qmin);
  bench->add_option("--qmax", qmax)->required();
  bench->add_flag("--normalize", use_normalizer);
  bench->add_option("--rule", rule_path);
  bench->add_option("--selector", selector_text);
  bench->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(err, false, error_name(ErrorCode::ParseError), e.what());
  }

  try {
    Field field = parse_field(c.field, c.root);

    if (classify->parsed()) {
      BaseClassification cls = classify_base(field, classify_eps());
      Json j = classification_json(cls, weak_greedy_advisory(field));
      out << (c.json ? j.dump() : j.dump(2)) << "\n";
      return 0;
    }

    if (represent->parsed()) {
      FieldElement x = parse_element(field, value);
      std::optional<ConversionRule> rule;
      std::optional<DigitSelector> sel;
      if (use_normalizer) rule = rule_arg(field, rule_path);
      if (!selector_text.empty()) sel = selector_arg(field, selector_text);
      RepresentOptions opt;
      opt.normalizer = rule ? &*rule : nullptr;
      opt.selector = sel ? &*sel : nullptr;
      PipelineTrace trace;
      Representation rep = represent_field_element(x, opt, want_trace ? &trace : nullptr);
      if (c.json) {
        Json j{{"value", x.to_string()}, {"rep", rep_json(rep)}, {"text", format_rep(rep, c.ascii)}};
        if (want_trace) j["trace"] = trace_json(trace);
        out << j.dump() << "\n";
      } else {
        out << format_rep(rep, c.ascii) << "\n";
        if (want_trace) print_trace_text(out, trace);
      }
      return 0;
    }

    if (eval->parsed()) {
      FieldElement v = eval_rep(field, parse_rep(rep_text));
      if (c.json)
        out << Json{{"value", v.to_string()}, {"coords", element_json(v)["coords"]}}.dump() << "\n";
      else
        out << v.to_string() << "\n";
      return 0;
    }

    if (add->parsed()) {
      std::optional<ConversionRule> rule;
      if (use_normalizer) rule = rule_arg(field, rule_path);
      Representation x = parse_rep(x_text), y = parse_rep(y_text);
      Representation r = subtract ? per_sub(field, x, y, rule ? &*rule : nullptr)
                                  : per_add(field, x, y, rule ? &*rule : nullptr);
      print_rep(out, c, r);
      return 0;
    }

    if (mul->parsed()) {
      LaurentIntElement z = parse_laurent(field, terms_text);
      if (!terms2_text.empty()) {
        LaurentIntElement w = fin_mul(z, parse_laurent(field, terms2_text));
        if (c.json)
          out << laurent_json(w).dump() << "\n";
        else
          out << w.to_string() << "\n";
        return 0;
      }
      if (rep_text.empty()) fail(ErrorCode::ParseError, "mul needs --rep or --terms2");
      std::optional<ConversionRule> rule;
      if (use_normalizer) rule = rule_arg(field, rule_path);
      print_rep(out, c, fin_times_per(z, parse_rep(rep_text), rule ? &*rule : nullptr));
      return 0;
    }

    if (convert->parsed()) {
      Representation a = parse_rep(rep_text);
      if (want_rows) {
        if (!is_base_32(field)) fail(ErrorCode::InvalidArgument, "--rows needs base 3/2");
        Representation b = convert_32(field, a);
        long bottom = std::min(a.L - static_cast<long>(a.preperiod.size() + 2 * std::max<std::size_t>(a.period.size(), 1)),
                               b.L - static_cast<long>(b.preperiod.size() + b.period.size()));
        Convert32Rows rows = convert_32_rows(a, a.L + 2, bottom);
        Json j{{"top", rows.top}, {"bottom", rows.bottom}, {"a", rows.a}, {"q", rows.q},
               {"c", rows.c}, {"p", rows.p}, {"b", rows.b}, {"rep", rep_json(b)},
               {"text", format_rep(b, c.ascii)}};
        if (c.json) {
          out << j.dump() << "\n";
        } else {
          out << "powers " << rows.top << ".." << rows.bottom << "\n";
          for (const char* k : {"a", "q", "c", "p", "b"}) {
            out << k << ":";
            for (const auto& d : j[k]) out << " " << d.dump();
            out << "\n";
          }
          out << format_rep(b, c.ascii) << "\n";
        }
        return 0;
      }
      ConversionRule rule = rule_arg(field, rule_path);
      print_rep(out, c, apply_rule(rule, a));
      return 0;
    }

    if (invert->parsed()) {
      BigInt n = parse_integer(n_text);
      std::optional<LaurentIntElement> inv = invert_integer_thm_finite(field, n);
      if (c.json) {
        out << Json{{"invertible", inv.has_value()}, {"inverse", inv ? laurent_json(*inv) : Json(nullptr)}}.dump()
            << "\n";
      } else if (inv) {
        out << inv->to_string() << "\n";
      } else {
        out << "not invertible in Z[beta,1/beta]\n";
      }
      return 0;
    }

    if (lift->parsed()) {
      std::vector<Representation> reps;
      for (const auto& t : components) reps.push_back(parse_rep(t));
      print_rep(out, c, lift_rep_from_power_base(field, m, reps));
      return 0;
    }

    if (orbit->parsed()) {
      DigitSelector sel = selector_arg(field, selector_text);
      FieldElement x = parse_element(field, value);
      OrbitTrace trace;
      Representation rep = orbit_periodize(sel, x, max_steps, want_trace ? &trace : nullptr);
      if (c.json) {
        Json j{{"value", x.to_string()}, {"rep", rep_json(rep)}, {"text", format_rep(rep, c.ascii)}};
        if (want_trace) j["trace"] = orbit_trace_json(sel, trace);
        out << j.dump() << "\n";
      } else {
        out << format_rep(rep, c.ascii) << "\n";
        if (want_trace) {
          out << "n_scale=" << trace.n_scale << "\n";
          for (const auto& st : trace.steps)
            out << "T=" << st.remainder.to_string() << " digit=" << sel.digits[st.digit].to_string()
                << (st.ambiguous ? " ambiguous" : "") << "\n";
          if (trace.repeat) out << "repeat=" << trace.repeat->first << "," << trace.repeat->second << "\n";
        }
      }
      return 0;
    }

    if (bench->parsed()) {
      std::optional<ConversionRule> rule;
      std::optional<DigitSelector> sel;
      if (use_normalizer) rule = rule_arg(field, rule_path);
      if (!selector_text.empty()) sel = selector_arg(field, selector_text);
      BaseClassification cls = classify_base(field);
      RepresentOptions opt;
      opt.normalizer = rule ? &*rule : nullptr;
      opt.selector = sel ? &*sel : nullptr;
      opt.classification = &cls;
      std::vector<BenchRow> rows;
      for (long q = qmin; q <= qmax; ++q) {
        BenchRow row{q, "ok"};
        auto t0 = std::chrono::steady_clock::now();
        try {
          FieldElement x = FieldElement::from_rational(field, BigRational(1, q));
          Representation rep = represent_field_element(x, opt);
          if (eval_rep(field, rep) != x) fail(ErrorCode::ValueNotPreserved, "bench post-check");
          row.preperiod = rep.preperiod.size();
          row.period = rep.period.size();
          row.bound = rep.alphabet_bound();
        } catch (const Error& e) {
          row.status = std::string(e.name());
        }
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(row);
      }
      if (c.json || format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows)
          arr.push_back(Json{{"q", r.q}, {"status", r.status}, {"preperiod", r.preperiod}, {"period", r.period},
                             {"alphabet_bound", integer_json(r.bound)}, {"time_ms", r.ms}});
        out << Json{{"field", c.field}, {"rows", arr}}.dump() << "\n";
      } else {
        out << "q,status,preperiod,period,alphabet_bound,time_ms\n";
        for (const auto& r : rows)
          out << r.q << "," << r.status << "," << r.preperiod << "," << r.period << "," << to_string(r.bound) << ","
              << r.ms << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    return report(err, c.json, e.name(), e.what());
  }
  return 2;
}

}  // namespace perbase::cli
