#include "qcf/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "qcf/causality.hpp"
#include "qcf/error.hpp"
#include "qcf/hyper.hpp"
#include "qcf/syntax.hpp"
#include "qcf/universe.hpp"

namespace qcf {

namespace {

using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    out += line + "\n";
  }
  return out;
}

// A path to an existing file, or the formula itself.
Formula formula_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_plain_formula(without_comments(slurp(arg)));
  return parse_plain_formula(arg);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

ReportFormat format_of(const std::string& s) { return s == "json-lines" ? ReportFormat::JsonLines : ReportFormat::Plain; }

struct Common {
  std::string format = "plain";
  std::string minimal = "fo";
  std::size_t so_cap = kDefaultSecondOrderCap;
  std::size_t max_positions = 20;

  CfOptions options() const {
    CfOptions o;
    o.minimal = minimal == "so" ? MinimalMode::SecondOrder : MinimalMode::FirstOrder;
    o.second_order_cap = so_cap;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "plain or json-lines")->check(CLI::IsMember({"plain", "json-lines"}));
  cmd->add_option("--minimal", c.minimal, "fo (first-order blocks) or so (property enumeration)")
      ->check(CLI::IsMember({"fo", "so"}));
  cmd->add_option("--so-cap", c.so_cap, "ambient size limit for --minimal so");
  cmd->add_option("--max-positions", c.max_positions, "position cap for propositional quantifiers");
}

int emit_reports(const std::vector<Report>& reports, ReportFormat fmt, std::ostream& out) {
  bool all = true;
  for (const auto& r : reports) {
    out << report_format(r, fmt);
    all = all && r.verdict.value;
  }
  return all ? 0 : 1;
}

// Random preorders for the built-in property suites.
Preorder random_order(std::mt19937& rng, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b)
      if (a != b && rng() % 3 == 0) gens.emplace_back(a, b);
  return closure_preorder(gens, n, 0, MinimumPolicy::Least);
}

WorldSet random_set(std::mt19937& rng, std::size_t n) {
  WorldSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = rng() & 1U;
  return s;
}

}  // namespace

std::string report_format(const Report& r, ReportFormat format) {
  std::vector<std::size_t> ws = r.verdict.witnesses;
  std::sort(ws.begin(), ws.end());
  if (format == ReportFormat::JsonLines) {
    json bounds = json::object();
    for (const auto& [k, v] : r.bounds) bounds[k] = v;
    json j = {{"formula", r.formula},
              {"result", r.verdict.value ? "holds" : "fails"},
              {"bounded", r.verdict.bounded},
              {"bounds", bounds},
              {"witnesses", ws}};
    return j.dump() + "\n";
  }
  std::string out = std::string("RESULT ") + (r.verdict.value ? "holds" : "fails") +
                    " (bounded=" + (r.verdict.bounded ? "yes" : "no") + ")\n";
  for (auto w : ws) {
    out += "witness " + std::to_string(w);
    if (w < r.world_names.size()) out += " " + r.world_names[w];
    out += "\n";
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterfactual temporal logic: evaluation, causality and HyperQPTL emission", "qcf"};
  app.require_subcommand(1);

  Common common;

  // finite
  std::string file, ref;
  std::vector<std::string> formulas;
  auto* finite = app.add_subcommand("finite", "evaluate on an explicit finite universe");
  finite->add_option("--file", file, "universe file")->required();
  finite->add_option("--formula", formulas, "formula (repeatable)")->required();
  finite->add_option("--ref", ref, "reference world (must match the file)");
  add_common(finite, common);

  // eval
  std::string universe_arg, ref_trace, mutable_arg, loops_arg = "1", similarity_arg;
  std::size_t window = 1, max_prefix = 0;
  auto* eval = app.add_subcommand("eval", "evaluate on a bounded lasso universe");
  eval->add_option("--universe-formula", universe_arg, "LTL universe formula or a file holding it")->required();
  eval->add_option("--ref-trace", ref_trace, "reference lasso, e.g. {b,u}{m,d}|{b,u}{m,d}")->required();
  eval->add_option("--mutable", mutable_arg, "comma-separated mutable propositions")->required();
  eval->add_option("--window", window, "edit window length");
  eval->add_option("--max-prefix", max_prefix, "largest prefix length");
  eval->add_option("--loops", loops_arg, "comma-separated loop lengths");
  eval->add_option("--formula", formulas, "formula (repeatable)")->required();
  add_common(eval, common);

  // cause
  std::string sem_path, effect;
  auto* cause = app.add_subcommand("cause", "actual causes and the counterfactual encoding");
  cause->add_option("--sem", sem_path, "structural equation model")->required();
  cause->add_option("--effect", effect, "propositional effect")->required();
  add_common(cause, common);

  // emit
  std::string mode = "sat", out_path, emit_formula;
  bool flatten = false;
  auto* emit = app.add_subcommand("emit", "emit HyperQPTL for satisfiability or trace checking");
  emit->add_option("--mode", mode, "sat or trace-check")->check(CLI::IsMember({"sat", "trace-check"}));
  emit->add_option("--universe-formula", universe_arg, "LTL universe formula or a file holding it");
  emit->add_option("--formula", emit_formula, "formula to encode");
  emit->add_option("--ref-trace", ref_trace, "reference lasso (trace-check)");
  emit->add_option("--mutable", mutable_arg, "similarity: subset over these propositions");
  emit->add_option("--similarity", similarity_arg, "similarity: explicit relation over x_p1, x_p2, x_p3");
  emit->add_option("--sem", sem_path, "emit the cause encoding of a structural equation model");
  emit->add_option("--effect", effect, "effect for --sem");
  emit->add_option("--out", out_path, "write to a file instead of stdout");
  emit->add_flag("--flatten", flatten, "interleave independent quantifier blocks");

  // oracle
  std::string suite = "all";
  std::size_t count = 200, seed = 1;
  auto* oracle = app.add_subcommand("oracle", "run the built-in property suites");
  oracle->add_option("--suite", suite, "duality, fo-so or all")->check(CLI::IsMember({"duality", "fo-so", "all"}));
  oracle->add_option("--count", count, "random contexts per suite");
  oracle->add_option("--seed", seed, "random seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const ReportFormat fmt = format_of(common.format);
    EvalBounds eb;
    eb.max_positions = common.max_positions;

    if (finite->parsed()) {
      EvaluationContext ctx = load_finite_universe(slurp(file));
      if (!ref.empty() && ctx.name(ctx.reference()) != ref)
        throw Error("reference '" + ref + "' differs from the file's reference '" + ctx.name(ctx.reference()) + "'");
      std::vector<Report> reports;
      for (const auto& text : formulas) {
        CfFormula xi = parse_formula(text);
        reports.push_back({render_formula(xi), eval_top(ctx, xi, common.options()), {{"universe", "explicit"}},
                           ctx.names()});
      }
      return emit_reports(reports, fmt, out);
    }

    if (eval->parsed()) {
      UniverseSpec spec;
      spec.universe = formula_arg(universe_arg);
      spec.reference = parse_lasso(ref_trace);
      spec.mutable_props = split_list(mutable_arg);
      spec.window = window;
      spec.shapes.max_prefix = max_prefix;
      for (const auto& l : split_list(loops_arg)) spec.shapes.loops.push_back(std::stoul(l));
      spec.eval = eb;
      EvaluationContext ctx = build_context(spec);
      std::vector<std::pair<std::string, std::string>> bounds = {
          {"policy", eb.policy},
          {"window", std::to_string(window)},
          {"max_prefix", std::to_string(max_prefix)},
          {"loops", loops_arg},
          {"max_positions", std::to_string(eb.max_positions)},
          {"worlds", std::to_string(ctx.size())}};
      std::vector<Report> reports;
      for (const auto& text : formulas) {
        CfFormula xi = parse_formula(text);
        CfVerdict v = eval_top(ctx, xi, common.options());
        // Conditionals range over an enumerated, window-limited universe.
        v.bounded = v.bounded || xi.has_conditional();
        reports.push_back({render_formula(xi), v, bounds, ctx.names()});
      }
      return emit_reports(reports, fmt, out);
    }

    if (cause->parsed()) {
      Sem m = parse_sem(slurp(sem_path));
      CauseCheck c = check_cause_encoding(m, parse_plain_formula(effect));
      std::vector<std::string> causes;
      for (const auto& t : c.causes) causes.push_back(render_term(t));
      if (fmt == ReportFormat::JsonLines) {
        json j = {{"effect", effect},
                  {"effect_holds", c.effect_holds},
                  {"causes", causes},
                  {"phi_x", render_formula(c.phi_x)},
                  {"not_phi_x", render_formula(c.not_phi_x)},
                  {"blake_form", c.blake_form},
                  {"encoding", render_formula(c.encoding)},
                  {"encoding_holds", c.encoding_holds},
                  {"agree", c.agree},
                  {"effect_without_causes", c.effect_without_causes},
                  {"worlds", c.worlds}};
        out << j.dump() << "\n";
      } else {
        std::string joined;
        for (const auto& s : causes) joined += (joined.empty() ? "" : "; ") + s;
        out << "causes: " << (causes.empty() ? "(none)" : joined) << "\n";
        out << "phi_X: " << render_formula(c.phi_x) << "\n";
        out << "encoding: " << render_formula(c.encoding) << "\n";
        out << "encoding " << (c.encoding_holds ? "holds" : "fails") << " over " << c.worlds << " worlds\n";
        out << "blake form: " << (c.blake_form ? "yes" : "no") << "\n";
        if (c.effect_without_causes) out << "note: the effect holds but has no cause\n";
        out << "agree=" << (c.agree ? "true" : "false") << "\n";
      }
      return c.agree ? 0 : 1;
    }

    if (emit->parsed()) {
      CfFormula xi;
      Formula universe;
      SimilaritySpec sim;
      std::optional<LassoTrace> reference;
      if (!sem_path.empty()) {
        if (effect.empty()) throw Error("--sem needs --effect");
        Sem m = parse_sem(slurp(sem_path));
        CauseCheck c = check_cause_encoding(m, parse_plain_formula(effect));
        CausalUniverse cu = counterfactual_universe(m);
        xi = c.encoding;
        universe = conj(cu.universe, cu.disjointness);
        sim = SimilaritySpec::subset(cu.interventions);
        reference = cu.reference;
      } else {
        if (universe_arg.empty() || emit_formula.empty()) throw Error("emit needs --universe-formula and --formula");
        xi = parse_formula(emit_formula);
        universe = formula_arg(universe_arg);
        if (similarity_arg.empty() && mutable_arg.empty()) throw Error("emit needs --mutable or --similarity");
        if (!similarity_arg.empty())
          sim = SimilaritySpec::explicit_qptl(parse_plain_formula(similarity_arg));
        else
          sim = SimilaritySpec::subset(split_list(mutable_arg));
        if (!ref_trace.empty()) reference = parse_lasso(ref_trace);
      }
      EmitOptions eo;
      eo.flatten = flatten;
      HyperFormula h;
      if (mode == "trace-check") {
        if (!reference) throw Error("trace-check needs --ref-trace");
        h = emit_trace_check(*reference, xi, sim, universe, eo);
      } else {
        h = emit_sat(xi, sim, universe, eo);
      }
      const std::string text = render_hyper(h);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write '" + out_path + "'");
        f << text;
      }
      return 0;
    }

    if (oracle->parsed()) {
      std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
      std::size_t checks = 0, failures = 0;
      if (suite == "duality" || suite == "all") {
        for (std::size_t k = 0; k < count; ++k) {
          const std::size_t n = 2 + rng() % 7;
          Preorder order = random_order(rng, n);
          Frame fr{&order, WorldSet(n).set()};
          WorldSet phi = random_set(rng, n), psi = random_set(rng, n);
          ++checks;
          if (would(fr, phi, psi).value == might(fr, phi, ~psi).value ||
              uwould(fr, phi, psi).value == emight(fr, phi, ~psi).value)
            ++failures;
        }
      }
      if (suite == "fo-so" || suite == "all") {
        for (std::size_t k = 0; k < count; ++k) {
          const std::size_t n = 1 + rng() % 5;
          Preorder order = random_order(rng, n);
          Frame fr{&order, WorldSet(n).set()};
          for (std::uint64_t a = 0; a < (1U << n); ++a)
            for (std::uint64_t b = 0; b < (1U << n); ++b)
              for (CfOp op : {CfOp::WouldMin, CfOp::MightMin, CfOp::UWouldMin, CfOp::EMightMin}) {
                ++checks;
                if (minimal_fo(op, fr, WorldSet(n, a), WorldSet(n, b)).value !=
                    minimal_so(op, fr, WorldSet(n, a), WorldSet(n, b)).value)
                  ++failures;
              }
        }
      }
      out << "checks " << checks << " failures " << failures << "\n";
      out << "RESULT " << (failures == 0 ? "holds" : "fails") << " (bounded=no)\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace qcf
