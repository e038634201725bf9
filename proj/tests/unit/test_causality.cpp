#include <doctest.h>

#include <random>

#include "../support/files.hpp"
#include "../support/sems.hpp"
#include "qcf/causality.hpp"
#include "qcf/error.hpp"
#include "qcf/syntax.hpp"
#include "qcf/universe.hpp"

using namespace qcf;
using namespace qcf::testing;

namespace {

std::string causes_text(const CauseSet& cs) {
  std::string out;
  for (const auto& t : cs) out += (out.empty() ? "" : "; ") + render_term(t);
  return out;
}

// The context check_cause_encoding evaluates in.
EvaluationContext intervention_context(const Sem& m) {
  const CausalUniverse cu = counterfactual_universe(m);
  UniverseSpec spec;
  spec.universe = conj(cu.universe, cu.disjointness);
  spec.reference = cu.reference;
  spec.mutable_props = cu.interventions;
  spec.window = 1;
  spec.shapes = {1, {1}};
  spec.require_unique_minimum = false;
  return build_context(spec);
}

}  // namespace

TEST_CASE("sem files and evaluation") {
  const Sem fire = parse_sem(data_file("fire.sem"));
  CHECK(fire.variables == std::vector<std::string>{"f", "l", "m"});
  CHECK(topological_order(fire) == std::vector<std::string>{"l", "m", "f"});
  const Assignment v = evaluate_sem(fire);
  CHECK(v.at("f"));
  CHECK_FALSE(v.at("l"));
  CHECK(v.at("m"));
  CHECK_FALSE(intervene_evaluate(fire, {{"m", false}}, {}).at("f"));
  CHECK(intervene_evaluate(fire, {}, {}) == v);
  CHECK(intervene_evaluate(fire, {{"m", true}}, {}) == v);
  CHECK_THROWS_AS(intervene_evaluate(fire, {{"m", false}}, {{"m", true}}), Error);
  CHECK_THROWS_AS(intervene_evaluate(fire, {{"zz", false}}, {}), Error);

  const Sem chain = parse_sem("var x := exo e\nvar y := x\ncontext e=1\n");
  CHECK(evaluate_sem(chain) == Assignment{{"x", true}, {"y", true}});
  CHECK(evaluate_sem(parse_sem("")).empty());

  CHECK_THROWS_AS(parse_sem("var x := y\nvar y := x\n"), ModelError);
  CHECK_THROWS_AS(parse_sem("var x := exo e\ncontext e=2\n"), Error);
  CHECK_THROWS_AS(parse_sem("var x := q\n"), Error);
  CHECK_THROWS_AS(parse_sem("bogus line\n"), SyntaxError);
}

TEST_CASE("forest fire causes") {
  const Sem fire = parse_sem(data_file("fire.sem"));
  CHECK(causes_text(halpern_causes(fire, atom("f"))) == "f; m");
  CHECK(halpern_causes(fire, atom("l")).empty());
  const Sem conj_fire = parse_sem(data_file("fire_conj.sem"));
  CHECK(causes_text(halpern_causes(conj_fire, atom("f"))) == "f; l; m");
  CHECK(cause_vars(halpern_causes(conj_fire, atom("f"))) == sem_oracle::causes(conj_fire, atom("f")));
  CHECK_THROWS_AS(halpern_causes(fire, atom("f"), 2), CapExceeded);
}

TEST_CASE("universe of the fire model") {
  const Sem fire = parse_sem(data_file("fire.sem"));
  const CausalUniverse cu = counterfactual_universe(fire);
  CHECK(render_formula(cu.universe) ==
        "(l <-> i_l & !c_l) & (m <-> !i_m | c_m) & (f <-> (l | m) & !i_f | c_f) & "
        "X G (!l & !i_l & !c_l & (!m & !i_m & !c_m) & (!f & !i_f & !c_f))");
  CHECK(render_lasso(cu.reference) == "{f,m}|{}");
  CHECK(eval_ltl_at(cu.reference, cu.universe));
  CHECK(cu.interventions == std::vector<std::string>{"i_l", "i_m", "i_f"});

  const Sem single = parse_sem("var x := exo e\ncontext e=0\n");
  CHECK(render_formula(counterfactual_universe(single).universe) ==
        "(x <-> i_x & !c_x) & X G (!x & !i_x & !c_x)");
}

TEST_CASE("encoding agreement on the fire models") {
  const CauseCheck fire = check_cause_encoding(parse_sem(data_file("fire.sem")), atom("f"));
  CHECK(fire.agree);
  CHECK(fire.encoding_holds);
  CHECK(fire.blake_form);
  CHECK(fire.worlds == 27);
  CHECK(render_formula(fire.encoding) == "f & m & f & (!f | !m mightmin !f)");

  const CauseCheck conj_fire = check_cause_encoding(parse_sem(data_file("fire_conj.sem")), atom("f"));
  CHECK(conj_fire.agree);
  CHECK(conj_fire.encoding_holds);

  const CauseCheck absent = check_cause_encoding(parse_sem(data_file("fire.sem")), atom("l"));
  CHECK_FALSE(absent.effect_holds);
  CHECK_FALSE(absent.encoding_holds);
  CHECK(absent.agree);
}

TEST_CASE("halpern causes match the fixpoint oracle on random models") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const Sem m = random_sem(rng, 4);
    const Formula effect = random_boolean(rng, m.variables, 2);
    CAPTURE(render_formula(effect));
    const CauseSet cs = halpern_causes(m, effect);
    CHECK(cause_vars(cs) == sem_oracle::causes(m, effect));
    const Assignment actual = evaluate_sem(m);
    for (const auto& t : cs)
      for (const auto& l : t) CHECK(l.positive == actual.at(l.var));
  }
}

TEST_CASE("all-flip interventions witness every cause") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 150; ++i) {
    const Sem m = random_sem(rng, 4);
    const Formula effect = random_boolean(rng, m.variables, 2);
    const Assignment actual = evaluate_sem(m);
    for (const auto& cause : halpern_causes(m, effect)) {
      Assignment x;
      for (const auto& l : cause) x[l.var] = !actual.at(l.var);
      std::vector<std::string> rest;
      for (const auto& v : m.variables)
        if (!x.count(v)) rest.push_back(v);
      bool witnessed = false;
      for (std::uint32_t ws = 0; ws < (1U << rest.size()) && !witnessed; ++ws) {
        Assignment w;
        for (std::size_t k = 0; k < rest.size(); ++k)
          if ((ws >> k) & 1U) w[rest[k]] = actual.at(rest[k]);
        witnessed = !eval_propositional(effect, intervene_evaluate(m, x, w));
      }
      CHECK(witnessed);

      // Dropping any literal loses every witness.
      for (std::size_t drop = 0; drop < cause.size() && cause.size() > 1; ++drop) {
        Term smaller = cause;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
        CHECK(cause_vars({smaller}).size() == 1);
        CHECK_FALSE(sem_oracle::causes(m, effect).count(*cause_vars({smaller}).begin()));
      }
    }
  }
}

TEST_CASE("intervention worlds are the all-flip evaluations") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 60; ++i) {
    const Sem m = random_sem(rng, 3);
    const EvaluationContext ctx = intervention_context(m);
    const Assignment actual = evaluate_sem(m);
    std::size_t expected = 1;
    for (std::size_t k = 0; k < m.variables.size(); ++k) expected *= 3;
    CHECK(ctx.size() == expected);
    for (std::size_t w = 0; w < ctx.size(); ++w) {
      const LassoTrace& t = ctx.world(w);
      const Alphabet& ab = t.alphabet();
      auto on = [&](const std::string& p) {
        auto idx = ab.index(p);
        return idx && t.holds(*idx, 0);
      };
      Assignment x, fixed;
      for (const auto& v : m.variables) {
        if (on("i_" + v)) x[v] = !actual.at(v);
        if (on("c_" + v)) fixed[v] = actual.at(v);
      }
      const Assignment want = intervene_evaluate(m, x, fixed);
      for (const auto& v : m.variables) CHECK(on(v) == want.at(v));
    }
  }
}

TEST_CASE("encoding agreement on random models") {
  // Known disagreements exist; this pins the agreement rate and the
  // smallest counterexample found.
  std::mt19937_64 rng(53);
  int agree = 0;
  const int total = 200;
  for (int i = 0; i < total; ++i) {
    const Sem m = random_sem(rng, 4);
    agree += check_cause_encoding(m, random_boolean(rng, m.variables, 2)).agree;
  }
  CHECK(agree >= total * 9 / 10);

  const Sem m = parse_sem("var a := exo u_a\nvar b := a\ncontext u_a=0\n");
  const CauseCheck r = check_cause_encoding(m, parse_plain_formula("a | !b"));
  CHECK(causes_text(r.causes) == "!b");
  CHECK(r.effect_holds);
  CHECK_FALSE(r.encoding_holds);
  CHECK_FALSE(r.agree);
}

TEST_CASE("lewis and coenen formulas") {
  const CfFormula lewis = lewis_formula("c", "e");
  CHECK(conjuncts(lewis).size() == 3);
  CHECK(free_atoms(lewis) == std::set<std::string>{"c", "e"});
  CHECK(parse_formula(render_formula(lewis)) == canonical(lewis));
  CHECK(render_formula(lewis) == "(F c & F e -> !e U c) & (F c uwould F e) & (!F c uwould !F e)");
  CHECK_THROWS_AS(lewis_formula("c", "c"), Error);

  const CfFormula coenen = coenen_formula(atom("a"), atom("b"));
  CHECK(conditionals(coenen).size() == 2);
  CHECK(conditionals(coenen)[0].op() == CfOp::UWouldMin);
  CHECK(conditionals(coenen)[1].op() == CfOp::MightMin);
  CHECK(parse_formula(render_formula(coenen)) == canonical(coenen));
}
