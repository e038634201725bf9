#include "qcf/causality.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qcf/cf_eval.hpp"
#include "qcf/error.hpp"
#include "qcf/syntax.hpp"
#include "qcf/universe.hpp"

namespace qcf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

Sem parse_sem(std::string_view text) {
  Sem m;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  bool have_context = false;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.substr(0, 4) == "var ") {
      auto def = line.find(":=");
      if (def == std::string_view::npos) throw SyntaxError("expected ':=' in variable definition", line_no, 1);
      const std::string name(trim(line.substr(4, def - 4)));
      if (!is_valid_atom_name(name)) throw SyntaxError("invalid variable name '" + name + "'", line_no, 5);
      if (m.equations.count(name)) throw SyntaxError("variable '" + name + "' defined twice", line_no, 5);
      std::string_view rhs = trim(line.substr(def + 2));
      Formula eq;
      if (rhs.substr(0, 4) == "exo ") {
        const std::string u(trim(rhs.substr(4)));
        if (!is_valid_atom_name(u)) throw SyntaxError("invalid exogenous name '" + u + "'", line_no, 1);
        if (!contains(m.exogenous, u)) m.exogenous.push_back(u);
        eq = atom(u);
      } else {
        try {
          eq = parse_plain_formula(rhs);
        } catch (const SyntaxError& e) {
          throw SyntaxError(std::string("in equation of '") + name + "': " + e.what(), line_no, 1);
        }
        if (!is_propositional(eq) || !quantifier_free(eq))
          throw SyntaxError("equation of '" + name + "' is not propositional", line_no, 1);
      }
      m.variables.push_back(name);
      m.equations.emplace(name, eq);
    } else if (line.substr(0, 8) == "context ") {
      have_context = true;
      std::istringstream words{std::string(line.substr(8))};
      for (std::string w; words >> w;) {
        auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0) throw SyntaxError("expected 'name=0|1', found '" + w + "'", line_no, 1);
        const std::string value = w.substr(eq + 1);
        if (value != "0" && value != "1")
          throw SyntaxError("non-binary value '" + value + "' for '" + w.substr(0, eq) + "'", line_no, 1);
        m.context[w.substr(0, eq)] = value == "1";
      }
    } else {
      throw SyntaxError("expected 'var' or 'context'", line_no, 1);
    }
  }
  if (!have_context && !m.exogenous.empty()) throw ModelError("missing context line");
  // Names an equation uses that are not endogenous are exogenous.
  for (const auto& v : m.variables)
    for (const auto& a : free_atoms(m.equations.at(v)))
      if (!m.equations.count(a) && !contains(m.exogenous, a)) m.exogenous.push_back(a);
  for (const auto& u : m.exogenous) {
    if (m.equations.count(u)) throw ModelError("'" + u + "' is both endogenous and exogenous");
    if (!m.context.count(u)) throw ModelError("no context value for exogenous '" + u + "'");
  }
  for (const auto& [u, value] : m.context)
    if (!contains(m.exogenous, u)) throw ModelError("context assigns unknown exogenous '" + u + "'");
  topological_order(m);
  return m;
}

std::vector<std::string> topological_order(const Sem& m) {
  const std::size_t n = m.variables.size();
  std::vector<std::vector<std::size_t>> deps(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& a : free_atoms(m.equations.at(m.variables[i]))) {
      auto it = std::find(m.variables.begin(), m.variables.end(), a);
      if (it != m.variables.end()) deps[i].push_back(static_cast<std::size_t>(it - m.variables.begin()));
    }
  std::vector<bool> done(n, false);
  std::vector<std::string> order;
  while (order.size() < n) {
    bool progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t d) { return done[d]; })) {
        done[i] = true;
        order.push_back(m.variables[i]);
        progressed = true;
        break;
      }
    }
    if (!progressed) throw ModelError("structural equations have a cyclic dependency");
  }
  return order;
}

Assignment intervene_evaluate(const Sem& m, const Assignment& x, const Assignment& w) {
  for (const auto* part : {&x, &w})
    for (const auto& [v, value] : *part)
      if (!m.equations.count(v)) throw Error("unknown variable '" + v + "' in intervention");
  for (const auto& [v, value] : x)
    if (w.count(v)) throw Error("variable '" + v + "' is both intervened on and held fixed");
  Assignment values = m.context;
  for (const auto& v : topological_order(m)) {
    if (auto it = x.find(v); it != x.end())
      values[v] = it->second;
    else if (auto jt = w.find(v); jt != w.end())
      values[v] = jt->second;
    else
      values[v] = eval_propositional(m.equations.at(v), values);
  }
  for (const auto& u : m.exogenous) values.erase(u);
  return values;
}

Assignment evaluate_sem(const Sem& m) { return intervene_evaluate(m, {}, {}); }

namespace {

void check_effect(const Sem& m, const Formula& effect) {
  if (!is_propositional(effect) || !quantifier_free(effect)) throw Error("effect must be propositional");
  for (const auto& a : free_atoms(effect))
    if (!m.equations.count(a)) throw Error("effect mentions '" + a + "', which is not an endogenous variable");
}

}  // namespace

CauseSet halpern_causes(const Sem& m, const Formula& effect, std::size_t cap) {
  check_effect(m, effect);
  const auto& vars = m.variables;
  const std::size_t n = vars.size();
  if (n > cap)
    throw CapExceeded("cause search over " + std::to_string(n) + " variables exceeds the cap of " +
                      std::to_string(cap));
  const Assignment actual = evaluate_sem(m);
  if (!eval_propositional(effect, actual)) return {};

  auto ac2 = [&](std::uint32_t xs) {
    std::vector<std::size_t> xi, rest;
    for (std::size_t i = 0; i < n; ++i) ((xs >> i) & 1U ? xi : rest).push_back(i);
    for (std::uint32_t flip = 0; flip < (1U << xi.size()); ++flip) {
      Assignment x;
      for (std::size_t k = 0; k < xi.size(); ++k) x[vars[xi[k]]] = (flip >> k) & 1U;
      for (std::uint32_t ws = 0; ws < (1U << rest.size()); ++ws) {
        Assignment w;
        for (std::size_t k = 0; k < rest.size(); ++k)
          if ((ws >> k) & 1U) w[vars[rest[k]]] = actual.at(vars[rest[k]]);
        if (!eval_propositional(effect, intervene_evaluate(m, x, w))) return true;
      }
    }
    return false;
  };

  std::vector<std::uint32_t> sets(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < sets.size(); ++s) sets[s] = s;
  std::stable_sort(sets.begin(), sets.end(),
                   [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t s : sets) {
    if (s == 0) continue;
    if (std::any_of(minimal.begin(), minimal.end(), [&](std::uint32_t c) { return (c & s) == c; })) continue;
    if (ac2(s)) minimal.push_back(s);
  }
  CauseSet out;
  for (std::uint32_t s : minimal) {
    Term t;
    for (std::size_t i = 0; i < n; ++i)
      if ((s >> i) & 1U) t.push_back({vars[i], actual.at(vars[i])});
    std::sort(t.begin(), t.end());
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

CausalUniverse counterfactual_universe(const Sem& m) {
  const Assignment actual = evaluate_sem(m);
  std::set<std::string> taken(m.variables.begin(), m.variables.end());
  taken.insert(m.exogenous.begin(), m.exogenous.end());
  CausalUniverse cu;
  std::vector<Formula> eqs, empty;
  for (const auto& v : topological_order(m)) {
    const std::string i = "i_" + v, c = "c_" + v;
    for (const auto& fresh : {i, c})
      if (taken.count(fresh)) throw ModelError("generated name '" + fresh + "' clashes with a model variable");
    cu.interventions.push_back(i);
    cu.contingencies.push_back(c);
    Formula fx = simplify_constants(map_free_atoms(m.equations.at(v), [&](const std::string& a) {
      if (auto it = m.context.find(a); it != m.context.end()) return it->second ? make_true() : make_false();
      return atom(a);
    }));
    Formula body = actual.at(v) ? disj(conj(fx, negate(atom(i))), atom(c))
                                : conj(disj(fx, atom(i)), negate(atom(c)));
    eqs.push_back(iff(atom(v), simplify_constants(body)));
    empty.push_back(conj(conj(negate(atom(v)), negate(atom(i))), negate(atom(c))));
  }
  cu.universe = conj(conj_all(eqs), next_time(globally(conj_all(empty))));
  std::vector<Formula> apart;
  for (std::size_t k = 0; k < cu.interventions.size(); ++k)
    apart.push_back(negate(conj(atom(cu.interventions[k]), atom(cu.contingencies[k]))));
  cu.disjointness = conj_all(apart);

  std::vector<std::string> names = m.variables;
  names.insert(names.end(), cu.interventions.begin(), cu.interventions.end());
  names.insert(names.end(), cu.contingencies.begin(), cu.contingencies.end());
  Alphabet alphabet(names);
  std::vector<std::string> on;
  for (const auto& v : m.variables)
    if (actual.at(v)) on.push_back(v);
  cu.reference = LassoTrace(alphabet, {alphabet.mask(on)}, {0}).canonical();
  return cu;
}

Formula cause_formula(const CauseSet& causes) {
  std::vector<Formula> parts;
  for (const auto& t : causes) {
    std::vector<Formula> lits;
    for (const auto& l : t) lits.push_back(l.positive ? atom(l.var) : negate(atom(l.var)));
    parts.push_back(disj_all(lits));
  }
  return conj_all(parts);
}

Formula negated_cause_formula(const CauseSet& causes) {
  std::vector<Formula> parts;
  for (const auto& t : causes) {
    Term neg = t;
    for (auto& l : neg) l.positive = !l.positive;
    parts.push_back(term_formula(neg));
  }
  return disj_all(parts);
}

CauseCheck check_cause_encoding(const Sem& m, const Formula& effect) {
  CauseCheck r;
  r.causes = halpern_causes(m, effect);
  r.effect_holds = eval_propositional(effect, evaluate_sem(m));
  r.effect_without_causes = r.effect_holds && r.causes.empty();
  r.phi_x = cause_formula(r.causes);
  r.not_phi_x = negated_cause_formula(r.causes);

  CauseSet flipped = r.causes;
  for (auto& t : flipped)
    for (auto& l : t) l.positive = !l.positive;
  std::sort(flipped.begin(), flipped.end(), [](const Term& x, const Term& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  r.blake_form = blake_canonical(r.not_phi_x) == flipped;

  CausalUniverse cu = counterfactual_universe(m);
  UniverseSpec spec;
  spec.universe = conj(cu.universe, cu.disjointness);
  spec.reference = cu.reference;
  spec.mutable_props = cu.interventions;
  spec.window = 1;
  spec.shapes = {1, {1}};
  spec.require_unique_minimum = false;
  EvaluationContext ctx = build_context(spec);
  r.worlds = ctx.size();

  r.encoding = CfFormula::conj(
      CfFormula::plain(conj(r.phi_x, effect)),
      CfFormula::conditional(CfOp::MightMin, r.not_phi_x, negate(effect)));
  r.encoding_holds = eval_top(ctx, r.encoding).value;
  r.agree = r.encoding_holds == (r.effect_holds && !r.causes.empty());
  return r;
}

CfFormula lewis_formula(const std::string& c, const std::string& e) {
  if (c == e) throw Error("cause and effect must be different propositions");
  const Formula fc = eventually(atom(c)), fe = eventually(atom(e));
  return CfFormula::conj(
      CfFormula::conj(CfFormula::plain(implies(conj(fc, fe), until(negate(atom(e)), atom(c)))),
                      CfFormula::conditional(CfOp::UWould, fc, fe)),
      CfFormula::conditional(CfOp::UWould, negate(fc), negate(fe)));
}

CfFormula coenen_formula(const Formula& phi, const Formula& psi) {
  return CfFormula::conj(CfFormula::plain(conj(phi, psi)),
                         CfFormula::disj(CfFormula::conditional(CfOp::UWouldMin, negate(phi), negate(psi)),
                                         CfFormula::conditional(CfOp::MightMin, negate(phi), negate(psi))));
}

}  // namespace qcf
