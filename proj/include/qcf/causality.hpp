#pragma once

// Binary structural-equation models, Halpern's modified actual causality by
// brute force, and its encoding as a minimal counterfactual over a finite
// intervention/contingency universe.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcf/boolean.hpp"
#include "qcf/formula.hpp"
#include "qcf/lasso.hpp"

namespace qcf {

struct Sem {
  /// Endogenous variables in declaration order.
  std::vector<std::string> variables;
  std::map<std::string, Formula> equations;
  std::vector<std::string> exogenous;
  Assignment context;
};

/// Line format:
///   var f := l | m
///   var l := exo u_l
///   context u_l=0 u_m=1
/// Validates names, binary context values and acyclicity.
Sem parse_sem(std::string_view text);

/// Endogenous variables, dependencies first; ties keep declaration order.
/// Throws ModelError on a cycle.
std::vector<std::string> topological_order(const Sem& m);

Assignment evaluate_sem(const Sem& m);

/// Clamps X to `x` and W to `w`, evaluates the rest. Throws Error when the
/// two overlap or mention an unknown variable.
Assignment intervene_evaluate(const Sem& m, const Assignment& x, const Assignment& w);

/// Each cause is a conjunction of literals at their actual values.
using CauseSet = std::vector<Term>;

inline constexpr std::size_t kDefaultCauseCap = 10;

/// All minimal causes (AC1-AC3, contingencies at actual values). Empty when
/// the effect does not hold. Throws CapExceeded past `cap` variables.
CauseSet halpern_causes(const Sem& m, const Formula& effect, std::size_t cap = kDefaultCauseCap);

struct CausalUniverse {
  Formula universe;
  LassoTrace reference;
  std::vector<std::string> interventions;
  std::vector<std::string> contingencies;
  /// No variable is both intervened on and held fixed: !(i_x & c_x) for each x.
  Formula disjointness;
};

CausalUniverse counterfactual_universe(const Sem& m);

/// Conjunction over causes of the disjunction of their literals.
Formula cause_formula(const CauseSet& causes);
/// Disjunction over causes of the conjunction of their negated literals.
Formula negated_cause_formula(const CauseSet& causes);

struct CauseCheck {
  CauseSet causes;
  bool effect_holds = false;
  Formula phi_x;
  Formula not_phi_x;
  /// not_phi_x lists exactly the prime implicants of itself.
  bool blake_form = false;
  CfFormula encoding;
  bool encoding_holds = false;
  bool agree = false;
  /// The effect holds but no variable set is a cause.
  bool effect_without_causes = false;
  std::size_t worlds = 0;
};

CauseCheck check_cause_encoding(const Sem& m, const Formula& effect);

/// ((F c & F e) -> (!e U c)) & (F c uwould F e) & (!F c uwould !F e)
CfFormula lewis_formula(const std::string& c, const std::string& e);

/// phi & psi & ((!phi uwouldmin !psi) | (!phi mightmin !psi))
CfFormula coenen_formula(const Formula& phi, const Formula& psi);

}  // namespace qcf
