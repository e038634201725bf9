#pragma once

// Propositional helpers: evaluation, constant folding, prime implicants.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qcf/formula.hpp"

namespace qcf {

using Assignment = std::map<std::string, bool>;

/// Evaluates a propositional formula; throws Error on temporal operators,
/// quantifiers or atoms missing from the assignment.
bool eval_propositional(const Formula& f, const Assignment& values);

/// Folds true/false through the Boolean connectives.
Formula simplify_constants(const Formula& f);

struct Literal {
  std::string var;
  bool positive = true;
  friend bool operator==(const Literal& a, const Literal& b) { return a.var == b.var && a.positive == b.positive; }
  friend bool operator<(const Literal& a, const Literal& b) {
    return a.var != b.var ? a.var < b.var : a.positive < b.positive;
  }
};

/// Conjunction of literals over distinct variables, sorted by variable.
using Term = std::vector<Literal>;

Formula term_formula(const Term& t);
std::string render_term(const Term& t);

inline constexpr std::size_t kDefaultBlakeCap = 12;

/// All prime implicants of a propositional formula, ordered by size and then
/// lexicographically. Brute force over the truth table; throws CapExceeded
/// past `cap` variables.
std::vector<Term> blake_canonical(const Formula& f, std::size_t cap = kDefaultBlakeCap);

}  // namespace qcf
