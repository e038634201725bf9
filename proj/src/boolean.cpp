#include "qcf/boolean.hpp"

#include <algorithm>

#include "qcf/error.hpp"
#include "qcf/syntax.hpp"

namespace qcf {

bool eval_propositional(const Formula& f, const Assignment& values) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: {
      auto it = values.find(f.name());
      if (it == values.end()) throw Error("no value for '" + f.name() + "'");
      return it->second;
    }
    case Op::Not: return !eval_propositional(f.lhs(), values);
    case Op::And: return eval_propositional(f.lhs(), values) && eval_propositional(f.rhs(), values);
    case Op::Or: return eval_propositional(f.lhs(), values) || eval_propositional(f.rhs(), values);
    case Op::Implies: return !eval_propositional(f.lhs(), values) || eval_propositional(f.rhs(), values);
    case Op::Iff: return eval_propositional(f.lhs(), values) == eval_propositional(f.rhs(), values);
    default: throw Error("not a propositional formula: " + render_formula(f));
  }
}

Formula simplify_constants(const Formula& f) {
  auto is = [](const Formula& g, Op op) { return g.op() == op; };
  switch (f.op()) {
    case Op::Not: {
      Formula a = simplify_constants(f.lhs());
      if (is(a, Op::True)) return make_false();
      if (is(a, Op::False)) return make_true();
      return negate(a);
    }
    case Op::And: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, Op::False) || is(b, Op::False)) return make_false();
      if (is(a, Op::True)) return b;
      if (is(b, Op::True)) return a;
      return conj(a, b);
    }
    case Op::Or: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, Op::True) || is(b, Op::True)) return make_true();
      if (is(a, Op::False)) return b;
      if (is(b, Op::False)) return a;
      return disj(a, b);
    }
    case Op::Implies: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, Op::False) || is(b, Op::True)) return make_true();
      if (is(a, Op::True)) return b;
      if (is(b, Op::False)) return simplify_constants(negate(a));
      return implies(a, b);
    }
    case Op::Iff: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (is(a, Op::True)) return b;
      if (is(b, Op::True)) return a;
      if (is(a, Op::False)) return simplify_constants(negate(b));
      if (is(b, Op::False)) return simplify_constants(negate(a));
      return iff(a, b);
    }
    default: {
      if (f.arity() == 0) return f;
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(simplify_constants(k));
      return Formula::make(f.op(), f.name(), std::move(kids));
    }
  }
}

Formula term_formula(const Term& t) {
  std::vector<Formula> lits;
  for (const auto& l : t) lits.push_back(l.positive ? atom(l.var) : negate(atom(l.var)));
  return conj_all(lits);
}

std::string render_term(const Term& t) { return render_formula(term_formula(t)); }

std::vector<Term> blake_canonical(const Formula& f, std::size_t cap) {
  const auto atoms = free_atoms(f);
  const std::vector<std::string> vars(atoms.begin(), atoms.end());
  const std::size_t n = vars.size();
  if (n > cap)
    throw CapExceeded("prime implicant search over " + std::to_string(n) + " variables exceeds the cap of " +
                      std::to_string(cap));

  std::vector<bool> table(std::size_t{1} << n);
  Assignment a;
  for (std::size_t m = 0; m < table.size(); ++m) {
    for (std::size_t i = 0; i < n; ++i) a[vars[i]] = (m >> i) & 1U;
    table[m] = eval_propositional(f, a);
  }

  // Terms in base 3: digit 0 = negative literal, 1 = positive, 2 = absent.
  // Replacing an absent digit by 0 or 1 gives a smaller index, so one
  // ascending pass fills the implicant table.
  std::vector<std::size_t> pow3(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  const std::size_t count = pow3[n];
  std::vector<bool> implicant(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t free_digit = n, minterm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = (t / pow3[i]) % 3;
      if (d == 2 && free_digit == n) free_digit = i;
      if (d == 1) minterm |= std::size_t{1} << i;
    }
    if (free_digit == n) {
      implicant[t] = table[minterm];
    } else {
      const std::size_t base = t - 2 * pow3[free_digit];
      implicant[t] = implicant[base] && implicant[base + pow3[free_digit]];
    }
  }

  std::vector<Term> out;
  for (std::size_t t = 0; t < count; ++t) {
    if (!implicant[t]) continue;
    bool prime = true;
    Term term;
    for (std::size_t i = 0; i < n && prime; ++i) {
      const std::size_t d = (t / pow3[i]) % 3;
      if (d == 2) continue;
      if (implicant[t + (2 - d) * pow3[i]]) prime = false;
      term.push_back({vars[i], d == 1});
    }
    if (prime) out.push_back(std::move(term));
  }
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

}  // namespace qcf
