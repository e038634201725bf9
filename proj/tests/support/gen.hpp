#pragma once

// Random formulas and lassos for property tests.

#include <random>
#include <string>
#include <vector>

#include "qcf/formula.hpp"
#include "qcf/lasso.hpp"

namespace qcf::testing {

struct FormulaGen {
  std::mt19937_64& rng;
  std::vector<std::string> atoms = {"a", "b", "c"};
  bool quantifiers = false;
  int fresh = 0;

  std::size_t pick(std::size_t n) { return rng() % n; }

  Formula leaf() {
    const auto k = pick(atoms.size() + 2);
    if (k == atoms.size()) return make_true();
    if (k == atoms.size() + 1) return make_false();
    return atom(atoms[k]);
  }

  Formula plain(int depth) {
    if (depth == 0) return leaf();
    const std::size_t kinds = quantifiers ? 14 : 12;
    switch (pick(kinds)) {
      case 0: return leaf();
      case 1: return negate(plain(depth - 1));
      case 2: return conj(plain(depth - 1), plain(depth - 1));
      case 3: return disj(plain(depth - 1), plain(depth - 1));
      case 4: return implies(plain(depth - 1), plain(depth - 1));
      case 5: return iff(plain(depth - 1), plain(depth - 1));
      case 6: return next_time(plain(depth - 1));
      case 7: return until(plain(depth - 1), plain(depth - 1));
      case 8: return release(plain(depth - 1), plain(depth - 1));
      case 9: return eventually(plain(depth - 1));
      case 10: return globally(plain(depth - 1));
      case 11: return atom(atoms[pick(atoms.size())]);
      default: {
        const std::string q = "q" + std::to_string(fresh++);
        atoms.push_back(q);
        Formula body = plain(depth - 1);
        atoms.pop_back();
        return pick(2) ? exists(q, body) : forall(q, body);
      }
    }
  }

  CfFormula top(int depth) {
    switch (pick(5)) {
      case 0: return CfFormula::plain(plain(depth));
      case 1: return CfFormula::negate(top(depth - 1 > 0 ? depth - 1 : 0));
      case 2:
        if (depth > 0) return CfFormula::conj(top(depth - 1), top(depth - 1));
        [[fallthrough]];
      default: {
        const CfOp op = kAllCfOps[pick(8)];
        return CfFormula::conditional(op, plain(depth), plain(depth));
      }
    }
  }
};

inline LassoTrace random_lasso(std::mt19937_64& rng, const Alphabet& ab, std::size_t max_prefix,
                               std::size_t max_loop) {
  const std::size_t p = rng() % (max_prefix + 1);
  const std::size_t l = 1 + rng() % max_loop;
  const Letter full = ab.full_mask();
  std::vector<Letter> pre(p), loop(l);
  for (auto& x : pre) x = rng() & full;
  for (auto& x : loop) x = rng() & full;
  return LassoTrace(ab, pre, loop);
}

}  // namespace qcf::testing
