#pragma once

// Exact LTL and shape-bounded QPTL evaluation on lasso traces.

#include <cstddef>
#include <string>

#include "qcf/formula.hpp"
#include "qcf/lasso.hpp"

namespace qcf {

struct EvalBounds {
  /// The only policy: q-assignments are lassos of the trace's own shape.
  std::string policy = "aligned-lasso";
  /// Quantifiers over more positions than this raise CapExceeded.
  std::size_t max_positions = 20;
};

struct Truth {
  bool value = false;
  /// Set when a propositional quantifier was evaluated at the shape bound.
  bool bounded = false;
};

/// Atoms outside the trace alphabet are false everywhere. Throws Error when
/// the formula contains a propositional quantifier.
bool eval_ltl_at(const LassoTrace& t, const Formula& f, std::size_t i = 0);

Truth eval_qptl_bounded(const LassoTrace& t, const Formula& f, const EvalBounds& bounds = {},
                        std::size_t i = 0);

}  // namespace qcf
