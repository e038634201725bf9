#pragma once

// The eight counterfactual conditionals over a finite frame. Properties are
// extensional world sets over the ambient worlds; every world quantifier
// ranges over the universe.

#include <cstddef>
#include <vector>

#include "qcf/context.hpp"
#include "qcf/formula.hpp"
#include "qcf/preorder.hpp"

namespace qcf {

struct Frame {
  const Preorder* order;
  WorldSet universe;
};

struct CfVerdict {
  bool value = false;
  bool bounded = false;
  /// Diagnostic witnesses, ascending, all in the universe.
  std::vector<std::size_t> witnesses;
};

CfVerdict would(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict might(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict uwould(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict emight(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
/// Dispatch on a non-minimal operator.
CfVerdict evaluate_base(CfOp op, const Frame& fr, const WorldSet& phi, const WorldSet& psi);

inline constexpr std::size_t kDefaultSecondOrderCap = 14;

/// op(phi, psi) holds and no strict ambient superset of phi makes it hold.
/// Throws CapExceeded when the ambient set exceeds `cap` worlds.
CfVerdict minimal_so(CfOp op, const Frame& fr, const WorldSet& phi, const WorldSet& psi,
                     std::size_t cap = kDefaultSecondOrderCap);

// First-order characterizations of the minimal operators (quantifying only
// over worlds). Equivalent to minimal_so on every finite frame.
CfVerdict minimal_fo_would(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict minimal_fo_might(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict minimal_fo_uwould(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict minimal_fo_emight(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
CfVerdict minimal_fo(CfOp op, const Frame& fr, const WorldSet& phi, const WorldSet& psi);

/// The four first-order blocks read literally, kept for comparison. Only the
/// might block agrees with minimal_so in general.
namespace printed {
bool would_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
bool might_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
bool uwould_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
bool emight_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi);
}  // namespace printed

enum class MinimalMode { FirstOrder, SecondOrder };

struct CfOptions {
  MinimalMode minimal = MinimalMode::FirstOrder;
  std::size_t second_order_cap = kDefaultSecondOrderCap;
};

CfVerdict evaluate_conditional(const EvaluationContext& ctx, CfOp op, const Formula& phi,
                               const Formula& psi, const CfOptions& opts = {});

/// Plain parts are evaluated on the reference world, conditionals over the
/// context; flags propagate by disjunction, witnesses by union.
CfVerdict eval_top(const EvaluationContext& ctx, const CfFormula& xi, const CfOptions& opts = {});

}  // namespace qcf
