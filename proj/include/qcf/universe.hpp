#pragma once

// Bounded universes of lasso traces: every trace whose mutable propositions
// differ from a reference only inside an edit window, completed under an
// LTL universe formula and ordered by subset similarity.

#include <cstddef>
#include <string>
#include <vector>

#include "qcf/context.hpp"
#include "qcf/formula.hpp"
#include "qcf/lasso.hpp"
#include "qcf/preorder.hpp"

namespace qcf {

struct ShapeBounds {
  std::size_t max_prefix = 0;
  std::vector<std::size_t> loops;
};

struct UniverseSpec {
  Formula universe;
  LassoTrace reference;
  std::vector<std::string> mutable_props;
  std::size_t window = 1;
  ShapeBounds shapes;
  std::size_t candidate_cap = std::size_t{1} << 22;
  std::size_t node_cap = 1'000'000;
  /// With false, worlds with the reference's mutable propositions may tie
  /// with it (least rather than unique minimum).
  bool require_unique_minimum = true;
  EvalBounds eval;
};

/// A lasso shape with the mutable propositions fixed at every position.
struct PartialLasso {
  std::size_t prefix = 0;
  std::size_t loop = 1;
  std::vector<Letter> letters;  // prefix + loop entries, mutable bits only
};

/// The alphabet the engine works over: reference atoms, free atoms of the
/// universe formula and the mutable propositions.
Alphabet universe_alphabet(const UniverseSpec& spec);

/// Throws Error on a violated UniverseSpec invariant, CapExceeded past the cap.
std::vector<PartialLasso> enumerate_edits(const UniverseSpec& spec);

/// Every completion of every partial lasso that satisfies the universe
/// formula, as canonical traces in ascending order without duplicates.
std::vector<LassoTrace> complete_candidates(const UniverseSpec& spec, const std::vector<PartialLasso>& partials);

/// World 0 is the reference; the other worlds follow in ascending canonical
/// order. Ambient and universe coincide.
EvaluationContext build_context(const UniverseSpec& spec);

}  // namespace qcf
