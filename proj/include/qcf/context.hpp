#pragma once

// Finite evaluation contexts: ambient worlds, a universe inside them, and a
// similarity preorder. Worlds are lasso traces; explicit finite worlds are
// constant traces valuation^omega.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "qcf/formula.hpp"
#include "qcf/lasso.hpp"
#include "qcf/ltl_eval.hpp"
#include "qcf/preorder.hpp"

namespace qcf {

struct Extension {
  WorldSet worlds;
  bool bounded = false;
};

class EvaluationContext {
 public:
  /// Throws ModelError unless the reference is in the universe and all
  /// worlds share one alphabet.
  EvaluationContext(std::vector<std::string> names, std::vector<LassoTrace> worlds, WorldSet universe,
                    Preorder order, EvalBounds bounds = {});

  std::size_t size() const { return worlds_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t w) const { return names_[w]; }
  const LassoTrace& world(std::size_t w) const { return worlds_[w]; }
  const WorldSet& universe() const { return universe_; }
  const Preorder& order() const { return order_; }
  std::size_t reference() const { return order_.reference(); }
  const EvalBounds& bounds() const { return bounds_; }

  /// Ambient worlds satisfying f at position 0. Cached per formula.
  Extension extension(const Formula& f) const;

 private:
  std::vector<std::string> names_;
  std::vector<LassoTrace> worlds_;
  WorldSet universe_;
  Preorder order_;
  EvalBounds bounds_;
  struct Cache {
    std::mutex mutex;
    std::map<std::string, Extension> entries;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reads the line-oriented finite-universe format:
///   worlds: r a b
///   universe: r a b        (optional; defaults to all worlds)
///   ref: r
///   prop A: a b
///   order: r<=a a<=b
/// `#` starts a comment. Throws SyntaxError / ModelError.
EvaluationContext load_finite_universe(std::string_view text);

}  // namespace qcf
