#pragma once

// Similarity preorders over world indices 0..n-1 with a reference minimum.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qcf {

using WorldSet = boost::dynamic_bitset<>;

enum class MinimumPolicy {
  /// The reference is below every world and nothing else is below it.
  Unique,
  /// The reference is below every world; equally close worlds are allowed.
  Least,
};

class Preorder {
 public:
  /// `down[w]` is the set of worlds v with v <= w. Validates reflexivity,
  /// transitivity and the minimum policy; throws ModelError.
  Preorder(std::vector<WorldSet> down, std::size_t reference, MinimumPolicy policy = MinimumPolicy::Unique);

  std::size_t size() const { return down_.size(); }
  std::size_t reference() const { return reference_; }
  MinimumPolicy policy() const { return policy_; }
  bool leq(std::size_t a, std::size_t b) const { return down_[b][a]; }
  const WorldSet& down(std::size_t w) const { return down_[w]; }
  const WorldSet& up(std::size_t w) const { return up_[w]; }
  bool is_total() const;

 private:
  std::vector<WorldSet> down_;
  std::vector<WorldSet> up_;
  std::size_t reference_;
  MinimumPolicy policy_;
};

/// Reflexive-transitive closure of `generators` plus (reference, w) for all w.
Preorder closure_preorder(const std::vector<std::pair<std::size_t, std::size_t>>& generators,
                          std::size_t size, std::size_t reference,
                          MinimumPolicy policy = MinimumPolicy::Unique);

/// Name-based variant; throws Error on unknown world ids.
Preorder closure_preorder(const std::vector<std::pair<std::string, std::string>>& generators,
                          const std::vector<std::string>& ambient, const std::string& reference,
                          MinimumPolicy policy = MinimumPolicy::Unique);

}  // namespace qcf
