#include "qcf/preorder.hpp"

#include <algorithm>

#include "qcf/error.hpp"

namespace qcf {

Preorder::Preorder(std::vector<WorldSet> down, std::size_t reference, MinimumPolicy policy)
    : down_(std::move(down)), reference_(reference), policy_(policy) {
  const std::size_t n = down_.size();
  if (reference_ >= n) throw ModelError("reference world out of range");
  up_.assign(n, WorldSet(n));
  for (std::size_t w = 0; w < n; ++w) {
    if (down_[w].size() != n) throw ModelError("preorder row has the wrong width");
    if (!down_[w][w]) throw ModelError("preorder is not reflexive");
    for (std::size_t v = down_[w].find_first(); v != WorldSet::npos; v = down_[w].find_next(v))
      up_[v].set(w);
  }
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = down_[w].find_first(); v != WorldSet::npos; v = down_[w].find_next(v))
      if (!down_[v].is_subset_of(down_[w])) throw ModelError("preorder is not transitive");
  if (!up_[reference_].all()) throw ModelError("reference world is not below every world");
  if (policy_ == MinimumPolicy::Unique && down_[reference_].count() != 1)
    throw ModelError("minimum violated: another world is at most as far as the reference");
}

bool Preorder::is_total() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

Preorder closure_preorder(const std::vector<std::pair<std::size_t, std::size_t>>& generators,
                          std::size_t size, std::size_t reference, MinimumPolicy policy) {
  if (reference >= size) throw Error("unknown reference world");
  std::vector<WorldSet> down(size, WorldSet(size));
  for (std::size_t w = 0; w < size; ++w) {
    down[w].set(w);
    down[w].set(reference);
  }
  for (auto [a, b] : generators) {
    if (a >= size || b >= size) throw Error("unknown world in order generator");
    down[b].set(a);
  }
  // Warshall over the down-set rows.
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t w = 0; w < size; ++w)
      if (down[w][k]) down[w] |= down[k];
  return Preorder(std::move(down), reference, policy);
}

Preorder closure_preorder(const std::vector<std::pair<std::string, std::string>>& generators,
                          const std::vector<std::string>& ambient, const std::string& reference,
                          MinimumPolicy policy) {
  auto id = [&](const std::string& name) {
    auto it = std::find(ambient.begin(), ambient.end(), name);
    if (it == ambient.end()) throw Error("unknown world id '" + name + "'");
    return static_cast<std::size_t>(it - ambient.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (const auto& [a, b] : generators) gens.emplace_back(id(a), id(b));
  return closure_preorder(gens, ambient.size(), id(reference), policy);
}

}  // namespace qcf
