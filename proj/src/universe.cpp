#include "qcf/universe.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qcf/error.hpp"
#include "qcf/ltl_eval.hpp"

namespace qcf {

namespace {

bool is_local(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Next:
      return std::all_of(f.children().begin(), f.children().end(), is_local);
    default:
      return false;
  }
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

// A universe conjunct checkable from a few positions: c at `from` only, or
// c at every position from `from` on.
struct Clause {
  Formula body;
  std::size_t from = 0;
  bool always = false;
};

std::vector<Clause> local_clauses(const Formula& universe) {
  std::vector<Formula> parts;
  flatten_and(universe, parts);
  std::vector<Clause> out;
  for (const auto& part : parts) {
    if (is_local(part)) {
      out.push_back({part, 0, false});
      continue;
    }
    std::size_t k = 0;
    const Formula* f = &part;
    while (f->op() == Op::Next) {
      ++k;
      f = &f->lhs();
    }
    if (f->op() != Op::Globally) continue;
    std::vector<Formula> inner;
    flatten_and(f->lhs(), inner);
    for (const auto& c : inner)
      if (is_local(c)) out.push_back({c, k, true});
  }
  return out;
}

class Completer {
 public:
  Completer(const UniverseSpec& spec, const Alphabet& alphabet, Letter x_mask)
      : spec_(spec), alphabet_(alphabet), free_mask_(alphabet.full_mask() & ~x_mask),
        clauses_(local_clauses(spec.universe)) {}

  void complete(const PartialLasso& partial, std::set<LassoTrace>& out) {
    p_ = partial.prefix;
    l_ = partial.loop;
    n_ = p_ + l_;
    letters_ = partial.letters;
    nodes_ = 0;
    schedule();
    search(0, out);
  }

 private:
  std::size_t fold(std::size_t i) const { return i < n_ ? i : p_ + (i - p_) % l_; }

  bool eval_at(const Formula& f, std::size_t i) const {
    switch (f.op()) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Atom: {
        auto idx = alphabet_.index(f.name());
        return idx && ((letters_[fold(i)] >> *idx) & 1U);
      }
      case Op::Not: return !eval_at(f.lhs(), i);
      case Op::And: return eval_at(f.lhs(), i) && eval_at(f.rhs(), i);
      case Op::Or: return eval_at(f.lhs(), i) || eval_at(f.rhs(), i);
      case Op::Implies: return !eval_at(f.lhs(), i) || eval_at(f.rhs(), i);
      case Op::Iff: return eval_at(f.lhs(), i) == eval_at(f.rhs(), i);
      case Op::Next: return eval_at(f.lhs(), i + 1);
      default: return false;
    }
  }

  // checks_[k]: clause instances decidable once positions 0..k are assigned.
  void schedule() {
    checks_.assign(n_, {});
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      const std::size_t depth = next_depth(clauses_[c].body);
      auto add = [&](std::size_t i) {
        std::size_t ready = 0;
        for (std::size_t j = i; j <= i + depth; ++j) ready = std::max(ready, fold(j));
        checks_[ready].emplace_back(c, i);
      };
      if (!clauses_[c].always) {
        add(clauses_[c].from);
        continue;
      }
      for (std::size_t i = 0; i < n_; ++i)
        if (i >= p_ || i >= clauses_[c].from) add(i);
    }
  }

  void search(std::size_t k, std::set<LassoTrace>& out) {
    if (k == n_) {
      std::vector<Letter> prefix(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(p_));
      std::vector<Letter> loop(letters_.begin() + static_cast<std::ptrdiff_t>(p_), letters_.end());
      LassoTrace t(alphabet_, std::move(prefix), std::move(loop));
      if (eval_qptl_bounded(t, spec_.universe, spec_.eval).value) out.insert(t.canonical());
      return;
    }
    const Letter fixed = letters_[k];
    // Enumerate the free bits of position k as submasks, including none.
    for (Letter sub = free_mask_;; sub = (sub - 1) & free_mask_) {
      if (++nodes_ > spec_.node_cap)
        throw CapExceeded("completion search exceeded " + std::to_string(spec_.node_cap) + " nodes");
      letters_[k] = fixed | sub;
      bool ok = true;
      for (auto [c, i] : checks_[k])
        if (!eval_at(clauses_[c].body, i)) {
          ok = false;
          break;
        }
      if (ok) search(k + 1, out);
      if (sub == 0) break;
    }
    letters_[k] = fixed;
  }

  const UniverseSpec& spec_;
  const Alphabet& alphabet_;
  Letter free_mask_;
  std::vector<Clause> clauses_;
  std::size_t p_ = 0, l_ = 1, n_ = 1;
  std::vector<Letter> letters_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks_;
  std::size_t nodes_ = 0;
};

}  // namespace

Alphabet universe_alphabet(const UniverseSpec& spec) {
  std::vector<std::string> names = spec.reference.alphabet().names();
  for (const auto& a : free_atoms(spec.universe)) names.push_back(a);
  names.insert(names.end(), spec.mutable_props.begin(), spec.mutable_props.end());
  return Alphabet(std::move(names));
}

std::vector<PartialLasso> enumerate_edits(const UniverseSpec& spec) {
  if (spec.window == 0) throw Error("edit window must be at least 1");
  if (spec.mutable_props.empty()) throw Error("mutable proposition set must be nonempty");
  if (spec.shapes.loops.empty()) throw Error("no loop lengths given");
  const Alphabet alphabet = universe_alphabet(spec);
  const LassoTrace ref = spec.reference.with_alphabet(alphabet).canonical();
  const Letter x_mask = alphabet.mask(spec.mutable_props);
  const std::size_t width = spec.mutable_props.size();

  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  const std::size_t p_min = std::max(ref.prefix_length(), spec.window);
  for (std::size_t p = p_min; p <= spec.shapes.max_prefix; ++p)
    for (std::size_t l : spec.shapes.loops)
      if (l > 0 && l % ref.loop_length() == 0) shapes.emplace_back(p, l);
  if (shapes.empty())
    throw Error("no lasso shape fits: need max prefix >= " + std::to_string(p_min) +
                " and a loop length divisible by " + std::to_string(ref.loop_length()));

  const std::size_t bits = width * spec.window;
  if (bits >= 63 || shapes.size() * (std::size_t{1} << bits) > spec.candidate_cap)
    throw CapExceeded("edit enumeration exceeds the candidate cap of " + std::to_string(spec.candidate_cap));

  std::vector<Letter> x_bits;
  for (std::size_t b = 0; b < 64; ++b)
    if ((x_mask >> b) & 1U) x_bits.push_back(Letter{1} << b);

  std::vector<PartialLasso> out;
  for (auto [p, l] : shapes) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
      PartialLasso pl{p, l, std::vector<Letter>(p + l)};
      for (std::size_t i = 0; i < p + l; ++i) {
        if (i >= spec.window) {
          pl.letters[i] = ref.at(i) & x_mask;
          continue;
        }
        Letter a = 0;
        for (std::size_t k = 0; k < width; ++k)
          if ((m >> (i * width + k)) & 1U) a |= x_bits[k];
        pl.letters[i] = a;
      }
      out.push_back(std::move(pl));
    }
  }
  return out;
}

std::vector<LassoTrace> complete_candidates(const UniverseSpec& spec, const std::vector<PartialLasso>& partials) {
  const Alphabet alphabet = universe_alphabet(spec);
  const Letter x_mask = alphabet.mask(spec.mutable_props);
  Completer completer(spec, alphabet, x_mask);
  std::set<LassoTrace> found;
  for (const auto& p : partials) completer.complete(p, found);
  return {found.begin(), found.end()};
}

EvaluationContext build_context(const UniverseSpec& spec) {
  const Alphabet alphabet = universe_alphabet(spec);
  const LassoTrace ref = spec.reference.with_alphabet(alphabet).canonical();
  if (!eval_qptl_bounded(ref, spec.universe, spec.eval).value)
    throw ModelError("reference trace does not satisfy the universe formula");

  std::vector<LassoTrace> worlds{ref};
  for (auto& t : complete_candidates(spec, enumerate_edits(spec)))
    if (t != ref) worlds.push_back(std::move(t));

  const Letter x_mask = alphabet.mask(spec.mutable_props);
  const Alignment al = align_lassos(worlds);
  std::vector<boost::dynamic_bitset<>> diffs;
  for (const auto& t : al.traces) diffs.push_back(difference_pattern(al.traces.front(), t, x_mask, al.prefix, al.loop));

  const std::size_t n = worlds.size();
  std::vector<WorldSet> down(n, WorldSet(n));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v)
      if (diffs[v].is_subset_of(diffs[w])) down[w].set(v);
  const MinimumPolicy policy = spec.require_unique_minimum ? MinimumPolicy::Unique : MinimumPolicy::Least;
  Preorder order(std::move(down), 0, policy);

  std::vector<std::string> names;
  for (const auto& t : worlds) names.push_back(render_lasso(t));
  WorldSet uni(n);
  uni.set();
  return EvaluationContext(std::move(names), std::move(worlds), std::move(uni), std::move(order), spec.eval);
}

}  // namespace qcf
