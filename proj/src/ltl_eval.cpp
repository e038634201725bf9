#include "qcf/ltl_eval.hpp"

#include <utility>
#include <vector>

#include "qcf/error.hpp"

namespace qcf {

namespace {

using Bits = boost::dynamic_bitset<>;

// Truth vectors over the positions 0..P+L-1 of the trace's own shape; the
// successor of the last position is P.
class Evaluator {
 public:
  Evaluator(const LassoTrace& t, const EvalBounds* bounds)
      : t_(t), p_(t.prefix_length()), n_(t.prefix_length() + t.loop_length()), bounds_(bounds) {}

  Bits eval(const Formula& f) {
    switch (f.op()) {
      case Op::True: return Bits(n_).set();
      case Op::False: return Bits(n_);
      case Op::Atom: return atom(f.name());
      case Op::Not: return ~eval(f.lhs());
      case Op::And: return eval(f.lhs()) & eval(f.rhs());
      case Op::Or: return eval(f.lhs()) | eval(f.rhs());
      case Op::Implies: return ~eval(f.lhs()) | eval(f.rhs());
      case Op::Iff: return ~(eval(f.lhs()) ^ eval(f.rhs()));
      case Op::Next: {
        Bits a = eval(f.lhs());
        Bits out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = a[succ(i)];
        return out;
      }
      case Op::Until: return until(eval(f.lhs()), eval(f.rhs()));
      case Op::Release: return ~until(~eval(f.lhs()), ~eval(f.rhs()));
      case Op::Eventually: return until(Bits(n_).set(), eval(f.lhs()));
      case Op::Globally: return ~until(Bits(n_).set(), ~eval(f.lhs()));
      case Op::Exists:
      case Op::Forall: return quantifier(f);
    }
    return Bits(n_);
  }

  bool bounded() const { return bounded_; }

 private:
  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : p_; }

  Bits atom(const std::string& name) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name) return it->second;
    Bits out(n_);
    if (auto idx = t_.alphabet().index(name))
      for (std::size_t i = 0; i < n_; ++i) out[i] = t_.holds(*idx, i);
    return out;
  }

  // Least fixpoint of r = b | (a & X r). Backward passes until stable; the
  // loop needs at most two.
  Bits until(const Bits& a, const Bits& b) const {
    Bits r(n_);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        bool v = b[k] || (a[k] && r[succ(k)]);
        if (v && !r[k]) {
          r[k] = true;
          changed = true;
        }
      }
    }
    return r;
  }

  Bits quantifier(const Formula& f) {
    if (!bounds_) throw Error("propositional quantifier in an LTL-only evaluation");
    if (n_ > bounds_->max_positions)
      throw CapExceeded("quantifier over " + std::to_string(n_) + " positions exceeds the cap of " +
                        std::to_string(bounds_->max_positions));
    bounded_ = true;
    const bool exists = f.op() == Op::Exists;
    Bits acc(n_);
    if (!exists) acc.set();
    env_.emplace_back(f.name(), Bits(n_));
    const std::uint64_t count = std::uint64_t{1} << n_;
    for (std::uint64_t m = 0; m < count; ++m) {
      env_.back().second = Bits(n_, m);
      Bits body = eval(f.lhs());
      if (exists) {
        acc |= body;
        if (acc.all()) break;
      } else {
        acc &= body;
        if (acc.none()) break;
      }
    }
    env_.pop_back();
    return acc;
  }

  const LassoTrace& t_;
  std::size_t p_;
  std::size_t n_;
  const EvalBounds* bounds_;
  bool bounded_ = false;
  std::vector<std::pair<std::string, Bits>> env_;
};

std::size_t fold_position(const LassoTrace& t, std::size_t i) {
  const std::size_t p = t.prefix_length();
  return i < p ? i : p + (i - p) % t.loop_length();
}

}  // namespace

bool eval_ltl_at(const LassoTrace& t, const Formula& f, std::size_t i) {
  Evaluator ev(t, nullptr);
  return ev.eval(f)[fold_position(t, i)];
}

Truth eval_qptl_bounded(const LassoTrace& t, const Formula& f, const EvalBounds& bounds, std::size_t i) {
  Evaluator ev(t, &bounds);
  bool v = ev.eval(f)[fold_position(t, i)];
  return {v, ev.bounded()};
}

}  // namespace qcf
