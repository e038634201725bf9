#include "qcf/cf_eval.hpp"

#include <algorithm>

#include "qcf/error.hpp"

namespace qcf {

namespace {

constexpr std::size_t npos = WorldSet::npos;

#define FOR_EACH(w, set) for (std::size_t w = (set).find_first(); w != npos; w = (set).find_next(w))

CfVerdict verdict(bool value, std::vector<std::size_t> witnesses = {}) {
  CfVerdict v;
  v.value = value;
  if (value) v.witnesses = std::move(witnesses);
  return v;
}

// down(w) restricted to the universe.
WorldSet below(const Frame& fr, std::size_t w) { return fr.order->down(w) & fr.universe; }
WorldSet above(const Frame& fr, std::size_t w) { return fr.order->up(w) & fr.universe; }

bool cover_outside(const Frame& fr, const WorldSet& phi) { return (~fr.universe).is_subset_of(phi); }

// psi unsatisfiable and phi is exactly the complement of the universe.
bool empty_branch(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  return !(psi & fr.universe).any() && !(phi & fr.universe).any() && cover_outside(fr, phi);
}

}  // namespace

CfVerdict would(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet phi_u = phi & fr.universe;
  if (phi_u.none()) return verdict(true);
  FOR_EACH(w1, phi_u) {
    if ((below(fr, w1) & phi).is_subset_of(psi)) return verdict(true, {w1});
  }
  return verdict(false);
}

CfVerdict might(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet phi_u = phi & fr.universe;
  if (phi_u.none()) return verdict(false);
  const WorldSet both = phi & psi;
  FOR_EACH(w1, phi_u) {
    if (!below(fr, w1).intersects(both)) return verdict(false);
  }
  return verdict(true);
}

CfVerdict uwould(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet phi_u = phi & fr.universe;
  // Worlds W2 whose phi-worlds at most as far all satisfy psi.
  WorldSet settled(phi.size());
  FOR_EACH(w2, phi_u) {
    if ((below(fr, w2) & phi).is_subset_of(psi)) settled.set(w2);
  }
  FOR_EACH(w1, phi_u) {
    if (!below(fr, w1).intersects(settled)) return verdict(false);
  }
  return verdict(true);
}

CfVerdict emight(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet phi_u = phi & fr.universe;
  const WorldSet both = phi & psi;
  // Worlds W2 with some phi-and-psi world at most as far.
  WorldSet reach(phi.size());
  FOR_EACH(w2, phi_u) {
    if (below(fr, w2).intersects(both)) reach.set(w2);
  }
  FOR_EACH(w1, phi_u) {
    if ((below(fr, w1) & phi).is_subset_of(reach)) return verdict(true, {w1});
  }
  return verdict(false);
}

CfVerdict evaluate_base(CfOp op, const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  switch (base_op(op)) {
    case CfOp::Would: return would(fr, phi, psi);
    case CfOp::Might: return might(fr, phi, psi);
    case CfOp::UWould: return uwould(fr, phi, psi);
    default: return emight(fr, phi, psi);
  }
}

CfVerdict minimal_so(CfOp op, const Frame& fr, const WorldSet& phi, const WorldSet& psi, std::size_t cap) {
  const std::size_t n = phi.size();
  if (n > cap)
    throw CapExceeded("second-order minimality over " + std::to_string(n) +
                      " worlds exceeds the cap of " + std::to_string(cap));
  CfVerdict base = evaluate_base(op, fr, phi, psi);
  if (!base.value) return base;
  std::vector<std::size_t> free;
  FOR_EACH(w, ~phi) free.push_back(w);
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t m = 1; m < count; ++m) {
    WorldSet bigger = phi;
    for (std::size_t k = 0; k < free.size(); ++k)
      if ((m >> k) & 1U) bigger.set(free[k]);
    if (evaluate_base(op, fr, bigger, psi).value) return verdict(false);
  }
  return base;
}

// ---------------------------------------------------------------------------
// First-order blocks

CfVerdict minimal_fo_would(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  if (empty_branch(fr, phi, psi)) return verdict(true);
  if (!cover_outside(fr, phi)) return verdict(false);
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  const WorldSet not_phi = uni - phi;
  const WorldSet phi_not_psi = phi_u - psi;
  FOR_EACH(wc, phi_u) {
    const WorldSet dc = below(fr, wc);
    bool ok = true;
    FOR_EACH(w2, uni) {
      const WorldSet d2 = below(fr, w2);
      if (dc[w2]) {
        if (phi[w2] != psi[w2]) ok = false;
        // Every world not at most as far as w2 is already in phi.
        else if (psi[w2] && !(uni - d2).is_subset_of(phi)) ok = false;
      } else if (psi[w2] && (dc - d2).intersects(not_phi)) {
        if (!d2.intersects(phi_not_psi)) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return verdict(true, {wc});
  }
  return verdict(false);
}

CfVerdict minimal_fo_might(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  if (phi_u.none() || !cover_outside(fr, phi)) return verdict(false);
  WorldSet good(phi.size());
  FOR_EACH(wc, phi_u & psi) {
    const WorldSet up = above(fr, wc);
    if (up.is_subset_of(phi) && ((uni - up) & psi).is_subset_of(phi)) good.set(wc);
  }
  FOR_EACH(w1, phi_u) {
    if (!below(fr, w1).intersects(good)) return verdict(false);
  }
  return verdict(true);
}

CfVerdict minimal_fo_uwould(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  if (empty_branch(fr, phi, psi)) return verdict(true);
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  if (phi_u.none() || !cover_outside(fr, phi)) return verdict(false);
  const WorldSet differ = phi ^ psi;
  WorldSet good(phi.size());
  FOR_EACH(wc, phi_u) {
    const WorldSet down = below(fr, wc);
    const WorldSet up = above(fr, wc);
    const WorldSet apart = uni - down - up;
    if (!down.intersects(differ) && (up - down).is_subset_of(phi) && (apart & psi).is_subset_of(phi))
      good.set(wc);
  }
  FOR_EACH(w1, phi_u) {
    if (!below(fr, w1).intersects(good)) return verdict(false);
  }
  return verdict(true);
}

CfVerdict minimal_fo_emight(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  if (phi_u.none() || !cover_outside(fr, phi)) return verdict(false);
  const WorldSet not_phi = uni - phi;
  // phi-worlds with no psi-world at most as far.
  WorldSet clean(phi.size());
  FOR_EACH(wp, phi_u) {
    if (!below(fr, wp).intersects(psi)) clean.set(wp);
  }
  WorldSet good(phi.size());
  FOR_EACH(wc, phi_u & psi) {
    const WorldSet dc = below(fr, wc);
    const WorldSet strictly_closer = dc - above(fr, wc);
    if (!(strictly_closer & psi).is_subset_of(phi)) continue;
    const WorldSet rest = uni - strictly_closer;
    if (!rest.is_subset_of(phi)) continue;
    bool ok = true;
    FOR_EACH(wh, rest & psi) {
      const WorldSet dh = below(fr, wh);
      if ((dc - dh).intersects(not_phi) && !dh.intersects(clean)) {
        ok = false;
        break;
      }
    }
    if (ok) good.set(wc);
  }
  FOR_EACH(w1, phi_u) {
    bool ok = true;
    FOR_EACH(w2, below(fr, w1) & phi) {
      if (!below(fr, w2).intersects(good)) {
        ok = false;
        break;
      }
    }
    if (ok) return verdict(true, {w1});
  }
  return verdict(false);
}

CfVerdict minimal_fo(CfOp op, const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  switch (base_op(op)) {
    case CfOp::Would: return minimal_fo_would(fr, phi, psi);
    case CfOp::Might: return minimal_fo_might(fr, phi, psi);
    case CfOp::UWould: return minimal_fo_uwould(fr, phi, psi);
    default: return minimal_fo_emight(fr, phi, psi);
  }
}

// ---------------------------------------------------------------------------

namespace printed {

namespace {

// (forall W'. W' !|= psi) and (forall W^h in complement. forall W' in U.
// W^h |= phi and W' !|= phi); vacuous when the complement is empty.
bool first_disjunct(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet& uni = fr.universe;
  if ((psi & uni).any()) return false;
  if ((~uni).none()) return true;
  return cover_outside(fr, phi) && !(phi & uni).any();
}

}  // namespace

bool would_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  if (first_disjunct(fr, phi, psi)) return true;
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  const WorldSet not_phi = uni - phi;
  FOR_EACH(wc, phi_u) {
    const WorldSet dc = below(fr, wc);
    bool ok = true;
    FOR_EACH(w2, uni) {
      const WorldSet d2 = below(fr, w2);
      if (dc[w2]) {
        if (phi[w2] != psi[w2] || (psi[w2] && !(uni - d2).is_subset_of(phi))) ok = false;
      } else if (psi[w2] && (dc - d2).intersects(not_phi) && !d2.intersects(phi)) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

bool might_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  if (phi_u.none()) return false;
  FOR_EACH(w1, phi_u) {
    bool found = false;
    FOR_EACH(wc, below(fr, w1) & phi & psi) {
      const WorldSet up = above(fr, wc);
      if (up.is_subset_of(phi) && ((uni - up) & psi).is_subset_of(phi)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool uwould_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  if (first_disjunct(fr, phi, psi)) return true;
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  if (phi_u.none()) return false;
  const WorldSet differ = phi ^ psi;
  FOR_EACH(w1, phi_u) {
    bool found = false;
    FOR_EACH(wc, below(fr, w1) & phi) {
      const WorldSet down = below(fr, wc);
      const WorldSet up = above(fr, wc);
      if (!down.intersects(differ) && up.is_subset_of(phi) &&
          ((uni - down - up) & psi).is_subset_of(phi)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool emight_min(const Frame& fr, const WorldSet& phi, const WorldSet& psi) {
  const WorldSet& uni = fr.universe;
  const WorldSet phi_u = phi & uni;
  const WorldSet not_phi = uni - phi;
  auto good = [&](std::size_t wc) {
    const WorldSet dc = below(fr, wc);
    if (!(dc & psi).is_subset_of(phi)) return false;
    const WorldSet rest = uni - dc;
    if (!rest.is_subset_of(phi)) return false;
    FOR_EACH(wh, rest & psi) {
      const WorldSet dh = below(fr, wh);
      if ((dc - dh).intersects(not_phi) && !dh.intersects(phi)) return false;
    }
    return true;
  };
  FOR_EACH(w1, phi_u) {
    bool ok = true;
    FOR_EACH(w2, below(fr, w1) & phi) {
      bool found = false;
      FOR_EACH(wc, below(fr, w2) & phi & psi) {
        if (good(wc)) {
          found = true;
          break;
        }
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace printed

// ---------------------------------------------------------------------------

CfVerdict evaluate_conditional(const EvaluationContext& ctx, CfOp op, const Formula& phi,
                               const Formula& psi, const CfOptions& opts) {
  Extension a = ctx.extension(phi);
  Extension c = ctx.extension(psi);
  Frame fr{&ctx.order(), ctx.universe()};
  CfVerdict v;
  if (!is_minimal(op))
    v = evaluate_base(op, fr, a.worlds, c.worlds);
  else if (opts.minimal == MinimalMode::FirstOrder)
    v = minimal_fo(op, fr, a.worlds, c.worlds);
  else
    v = minimal_so(op, fr, a.worlds, c.worlds, opts.second_order_cap);
  v.bounded = a.bounded || c.bounded;
  return v;
}

CfVerdict eval_top(const EvaluationContext& ctx, const CfFormula& xi, const CfOptions& opts) {
  switch (xi.kind()) {
    case CfFormula::Kind::Plain: {
      Truth t = eval_qptl_bounded(ctx.world(ctx.reference()), xi.formula(), ctx.bounds());
      CfVerdict v;
      v.value = t.value;
      v.bounded = t.bounded;
      return v;
    }
    case CfFormula::Kind::Conditional:
      return evaluate_conditional(ctx, xi.op(), xi.antecedent(), xi.consequent(), opts);
    case CfFormula::Kind::And: {
      CfVerdict l = eval_top(ctx, xi.left(), opts);
      CfVerdict r = eval_top(ctx, xi.right(), opts);
      CfVerdict v;
      v.value = l.value && r.value;
      v.bounded = l.bounded || r.bounded;
      v.witnesses = l.witnesses;
      v.witnesses.insert(v.witnesses.end(), r.witnesses.begin(), r.witnesses.end());
      std::sort(v.witnesses.begin(), v.witnesses.end());
      v.witnesses.erase(std::unique(v.witnesses.begin(), v.witnesses.end()), v.witnesses.end());
      return v;
    }
    case CfFormula::Kind::Not: {
      CfVerdict v = eval_top(ctx, xi.operand(), opts);
      v.value = !v.value;
      return v;
    }
  }
  return {};
}

}  // namespace qcf
