#include "qcf/hyper.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qcf/error.hpp"
#include "qcf/syntax.hpp"

namespace qcf {

namespace {

// Renames every atom and every bound proposition.
Formula rename_all(const Formula& f, const std::function<std::string(const std::string&)>& fn) {
  switch (f.op()) {
    case Op::True:
    case Op::False: return f;
    case Op::Atom: return atom(fn(f.name()));
    case Op::Exists:
    case Op::Forall: return Formula::make(f.op(), fn(f.name()), {rename_all(f.lhs(), fn)});
    default: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(rename_all(k, fn));
      return Formula::make(f.op(), {}, std::move(kids));
    }
  }
}

// Quantified trace expressions before prenexing.
struct Expr;
using ExprP = std::shared_ptr<const Expr>;
struct Expr {
  enum class Kind { Leaf, Not, And, Or, Implies, Quant } kind;
  Formula leaf;
  TraceQuant quant = TraceQuant::Exists;
  std::string var;
  std::vector<ExprP> kids;
};

ExprP leaf(Formula f) { return std::make_shared<Expr>(Expr{Expr::Kind::Leaf, std::move(f), {}, {}, {}}); }
ExprP node(Expr::Kind k, std::vector<ExprP> kids) {
  return std::make_shared<Expr>(Expr{k, Formula(), {}, {}, std::move(kids)});
}
ExprP lnot(ExprP a) { return node(Expr::Kind::Not, {std::move(a)}); }
ExprP land(std::vector<ExprP> kids) { return node(Expr::Kind::And, std::move(kids)); }
ExprP lor(ExprP a, ExprP b) { return node(Expr::Kind::Or, {std::move(a), std::move(b)}); }
ExprP limp(ExprP a, ExprP b) { return node(Expr::Kind::Implies, {std::move(a), std::move(b)}); }
ExprP quant(TraceQuant q, std::string v, ExprP body) {
  return std::make_shared<Expr>(Expr{Expr::Kind::Quant, Formula(), q, std::move(v), {std::move(body)}});
}

TraceQuant dual(TraceQuant q) { return q == TraceQuant::Exists ? TraceQuant::Forall : TraceQuant::Exists; }

// Variables are pairwise distinct and the trace domain is nonempty, so every
// quantifier can be pulled to the front; negation flips it.
std::pair<std::vector<TraceBinder>, Formula> prenex(const ExprP& e) {
  using K = Expr::Kind;
  auto flipped = [](std::vector<TraceBinder> p) {
    for (auto& b : p) b.quant = dual(b.quant);
    return p;
  };
  switch (e->kind) {
    case K::Leaf: return {{}, e->leaf};
    case K::Not: {
      auto [p, m] = prenex(e->kids[0]);
      return {flipped(std::move(p)), negate(m)};
    }
    case K::Quant: {
      auto [p, m] = prenex(e->kids[0]);
      p.insert(p.begin(), TraceBinder{e->quant, e->var});
      return {std::move(p), m};
    }
    case K::Implies: {
      auto [pa, ma] = prenex(e->kids[0]);
      auto [pb, mb] = prenex(e->kids[1]);
      auto p = flipped(std::move(pa));
      p.insert(p.end(), pb.begin(), pb.end());
      return {std::move(p), implies(ma, mb)};
    }
    default: {
      std::vector<TraceBinder> p;
      std::optional<Formula> m;
      for (const auto& k : e->kids) {
        auto [pk, mk] = prenex(k);
        p.insert(p.end(), pk.begin(), pk.end());
        m = !m ? mk : (e->kind == K::And ? conj(*m, mk) : disj(*m, mk));
      }
      return {std::move(p), m ? *m : make_true()};
    }
  }
}

// Builds one conditional's encoding with fresh variables.
class Encoder {
 public:
  Encoder(const Formula& phi, const Formula& psi, const SimilaritySpec& sim, const Formula& universe,
          std::string ref, std::size_t next)
      : phi_(phi), psi_(psi), sim_(sim), universe_(universe), ref_(std::move(ref)), next_(next) {}

  std::string fresh() { return "p" + std::to_string(next_++); }
  std::size_t next_index() const { return next_; }

  ExprP in(const std::string& v) const { return leaf(index_formula(universe_, v)); }
  ExprP P(const std::string& v) const { return leaf(index_formula(phi_, v)); }
  ExprP Q(const std::string& v) const { return leaf(index_formula(psi_, v)); }
  ExprP notP(const std::string& v) const { return leaf(negate(index_formula(phi_, v))); }
  ExprP notQ(const std::string& v) const { return leaf(negate(index_formula(psi_, v))); }
  ExprP le(const std::string& a, const std::string& b) const {
    return leaf(similarity_instance(sim_, ref_, a, b));
  }
  ExprP nle(const std::string& a, const std::string& b) const {
    return leaf(negate(similarity_instance(sim_, ref_, a, b)));
  }

  // Guarded quantifiers over the universe and its complement.
  template <class Body>
  ExprP some(Body body) {
    const std::string v = fresh();
    return quant(TraceQuant::Exists, v, land({in(v), body(v)}));
  }
  template <class Body>
  ExprP every(Body body) {
    const std::string v = fresh();
    return quant(TraceQuant::Forall, v, limp(in(v), body(v)));
  }
  template <class Body>
  ExprP every_outside(Body body) {
    const std::string v = fresh();
    return quant(TraceQuant::Forall, v, limp(lnot(in(v)), body(v)));
  }

  ExprP encode(CfOp op);

 private:
  // psi has no universe world, phi covers the complement and no universe world.
  ExprP empty_branch() {
    return land({every([&](const std::string& v) { return notQ(v); }),
                 every_outside([&](const std::string& v) { return P(v); }),
                 every([&](const std::string& v) { return notP(v); })});
  }

  ExprP would();
  ExprP might();
  ExprP uwould();
  ExprP emight();
  ExprP would_min();
  ExprP might_min();
  ExprP uwould_min();
  ExprP emight_min();

  Formula phi_, psi_;
  const SimilaritySpec& sim_;
  Formula universe_;
  std::string ref_;
  std::size_t next_;
};

// exists w1. forall w2. (U_w1 & phi_w1 & (U_w2 -> (w2 <= w1 -> (phi -> psi)_w2))) | (U_w2 -> !phi_w2)
// The right disjunct holding for every w2 is the vacuous case; otherwise
// some w2 refutes it, which pins the left disjunct for the chosen w1.
ExprP Encoder::would() {
  const std::string w1 = fresh(), w2 = fresh();
  ExprP main = land({in(w1), P(w1), limp(in(w2), limp(le(w2, w1), limp(P(w2), Q(w2))))});
  ExprP vacuous = limp(in(w2), notP(w2));
  return quant(TraceQuant::Exists, w1, quant(TraceQuant::Forall, w2, lor(main, vacuous)));
}

ExprP Encoder::might() {
  ExprP exists_phi = some([&](const std::string& v) { return P(v); });
  ExprP chains = every([&](const std::string& w1) {
    return limp(P(w1), some([&](const std::string& w2) { return land({le(w2, w1), P(w2), Q(w2)}); }));
  });
  return land({exists_phi, chains});
}

// The vacuous disjunct is implied by the universal one, which holds
// trivially when no world satisfies phi.
ExprP Encoder::uwould() {
  return every([&](const std::string& w1) {
    return limp(P(w1), some([&](const std::string& w2) {
      return land({le(w2, w1), P(w2), every([&](const std::string& w3) {
                     return limp(le(w3, w2), limp(P(w3), Q(w3)));
                   })});
    }));
  });
}

ExprP Encoder::emight() {
  return some([&](const std::string& w1) {
    return land({P(w1), every([&](const std::string& w2) {
                   return limp(land({le(w2, w1), P(w2)}), some([&](const std::string& w3) {
                                 return land({le(w3, w2), P(w3), Q(w3)});
                               }));
                 })});
  });
}

ExprP Encoder::would_min() {
  ExprP empty = empty_branch();
  ExprP main = some([&](const std::string& wc) {
    return land({P(wc), every([&](const std::string& w2) {
                   ExprP closer = limp(
                       le(w2, wc),
                       land({leaf(iff(index_formula(phi_, w2), index_formula(psi_, w2))),
                             limp(Q(w2), every([&](const std::string& wi) { return limp(nle(wi, w2), P(wi)); }))}));
                   ExprP other = limp(
                       land({nle(w2, wc), Q(w2), some([&](const std::string& wn) {
                               return land({le(wn, wc), nle(wn, w2), notP(wn)});
                             })}),
                       some([&](const std::string& wp) { return land({le(wp, w2), P(wp), notQ(wp)}); }));
                   return land({closer, other});
                 })});
  });
  return lor(empty, main);
}

// Exactly the proof display: exists p1. forall p2. exists p3. forall p4.
ExprP Encoder::might_min() {
  return some([&](const std::string& w1) {
    return land({P(w1), every([&](const std::string& w2) {
                   return limp(P(w2), some([&](const std::string& wc) {
                                 return land({le(wc, w2), P(wc), Q(wc), every([&](const std::string& w4) {
                                                return land({limp(nle(wc, w4), limp(notP(w4), notQ(w4))),
                                                             limp(le(wc, w4), P(w4))});
                                              })});
                               }));
                 })});
  });
}

ExprP Encoder::uwould_min() {
  ExprP empty = empty_branch();
  ExprP main = some([&](const std::string& wh) {
    return land({P(wh), every([&](const std::string& w1) {
                   return limp(P(w1), some([&](const std::string& wc) {
                                 return land(
                                     {le(wc, w1), P(wc), every([&](const std::string& w3) {
                                        return land(
                                            {limp(le(w3, wc), leaf(iff(index_formula(phi_, w3), index_formula(psi_, w3)))),
                                             limp(land({le(wc, w3), nle(w3, wc)}), P(w3)),
                                             limp(land({nle(w3, wc), nle(wc, w3)}), limp(notP(w3), notQ(w3)))});
                                      })});
                               }));
                 })});
  });
  return lor(empty, main);
}

ExprP Encoder::emight_min() {
  return some([&](const std::string& w1) {
    return land({P(w1), every([&](const std::string& w2) {
                   return limp(land({le(w2, w1), P(w2)}), some([&](const std::string& wc) {
                                 return land({le(wc, w2), P(wc), Q(wc), every([&](const std::string& wh) {
                                                ExprP strictly_closer = land({le(wh, wc), nle(wc, wh)});
                                                ExprP inside = limp(strictly_closer, limp(notP(wh), notQ(wh)));
                                                ExprP clean = some([&](const std::string& wp) {
                                                  return land({le(wp, wh), P(wp), every([&](const std::string& wq) {
                                                                 return limp(le(wq, wp), notQ(wq));
                                                               })});
                                                });
                                                ExprP blocked = some([&](const std::string& wn) {
                                                  return land({le(wn, wc), nle(wn, wh), notP(wn)});
                                                });
                                                ExprP outside = limp(lnot(strictly_closer),
                                                                     land({P(wh), limp(land({Q(wh), blocked}), clean)}));
                                                return land({inside, outside});
                                              })});
                               }));
                 })});
  });
}

ExprP Encoder::encode(CfOp op) {
  switch (op) {
    case CfOp::Would: return would();
    case CfOp::Might: return might();
    case CfOp::UWould: return uwould();
    case CfOp::EMight: return emight();
    case CfOp::WouldMin: return would_min();
    case CfOp::MightMin: return might_min();
    case CfOp::UWouldMin: return uwould_min();
    case CfOp::EMightMin: return emight_min();
  }
  throw Error("unknown operator");
}

std::string note_for(CfOp op, const Formula& phi, const Formula& psi) {
  const std::string text = render_formula(CfFormula::conditional(op, phi, psi));
  if (op == CfOp::MightMin) return text + ": minimal-might display";
  if (is_minimal(op)) return text + ": derived encoding (first-order minimality)";
  return text + ": derived encoding (operator semantics)";
}

// Encodes the conditionals of xi over reference `ref`.
ExprP encode_cf(const CfFormula& xi, const SimilaritySpec& sim, const Formula& universe, const std::string& ref,
                std::size_t& next, std::vector<std::string>& notes, std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  switch (xi.kind()) {
    case CfFormula::Kind::Plain: return leaf(index_formula(xi.formula(), ref));
    case CfFormula::Kind::Conditional: {
      Encoder enc(xi.antecedent(), xi.consequent(), sim, universe, ref, next);
      ExprP e = enc.encode(xi.op());
      ranges.emplace_back(next, enc.next_index());
      next = enc.next_index();
      notes.push_back(note_for(xi.op(), xi.antecedent(), xi.consequent()));
      return e;
    }
    case CfFormula::Kind::And:
      return land({encode_cf(xi.left(), sim, universe, ref, next, notes, ranges),
                   encode_cf(xi.right(), sim, universe, ref, next, notes, ranges)});
    case CfFormula::Kind::Not: return lnot(encode_cf(xi.operand(), sim, universe, ref, next, notes, ranges));
  }
  throw Error("unknown formula kind");
}

// Interleaves the quantifier runs of different conditionals, always
// continuing with the current quantifier kind. Sound because each
// conditional's encoding occurs once in the matrix and shares no variable.
std::vector<TraceBinder> flatten_prefix(const std::vector<TraceBinder>& prefix,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  std::vector<std::vector<TraceBinder>> groups(ranges.size());
  for (const auto& b : prefix) {
    const std::size_t k = std::stoul(b.var.substr(1));
    for (std::size_t g = 0; g < ranges.size(); ++g)
      if (k >= ranges[g].first && k < ranges[g].second) groups[g].push_back(b);
  }
  std::vector<std::size_t> pos(groups.size(), 0);
  std::vector<TraceBinder> out;
  TraceQuant current = prefix.front().quant;
  while (out.size() < prefix.size()) {
    for (std::size_t g = 0; g < groups.size(); ++g)
      while (pos[g] < groups[g].size() && groups[g][pos[g]].quant == current) out.push_back(groups[g][pos[g]++]);
    current = dual(current);
  }
  return out;
}

HyperFormula finish(ExprP body, TraceQuant top, const std::string& ref, std::vector<std::string> notes,
                    const EmitOptions& opts, const std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  auto [prefix, matrix] = prenex(body);
  if (opts.flatten && ranges.size() > 1 && !prefix.empty()) prefix = flatten_prefix(prefix, ranges);
  prefix.insert(prefix.begin(), TraceBinder{top, ref});
  return HyperFormula{std::move(prefix), matrix, std::move(notes)};
}

}  // namespace

std::string indexed_name(const std::string& prop, const std::string& var) { return prop + "@" + var; }

Formula index_formula(const Formula& f, const std::string& var) {
  return rename_all(f, [&](const std::string& name) { return indexed_name(name, var); });
}

SimilaritySpec SimilaritySpec::subset(std::vector<std::string> props) {
  SimilaritySpec s;
  s.kind = Kind::Subset;
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());
  s.props = std::move(props);
  return s;
}

SimilaritySpec SimilaritySpec::explicit_qptl(Formula relation) {
  for (const auto& a : free_atoms(relation)) {
    const auto cut = a.rfind('_');
    const std::string tail = cut == std::string::npos ? "" : a.substr(cut + 1);
    if (cut == 0 || (tail != "p1" && tail != "p2" && tail != "p3"))
      throw Error("similarity atom '" + a + "' does not end in _p1, _p2 or _p3");
  }
  SimilaritySpec s;
  s.kind = Kind::Explicit;
  s.relation = std::move(relation);
  return s;
}

namespace {

// phi_R with a chosen atom naming.
Formula similarity_with(const SimilaritySpec& sim, const std::function<std::string(const std::string&, int)>& name) {
  if (sim.kind == SimilaritySpec::Kind::Explicit)
    return map_free_atoms(sim.relation, [&](const std::string& a) {
      const auto cut = a.rfind('_');
      return atom(name(a.substr(0, cut), a[cut + 2] - '0'));
    });
  std::vector<Formula> parts;
  for (const auto& x : sim.props)
    parts.push_back(disj(iff(atom(name(x, 1)), atom(name(x, 2))), negate(iff(atom(name(x, 1)), atom(name(x, 3))))));
  return globally(conj_all(parts));
}

}  // namespace

Formula similarity_formula(const SimilaritySpec& sim) {
  return similarity_with(sim, [](const std::string& x, int k) { return x + "_p" + std::to_string(k); });
}

Formula similarity_instance(const SimilaritySpec& sim, const std::string& ref, const std::string& a,
                            const std::string& b) {
  const std::string vars[] = {ref, a, b};
  Formula f = similarity_with(sim, [&](const std::string& x, int k) { return indexed_name(x, vars[k - 1]); });
  // Bound propositions of an explicit relation are indexed by all three
  // variables so separate instances stay apart.
  if (sim.kind == SimilaritySpec::Kind::Explicit && !quantifier_free(f)) {
    const std::string tag = ref + "." + a + "." + b;
    f = rename_all(f, [&](const std::string& n) { return n.find('@') == std::string::npos ? n + "@" + tag : n; });
  }
  return f;
}

Formula lasso_formula(const LassoTrace& t) {
  const Alphabet& ab = t.alphabet();
  auto valuation = [&](Letter l) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < ab.size(); ++i)
      lits.push_back(((l >> i) & 1U) ? atom(ab.name(i)) : negate(atom(ab.name(i))));
    return conj_all(lits);
  };
  auto shift = [](Formula f, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) f = next_time(f);
    return f;
  };
  const std::size_t p = t.prefix_length(), l = t.loop_length();
  std::vector<Formula> parts;
  for (std::size_t k = 0; k < p; ++k) parts.push_back(shift(valuation(t.prefix()[k]), k));
  if (l == 1) {
    parts.push_back(shift(globally(valuation(t.loop()[0])), p));
  } else {
    for (std::size_t k = 0; k < l; ++k) parts.push_back(shift(valuation(t.loop()[k]), p + k));
    std::vector<Formula> periodic;
    for (const auto& a : ab.names()) periodic.push_back(iff(atom(a), shift(atom(a), l)));
    parts.push_back(shift(globally(conj_all(periodic)), p));
  }
  return conj_all(parts);
}

HyperFormula emit_fo_counterfactual(CfOp op, const Formula& phi, const Formula& psi, const SimilaritySpec& sim,
                                    const Formula& universe, const std::string& reference, std::size_t first_index) {
  Encoder enc(phi, psi, sim, universe, reference, first_index);
  auto [prefix, matrix] = prenex(enc.encode(op));
  return HyperFormula{std::move(prefix), matrix, {note_for(op, phi, psi)}};
}

HyperFormula emit_sat(const CfFormula& xi, const SimilaritySpec& sim, const Formula& universe,
                      const EmitOptions& opts) {
  std::size_t next = 1;
  std::vector<std::string> notes;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ExprP body = encode_cf(xi, sim, universe, opts.reference_var, next, notes, ranges);
  return finish(body, TraceQuant::Exists, opts.reference_var, std::move(notes), opts, ranges);
}

HyperFormula emit_trace_check(const LassoTrace& t, const CfFormula& xi, const SimilaritySpec& sim,
                              const Formula& universe, const EmitOptions& opts) {
  std::size_t next = 1;
  std::vector<std::string> notes;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ExprP body = encode_cf(xi, sim, universe, opts.reference_var, next, notes, ranges);
  // Atoms the trace does not list are false on it; pin them too.
  std::set<std::string> names = free_atoms(xi);
  for (const auto& a : free_atoms(universe)) names.insert(a);
  for (const auto& a : t.alphabet().names()) names.insert(a);
  if (sim.kind == SimilaritySpec::Kind::Subset)
    names.insert(sim.props.begin(), sim.props.end());
  else
    for (const auto& a : free_atoms(sim.relation)) names.insert(a.substr(0, a.rfind('_')));
  const LassoTrace full = t.with_alphabet(Alphabet({names.begin(), names.end()})).canonical();
  ExprP guarded = limp(leaf(index_formula(lasso_formula(full), opts.reference_var)), body);
  return finish(guarded, TraceQuant::Forall, opts.reference_var, std::move(notes), opts, ranges);
}

std::size_t alternations(const std::vector<TraceBinder>& prefix) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i].quant != prefix[i - 1].quant) ++n;
  return n;
}

std::string HyperPrinter::binder(const TraceBinder& b) const {
  return std::string(b.quant == TraceQuant::Exists ? "exists " : "forall ") + b.var + ".";
}

std::string HyperPrinter::indexed_atom(const std::string& prop, const std::string& var) const {
  return prop + "_" + var;
}

std::string HyperPrinter::print(const HyperFormula& h) const {
  std::string out;
  for (const auto& n : h.notes) out += "# " + n + "\n";
  for (const auto& b : h.prefix) out += binder(b) + " ";
  out += render_formula(rename_all(h.matrix, [&](const std::string& name) {
    const auto at = name.find('@');
    return at == std::string::npos ? name : indexed_atom(name.substr(0, at), name.substr(at + 1));
  }));
  out += "\n";
  return out;
}

std::string render_hyper(const HyperFormula& h, const HyperPrinter& printer) { return printer.print(h); }

}  // namespace qcf
