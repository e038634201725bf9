#include "qcf/formula.hpp"

#include <algorithm>
#include <array>
#include <cassert>

#include "qcf/error.hpp"

namespace qcf {

Formula::Formula() : Formula(make(Op::True, {}, {})) {}

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(kids)}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.child(i) != b.child(i)) return false;
  return true;
}

Formula make_true() { return Formula::make(Op::True, {}, {}); }
Formula make_false() { return Formula::make(Op::False, {}, {}); }
Formula atom(std::string name) { return Formula::make(Op::Atom, std::move(name), {}); }
Formula negate(Formula f) { return Formula::make(Op::Not, {}, {std::move(f)}); }
Formula conj(Formula a, Formula b) { return Formula::make(Op::And, {}, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return Formula::make(Op::Or, {}, {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) {
  return Formula::make(Op::Implies, {}, {std::move(a), std::move(b)});
}
Formula iff(Formula a, Formula b) { return Formula::make(Op::Iff, {}, {std::move(a), std::move(b)}); }
Formula next_time(Formula f) { return Formula::make(Op::Next, {}, {std::move(f)}); }
Formula until(Formula a, Formula b) { return Formula::make(Op::Until, {}, {std::move(a), std::move(b)}); }
Formula release(Formula a, Formula b) {
  return Formula::make(Op::Release, {}, {std::move(a), std::move(b)});
}
Formula eventually(Formula f) { return Formula::make(Op::Eventually, {}, {std::move(f)}); }
Formula globally(Formula f) { return Formula::make(Op::Globally, {}, {std::move(f)}); }
Formula exists(std::string prop, Formula body) {
  return Formula::make(Op::Exists, std::move(prop), {std::move(body)});
}
Formula forall(std::string prop, Formula body) {
  return Formula::make(Op::Forall, std::move(prop), {std::move(body)});
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return make_true();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return make_false();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Atom:
      if (std::find(bound.begin(), bound.end(), f.name()) == bound.end()) out.insert(f.name());
      return;
    case Op::Exists:
    case Op::Forall:
      bound.push_back(f.name());
      collect_free(f.lhs(), bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& k : f.children()) collect_free(k, bound, out);
  }
}

}  // namespace

std::set<std::string> free_atoms(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

Formula normalize(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::Not:
      return negate(normalize(f.lhs()));
    case Op::And:
      return conj(normalize(f.lhs()), normalize(f.rhs()));
    case Op::Or:
      return negate(conj(negate(normalize(f.lhs())), negate(normalize(f.rhs()))));
    case Op::Implies:
      return negate(conj(normalize(f.lhs()), negate(normalize(f.rhs()))));
    case Op::Iff: {
      Formula a = normalize(f.lhs());
      Formula b = normalize(f.rhs());
      return conj(negate(conj(a, negate(b))), negate(conj(negate(a), b)));
    }
    case Op::Next:
      return next_time(normalize(f.lhs()));
    case Op::Until:
      return until(normalize(f.lhs()), normalize(f.rhs()));
    case Op::Release:
      return negate(until(negate(normalize(f.lhs())), negate(normalize(f.rhs()))));
    case Op::Eventually:
      return until(make_true(), normalize(f.lhs()));
    case Op::Globally:
      return negate(until(make_true(), negate(normalize(f.lhs()))));
    case Op::Exists:
      return exists(f.name(), normalize(f.lhs()));
    case Op::Forall:
      return forall(f.name(), normalize(f.lhs()));
  }
  return f;
}

bool quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  return std::all_of(f.children().begin(), f.children().end(), quantifier_free);
}

bool is_propositional(const Formula& f) {
  switch (f.op()) {
    case Op::Next:
    case Op::Until:
    case Op::Release:
    case Op::Eventually:
    case Op::Globally:
      return false;
    default:
      return std::all_of(f.children().begin(), f.children().end(), is_propositional);
  }
}

std::size_t next_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& k : f.children()) d = std::max(d, next_depth(k));
  return f.op() == Op::Next ? d + 1 : d;
}

// --------------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 8> kKeywords = {
    "would", "might", "uwould", "emight", "wouldmin", "mightmin", "uwouldmin", "emightmin"};

}  // namespace

std::string_view keyword(CfOp op) { return kKeywords[static_cast<std::size_t>(op)]; }

std::optional<CfOp> cf_op_from_keyword(std::string_view word) {
  for (std::size_t i = 0; i < kKeywords.size(); ++i)
    if (kKeywords[i] == word) return static_cast<CfOp>(i);
  return std::nullopt;
}

bool is_minimal(CfOp op) { return static_cast<int>(op) >= static_cast<int>(CfOp::WouldMin); }

CfOp base_op(CfOp op) {
  return is_minimal(op) ? static_cast<CfOp>(static_cast<int>(op) - 4) : op;
}

CfOp minimal_version(CfOp op) {
  return is_minimal(op) ? op : static_cast<CfOp>(static_cast<int>(op) + 4);
}

CfFormula::CfFormula() : CfFormula(plain(Formula())) {}

CfFormula CfFormula::plain(Formula f) {
  return CfFormula(std::make_shared<const Node>(Node{Kind::Plain, CfOp::Would, std::move(f), {}, {}}));
}

CfFormula CfFormula::conditional(CfOp op, Formula antecedent, Formula consequent) {
  return CfFormula(std::make_shared<const Node>(
      Node{Kind::Conditional, op, std::move(antecedent), std::move(consequent), {}}));
}

CfFormula CfFormula::conj(CfFormula a, CfFormula b) {
  return CfFormula(
      std::make_shared<const Node>(Node{Kind::And, CfOp::Would, {}, {}, {std::move(a), std::move(b)}}));
}

CfFormula CfFormula::negate(CfFormula a) {
  return CfFormula(std::make_shared<const Node>(Node{Kind::Not, CfOp::Would, {}, {}, {std::move(a)}}));
}

CfFormula CfFormula::disj(CfFormula a, CfFormula b) {
  return negate(conj(negate(std::move(a)), negate(std::move(b))));
}

CfFormula CfFormula::implies(CfFormula a, CfFormula b) {
  return negate(conj(std::move(a), negate(std::move(b))));
}

bool CfFormula::has_conditional() const {
  switch (kind()) {
    case Kind::Plain:
      return false;
    case Kind::Conditional:
      return true;
    case Kind::And:
      return left().has_conditional() || right().has_conditional();
    case Kind::Not:
      return operand().has_conditional();
  }
  return false;
}

bool operator==(const CfFormula& a, const CfFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case CfFormula::Kind::Plain:
      return a.formula() == b.formula();
    case CfFormula::Kind::Conditional:
      return a.op() == b.op() && a.antecedent() == b.antecedent() && a.consequent() == b.consequent();
    case CfFormula::Kind::And:
      return a.left() == b.left() && a.right() == b.right();
    case CfFormula::Kind::Not:
      return a.operand() == b.operand();
  }
  return false;
}

std::set<std::string> free_atoms(const CfFormula& f) {
  switch (f.kind()) {
    case CfFormula::Kind::Plain:
      return free_atoms(f.formula());
    case CfFormula::Kind::Conditional: {
      auto out = free_atoms(f.antecedent());
      auto more = free_atoms(f.consequent());
      out.insert(more.begin(), more.end());
      return out;
    }
    case CfFormula::Kind::And: {
      auto out = free_atoms(f.left());
      auto more = free_atoms(f.right());
      out.insert(more.begin(), more.end());
      return out;
    }
    case CfFormula::Kind::Not:
      return free_atoms(f.operand());
  }
  return {};
}

std::vector<CfFormula> conjuncts(const CfFormula& f) {
  if (f.kind() != CfFormula::Kind::And) return {f};
  auto out = conjuncts(f.left());
  auto more = conjuncts(f.right());
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

namespace {

void collect_conditionals(const CfFormula& f, std::vector<CfFormula>& out) {
  switch (f.kind()) {
    case CfFormula::Kind::Plain:
      return;
    case CfFormula::Kind::Conditional:
      out.push_back(f);
      return;
    case CfFormula::Kind::And:
      collect_conditionals(f.left(), out);
      collect_conditionals(f.right(), out);
      return;
    case CfFormula::Kind::Not:
      collect_conditionals(f.operand(), out);
      return;
  }
}

// Formula value of a conditional-free CfFormula.
Formula fold_plain(const CfFormula& f) {
  switch (f.kind()) {
    case CfFormula::Kind::Plain:
      return f.formula();
    case CfFormula::Kind::And:
      return conj(fold_plain(f.left()), fold_plain(f.right()));
    case CfFormula::Kind::Not:
      return negate(fold_plain(f.operand()));
    case CfFormula::Kind::Conditional:
      break;
  }
  assert(false && "fold_plain on a conditional");
  return make_true();
}

}  // namespace

std::vector<CfFormula> conditionals(const CfFormula& f) {
  std::vector<CfFormula> out;
  collect_conditionals(f, out);
  return out;
}

CfFormula canonical(const CfFormula& f) {
  if (!f.has_conditional()) return CfFormula::plain(fold_plain(f));
  switch (f.kind()) {
    case CfFormula::Kind::And:
      return CfFormula::conj(canonical(f.left()), canonical(f.right()));
    case CfFormula::Kind::Not:
      return CfFormula::negate(canonical(f.operand()));
    default:
      return f;
  }
}

CfFormula normalize(const CfFormula& f) {
  switch (f.kind()) {
    case CfFormula::Kind::Plain:
      return CfFormula::plain(normalize(f.formula()));
    case CfFormula::Kind::Conditional:
      return CfFormula::conditional(f.op(), normalize(f.antecedent()), normalize(f.consequent()));
    case CfFormula::Kind::And:
      return CfFormula::conj(normalize(f.left()), normalize(f.right()));
    case CfFormula::Kind::Not:
      return CfFormula::negate(normalize(f.operand()));
  }
  return f;
}

namespace {

void check_binders(const Formula& f, std::vector<std::string>& bound, const std::set<std::string>& free) {
  if (f.is_quantifier()) {
    if (std::find(bound.begin(), bound.end(), f.name()) != bound.end())
      throw ScopeError("quantifier over '" + f.name() + "' shadows an enclosing binder");
    if (free.count(f.name()))
      throw ScopeError("quantified proposition '" + f.name() + "' also occurs free");
    bound.push_back(f.name());
    check_binders(f.lhs(), bound, free);
    bound.pop_back();
    return;
  }
  for (const auto& k : f.children()) check_binders(k, bound, free);
}

}  // namespace

void check_scoping(const Formula& f) {
  std::vector<std::string> bound;
  check_binders(f, bound, free_atoms(f));
}

void check_scoping(const CfFormula& f) {
  const auto free = free_atoms(f);
  std::vector<std::string> bound;
  auto visit = [&](auto&& self, const CfFormula& g) -> void {
    switch (g.kind()) {
      case CfFormula::Kind::Plain:
        check_binders(g.formula(), bound, free);
        return;
      case CfFormula::Kind::Conditional:
        check_binders(g.antecedent(), bound, free);
        check_binders(g.consequent(), bound, free);
        return;
      case CfFormula::Kind::And:
        self(self, g.left());
        self(self, g.right());
        return;
      case CfFormula::Kind::Not:
        self(self, g.operand());
        return;
    }
  };
  visit(visit, f);
}

}  // namespace qcf
