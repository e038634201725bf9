#pragma once

// Abstract syntax for QPTL bodies and top-level counterfactual formulas.
//
// A Formula is an immutable, reference-counted tree; copies are cheap and
// share structure. A CfFormula combines Formulas and the eight counterfactual
// conditionals with conjunction and negation. Conditionals never appear
// inside a Formula, so "no nesting" holds by construction.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qcf {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Until,
  Release,
  Eventually,
  Globally,
  Exists,
  Forall,
};

class Formula {
 public:
  /// The constant `true`.
  Formula();

  Op op() const { return node_->op; }
  /// Atom name, or the proposition bound by a quantifier.
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->kids.size(); }
  const Formula& child(std::size_t i) const { return node_->kids[i]; }
  const Formula& lhs() const { return node_->kids.front(); }
  const Formula& rhs() const { return node_->kids.back(); }
  const std::vector<Formula>& children() const { return node_->kids; }

  bool is_atom() const { return op() == Op::Atom; }
  bool is_quantifier() const { return op() == Op::Exists || op() == Op::Forall; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  static Formula make(Op op, std::string name, std::vector<Formula> kids);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Formula> kids;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula make_true();
Formula make_false();
Formula atom(std::string name);
Formula negate(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next_time(Formula f);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula eventually(Formula f);
Formula globally(Formula f);
Formula exists(std::string prop, Formula body);
Formula forall(std::string prop, Formula body);

/// Left-folded conjunction; `true` for an empty list.
Formula conj_all(const std::vector<Formula>& fs);
/// Left-folded disjunction; `false` for an empty list.
Formula disj_all(const std::vector<Formula>& fs);

/// Free atomic propositions (quantifier-bound names excluded).
std::set<std::string> free_atoms(const Formula& f);

/// Rewrites derived operators (or, implies, iff, F, G, R) into the core
/// connectives not/and/next/until and the constants.
Formula normalize(const Formula& f);

/// True iff the formula uses no propositional quantifier.
bool quantifier_free(const Formula& f);
/// True iff the formula uses no temporal operator.
bool is_propositional(const Formula& f);
/// Maximal nesting depth of X, counting nothing else.
std::size_t next_depth(const Formula& f);

/// Renames free atoms through `rename`; bound names are left untouched.
template <class Fn>
Formula map_free_atoms(const Formula& f, Fn&& rename);

// --------------------------------------------------------------------------
// Counterfactual layer

enum class CfOp : std::uint8_t {
  Would,
  Might,
  UWould,
  EMight,
  WouldMin,
  MightMin,
  UWouldMin,
  EMightMin,
};

inline constexpr CfOp kAllCfOps[] = {CfOp::Would,    CfOp::Might,    CfOp::UWould,
                                     CfOp::EMight,   CfOp::WouldMin, CfOp::MightMin,
                                     CfOp::UWouldMin, CfOp::EMightMin};

std::string_view keyword(CfOp op);
std::optional<CfOp> cf_op_from_keyword(std::string_view word);
bool is_minimal(CfOp op);
/// The non-minimal operator underlying `op` (identity for non-minimal ones).
CfOp base_op(CfOp op);
CfOp minimal_version(CfOp op);

class CfFormula {
 public:
  enum class Kind : std::uint8_t { Plain, Conditional, And, Not };

  /// plain(true).
  CfFormula();

  static CfFormula plain(Formula f);
  static CfFormula conditional(CfOp op, Formula antecedent, Formula consequent);
  static CfFormula conj(CfFormula a, CfFormula b);
  static CfFormula negate(CfFormula a);
  /// Desugared to and/not.
  static CfFormula disj(CfFormula a, CfFormula b);
  static CfFormula implies(CfFormula a, CfFormula b);

  Kind kind() const { return node_->kind; }
  /// Plain kind only.
  const Formula& formula() const { return node_->first; }
  /// Conditional kind only.
  CfOp op() const { return node_->op; }
  const Formula& antecedent() const { return node_->first; }
  const Formula& consequent() const { return node_->second; }
  /// And / Not kinds.
  const CfFormula& left() const { return node_->kids.front(); }
  const CfFormula& right() const { return node_->kids.back(); }
  const CfFormula& operand() const { return node_->kids.front(); }

  bool has_conditional() const;

  friend bool operator==(const CfFormula& a, const CfFormula& b);
  friend bool operator!=(const CfFormula& a, const CfFormula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    CfOp op = CfOp::Would;
    Formula first;
    Formula second;
    std::vector<CfFormula> kids;
  };
  explicit CfFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_atoms(const CfFormula& f);

/// Flattens the top-level conjunction spine.
std::vector<CfFormula> conjuncts(const CfFormula& f);

/// Collects the conditionals in left-to-right order.
std::vector<CfFormula> conditionals(const CfFormula& f);

/// The representative the parser produces for `f`: every maximal
/// conditional-free subtree is folded into a single plain node.
CfFormula canonical(const CfFormula& f);

/// Normalizes every embedded Formula.
CfFormula normalize(const CfFormula& f);

/// Rejects quantifiers that shadow an enclosing binder or reuse a name that
/// occurs free anywhere in the formula. Throws ScopeError.
void check_scoping(const CfFormula& f);
void check_scoping(const Formula& f);

// --------------------------------------------------------------------------

template <class Fn>
Formula map_free_atoms(const Formula& f, Fn&& rename) {
  struct Walker {
    Fn& fn;
    std::vector<std::string> bound;
    Formula operator()(const Formula& g) {
      switch (g.op()) {
        case Op::True:
        case Op::False:
          return g;
        case Op::Atom:
          for (const auto& b : bound)
            if (b == g.name()) return g;
          return fn(g.name());
        case Op::Exists:
        case Op::Forall: {
          bound.push_back(g.name());
          Formula body = (*this)(g.lhs());
          bound.pop_back();
          return Formula::make(g.op(), g.name(), {body});
        }
        default: {
          std::vector<Formula> kids;
          kids.reserve(g.arity());
          for (const auto& k : g.children()) kids.push_back((*this)(k));
          return Formula::make(g.op(), {}, std::move(kids));
        }
      }
    }
  };
  Walker w{rename, {}};
  return w(f);
}

}  // namespace qcf
