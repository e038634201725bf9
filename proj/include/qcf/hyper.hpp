#pragma once

// HyperQPTL emission for satisfiability and trace checking. Every
// conditional is rewritten into trace quantifiers guarded by the universe
// formula; the result is prenex.

#include <memory>
#include <string>
#include <vector>

#include "qcf/formula.hpp"
#include "qcf/lasso.hpp"

namespace qcf {

enum class TraceQuant : std::uint8_t { Exists, Forall };

struct TraceBinder {
  TraceQuant quant;
  std::string var;
  friend bool operator==(const TraceBinder& a, const TraceBinder& b) {
    return a.quant == b.quant && a.var == b.var;
  }
};

/// Prenex HyperQPTL. Trace-indexed atoms in the matrix are named
/// `prop@var`; use a HyperPrinter to turn them into concrete syntax.
/// Propositional quantifiers stay inside the matrix, with their bound names
/// indexed like atoms so copies for different traces never clash.
struct HyperFormula {
  std::vector<TraceBinder> prefix;
  Formula matrix;
  /// One line per conditional, in formula order.
  std::vector<std::string> notes;
};

/// `prop@var`
std::string indexed_name(const std::string& prop, const std::string& var);
/// Every atom and bound proposition of f, indexed with `var`.
Formula index_formula(const Formula& f, const std::string& var);

struct SimilaritySpec {
  enum class Kind : std::uint8_t { Subset, Explicit };
  Kind kind = Kind::Subset;
  /// Subset kind.
  std::vector<std::string> props;
  /// Explicit kind: a QPTL formula whose atoms end in _p1 (reference),
  /// _p2 and _p3, read as "p2 is at most as far from p1 as p3".
  Formula relation;

  static SimilaritySpec subset(std::vector<std::string> props);
  static SimilaritySpec explicit_qptl(Formula relation);
};

/// The relation over the placeholder traces p1, p2, p3, in ASCII form
/// (atoms `x_p1`).
Formula similarity_formula(const SimilaritySpec& sim);

/// phi_R(ref, a, b): trace a is at most as far from ref as trace b.
/// Atoms are indexed (`x@ref`).
Formula similarity_instance(const SimilaritySpec& sim, const std::string& ref, const std::string& a,
                            const std::string& b);

/// A plain LTL formula whose only model is t (over t's alphabet).
Formula lasso_formula(const LassoTrace& t);

struct EmitOptions {
  /// Merge quantifier blocks of independent conditionals to cut alternations.
  bool flatten = false;
  std::string reference_var = "p";
};

/// The encoding of one conditional relative to the reference trace variable.
/// Trace variables are p<first_index>, p<first_index+1>, ...
HyperFormula emit_fo_counterfactual(CfOp op, const Formula& phi, const Formula& psi, const SimilaritySpec& sim,
                                    const Formula& universe, const std::string& reference = "p",
                                    std::size_t first_index = 1);

/// exists p. xi with every conditional encoded.
HyperFormula emit_sat(const CfFormula& xi, const SimilaritySpec& sim, const Formula& universe,
                      const EmitOptions& opts = {});

/// forall p. phi^t_p -> xi with every conditional encoded.
HyperFormula emit_trace_check(const LassoTrace& t, const CfFormula& xi, const SimilaritySpec& sim,
                              const Formula& universe, const EmitOptions& opts = {});

/// Number of quantifier alternations in the prefix.
std::size_t alternations(const std::vector<TraceBinder>& prefix);

class HyperPrinter {
 public:
  virtual ~HyperPrinter() = default;
  virtual std::string binder(const TraceBinder& b) const;
  virtual std::string indexed_atom(const std::string& prop, const std::string& var) const;
  /// Comment lines, prefix and matrix.
  virtual std::string print(const HyperFormula& h) const;
};

/// `exists p1. forall p2. ...`, atoms `a_p1`, notes as `# ` lines.
class AsciiPrinter : public HyperPrinter {};

std::string render_hyper(const HyperFormula& h, const HyperPrinter& printer = AsciiPrinter{});

}  // namespace qcf
