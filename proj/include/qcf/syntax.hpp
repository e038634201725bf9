#pragma once

// Concrete ASCII syntax. See docs/grammar.md for the full table.

#include <string>
#include <string_view>

#include "qcf/formula.hpp"

namespace qcf {

/// Parses a top-level formula. Counterfactual keywords are accepted only
/// above the temporal layer; the result is in canonical form.
/// Throws SyntaxError, NestingError or ScopeError.
CfFormula parse_formula(std::string_view text);

/// Parses a formula without counterfactual operators.
Formula parse_plain_formula(std::string_view text);

std::string render_formula(const Formula& f);
std::string render_formula(const CfFormula& f);

/// True for names usable as atomic propositions (identifier, not a keyword).
bool is_valid_atom_name(std::string_view name);

}  // namespace qcf
