#include "qcf/syntax.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

#include "qcf/error.hpp"

namespace qcf {

namespace {

enum class Tok {
  End,
  Ident,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Eventually,
  Globally,
  Until,
  Release,
  Exists,
  Forall,
  Dot,
  LParen,
  RParen,
  Cf,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
  CfOp cf = CfOp::Would;
};

std::optional<Tok> reserved_word(std::string_view w) {
  if (w == "X") return Tok::Next;
  if (w == "F") return Tok::Eventually;
  if (w == "G") return Tok::Globally;
  if (w == "U") return Tok::Until;
  if (w == "R") return Tok::Release;
  if (w == "true") return Tok::True;
  if (w == "false") return Tok::False;
  if (w == "exists") return Tok::Exists;
  if (w == "forall") return Tok::Forall;
  if (cf_op_from_keyword(w)) return Tok::Cf;
  return std::nullopt;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, {}, line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.text = std::string(s.substr(i, j - i));
      auto kw = reserved_word(t.text);
      t.kind = kw ? *kw : Tok::Ident;
      if (t.kind == Tok::Cf) t.cf = *cf_op_from_keyword(t.text);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    std::size_t len = 1;
    switch (c) {
      case '!': t.kind = Tok::Not; break;
      case '&': t.kind = Tok::And; break;
      case '|': t.kind = Tok::Or; break;
      case '.': t.kind = Tok::Dot; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '-':
        if (s.substr(i, 2) != "->") throw SyntaxError("expected '->'", line, col);
        t.kind = Tok::Implies;
        len = 2;
        break;
      case '<':
        if (s.substr(i, 3) != "<->") throw SyntaxError("expected '<->'", line, col);
        t.kind = Tok::Iff;
        len = 3;
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(s.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "end of input", line, col});
  return out;
}

// Untyped parse tree; counterfactual nodes may still sit anywhere.
struct Expr {
  enum Kind { Leaf, Unary, Binary, Quant, Cond } kind;
  Op op = Op::True;
  CfOp cf = CfOp::Would;
  std::string name;
  std::vector<std::unique_ptr<Expr>> kids;
  std::size_t line = 0, column = 0;
};
using ExprPtr = std::unique_ptr<Expr>;

ExprPtr make_expr(Expr::Kind kind, const Token& at) {
  auto e = std::make_unique<Expr>();
  e->kind = kind;
  e->line = at.line;
  e->column = at.column;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  ExprPtr parse_all() {
    ExprPtr e = cf_level();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::Cf)
        fail("counterfactual operators are non-associative; add parentheses");
      fail("unexpected '" + peek().text + "'");
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
  }

  ExprPtr binary(Op op, const Token& at, ExprPtr l, ExprPtr r) {
    auto e = make_expr(Expr::Binary, at);
    e->op = op;
    e->kids.push_back(std::move(l));
    e->kids.push_back(std::move(r));
    return e;
  }

  ExprPtr cf_level() {
    ExprPtr lhs = iff_level();
    if (peek().kind == Tok::Cf) {
      const Token& t = take();
      ExprPtr rhs = iff_level();
      auto e = make_expr(Expr::Cond, t);
      e->cf = t.cf;
      e->kids.push_back(std::move(lhs));
      e->kids.push_back(std::move(rhs));
      return e;
    }
    return lhs;
  }

  ExprPtr iff_level() {
    ExprPtr lhs = implies_level();
    while (peek().kind == Tok::Iff) {
      const Token& t = take();
      lhs = binary(Op::Iff, t, std::move(lhs), implies_level());
    }
    return lhs;
  }

  ExprPtr implies_level() {
    ExprPtr lhs = or_level();
    if (peek().kind == Tok::Implies) {
      const Token& t = take();
      return binary(Op::Implies, t, std::move(lhs), implies_level());
    }
    return lhs;
  }

  ExprPtr or_level() {
    ExprPtr lhs = and_level();
    while (peek().kind == Tok::Or) {
      const Token& t = take();
      lhs = binary(Op::Or, t, std::move(lhs), and_level());
    }
    return lhs;
  }

  ExprPtr and_level() {
    ExprPtr lhs = until_level();
    while (peek().kind == Tok::And) {
      const Token& t = take();
      lhs = binary(Op::And, t, std::move(lhs), until_level());
    }
    return lhs;
  }

  ExprPtr until_level() {
    ExprPtr lhs = unary_level();
    if (peek().kind == Tok::Until || peek().kind == Tok::Release) {
      const Token& t = take();
      Op op = t.kind == Tok::Until ? Op::Until : Op::Release;
      return binary(op, t, std::move(lhs), until_level());
    }
    return lhs;
  }

  ExprPtr unary_level() {
    const Token& t = peek();
    Op op;
    switch (t.kind) {
      case Tok::Not: op = Op::Not; break;
      case Tok::Next: op = Op::Next; break;
      case Tok::Eventually: op = Op::Eventually; break;
      case Tok::Globally: op = Op::Globally; break;
      case Tok::Exists:
      case Tok::Forall: {
        take();
        const Token& name = peek();
        if (name.kind != Tok::Ident) fail("expected proposition name after quantifier");
        take();
        expect(Tok::Dot, "'.'");
        auto e = make_expr(Expr::Quant, t);
        e->op = t.kind == Tok::Exists ? Op::Exists : Op::Forall;
        e->name = name.text;
        e->kids.push_back(iff_level());
        return e;
      }
      default:
        return primary();
    }
    take();
    auto e = make_expr(Expr::Unary, t);
    e->op = op;
    e->kids.push_back(unary_level());
    return e;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
      case Tok::True:
      case Tok::False: {
        take();
        auto e = make_expr(Expr::Leaf, t);
        e->op = t.kind == Tok::Ident ? Op::Atom : (t.kind == Tok::True ? Op::True : Op::False);
        e->name = t.kind == Tok::Ident ? t.text : std::string();
        return e;
      }
      case Tok::LParen: {
        take();
        ExprPtr e = cf_level();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Cf:
        fail("counterfactual '" + t.text + "' is missing its antecedent");
      default:
        fail("expected a formula, found '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool has_cond(const Expr& e) {
  if (e.kind == Expr::Cond) return true;
  for (const auto& k : e.kids)
    if (has_cond(*k)) return true;
  return false;
}

Formula to_formula(const Expr& e) {
  switch (e.kind) {
    case Expr::Leaf:
      return Formula::make(e.op, e.name, {});
    case Expr::Quant:
      return Formula::make(e.op, e.name, {to_formula(*e.kids[0])});
    case Expr::Cond:
      throw NestingError("counterfactual '" + std::string(keyword(e.cf)) + "' at " +
                         std::to_string(e.line) + ":" + std::to_string(e.column) +
                         " is nested below a temporal or counterfactual operator");
    default: {
      std::vector<Formula> kids;
      for (const auto& k : e.kids) kids.push_back(to_formula(*k));
      return Formula::make(e.op, {}, std::move(kids));
    }
  }
}

CfFormula lift(const Expr& e) {
  if (!has_cond(e)) return CfFormula::plain(to_formula(e));
  if (e.kind == Expr::Cond)
    return CfFormula::conditional(e.cf, to_formula(*e.kids[0]), to_formula(*e.kids[1]));
  if (e.kind == Expr::Unary && e.op == Op::Not) return CfFormula::negate(lift(*e.kids[0]));
  if (e.kind == Expr::Binary) {
    switch (e.op) {
      case Op::And:
        return CfFormula::conj(lift(*e.kids[0]), lift(*e.kids[1]));
      case Op::Or:
        return CfFormula::disj(lift(*e.kids[0]), lift(*e.kids[1]));
      case Op::Implies:
        return CfFormula::implies(lift(*e.kids[0]), lift(*e.kids[1]));
      case Op::Iff: {
        CfFormula a = lift(*e.kids[0]);
        CfFormula b = lift(*e.kids[1]);
        return CfFormula::conj(CfFormula::implies(a, b), CfFormula::implies(b, a));
      }
      default:
        break;
    }
  }
  return CfFormula::plain(to_formula(e));  // throws NestingError
}

// ---------------------------------------------------------------------------
// Rendering

int precedence(Op op) {
  switch (op) {
    case Op::Exists:
    case Op::Forall:
      return 0;
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Until:
    case Op::Release: return 5;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally: return 6;
    default: return 7;
  }
}

bool right_assoc(Op op) { return op == Op::Implies || op == Op::Until || op == Op::Release; }

std::string_view symbol(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    case Op::Next: return "X ";
    case Op::Until: return " U ";
    case Op::Release: return " R ";
    case Op::Eventually: return "F ";
    case Op::Globally: return "G ";
    case Op::Exists: return "exists ";
    case Op::Forall: return "forall ";
    default: return "";
  }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render(f, out);
  if (parens) out += ')';
}

void render(const Formula& f, std::string& out) {
  const Op op = f.op();
  const int p = precedence(op);
  switch (op) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f.name(); return;
    case Op::Exists:
    case Op::Forall:
      out += symbol(op);
      out += f.name();
      out += ". ";
      render(f.lhs(), out);
      return;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
      out += symbol(op);
      render_child(f.lhs(), precedence(f.lhs().op()) < p, out);
      return;
    default: {
      const int pl = precedence(f.lhs().op());
      const int pr = precedence(f.rhs().op());
      const bool ra = right_assoc(op);
      render_child(f.lhs(), pl < p || (pl == p && ra) || pl == 0, out);
      out += symbol(op);
      render_child(f.rhs(), pr < p || (pr == p && !ra) || pr == 0, out);
    }
  }
}

void render(const CfFormula& f, std::string& out);

void render_member(const CfFormula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render(f, out);
  if (parens) out += ')';
}

void render(const CfFormula& f, std::string& out) {
  switch (f.kind()) {
    case CfFormula::Kind::Plain:
      render(f.formula(), out);
      return;
    case CfFormula::Kind::Conditional:
      render(f.antecedent(), out);
      out += ' ';
      out += keyword(f.op());
      out += ' ';
      render(f.consequent(), out);
      return;
    case CfFormula::Kind::And: {
      const auto& l = f.left();
      const auto& r = f.right();
      const bool lp = l.kind() == CfFormula::Kind::Conditional ||
                      (l.kind() == CfFormula::Kind::Plain && precedence(l.formula().op()) < 4);
      const bool rp = r.kind() == CfFormula::Kind::Conditional || r.kind() == CfFormula::Kind::And ||
                      (r.kind() == CfFormula::Kind::Plain && precedence(r.formula().op()) <= 4);
      render_member(l, lp, out);
      out += " & ";
      render_member(r, rp, out);
      return;
    }
    case CfFormula::Kind::Not: {
      const auto& c = f.operand();
      const bool cp = c.kind() != CfFormula::Kind::Plain || precedence(c.formula().op()) < 6;
      out += '!';
      render_member(c, cp, out);
      return;
    }
  }
}

}  // namespace

CfFormula parse_formula(std::string_view text) {
  Parser p(text);
  ExprPtr e = p.parse_all();
  CfFormula f = canonical(lift(*e));
  check_scoping(f);
  return f;
}

Formula parse_plain_formula(std::string_view text) {
  Parser p(text);
  ExprPtr e = p.parse_all();
  if (has_cond(*e)) throw NestingError("counterfactual operator not allowed here");
  Formula f = to_formula(*e);
  check_scoping(f);
  return f;
}

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

std::string render_formula(const CfFormula& f) {
  std::string out;
  render(f, out);
  return out;
}

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !ident_start(name.front())) return false;
  for (char c : name)
    if (!ident_char(c)) return false;
  return !reserved_word(name);
}

}  // namespace qcf
