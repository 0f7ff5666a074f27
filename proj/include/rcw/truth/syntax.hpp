#pragma once

// Text syntax for arithmetic formulas.
//
//   formula := disj
//   disj    := conj ('|' conj)*
//   conj    := unit ('&' unit)*
//   unit    := ('all' | 'ex') VAR ['<=' term] '.' formula
//            | '~' atom | '~' '(' atom ')' | '(' formula ')' | atom
//   atom    := PRED ['(' term (',' term)* ')'] | term '=' term | term '<=' term
//   term    := prod ('+' prod)*
//   prod    := tatom ('*' tatom)*
//   tatom   := NAT | 'S' '(' term ')' | 'exp' '(' term ')' | VAR | '(' term ')'
//
// VAR is lowercase ([a-z][a-z0-9_]*, not all/ex/exp), PRED starts uppercase
// and is not S.  NAT is decimal, read as S^n(0), n <= 100000.  `&` binds
// tighter than `|`; a quantifier body extends as far right as possible.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcw/errors.hpp"
#include "rcw/truth/formula.hpp"
#include "rcw/truth/term.hpp"

namespace rcw::truth {

namespace detail {

constexpr std::uint64_t kMaxLiteral = 100000;

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula formula() {
    Nesting guard(*this);
    Formula f = conjunction();
    while (eat("|")) f = Formula::disj(f, conjunction());
    return f;
  }

  Term term() {
    Nesting guard(*this);
    Term t = product();
    while (eat("+")) t = Term::plus(t, product());
    return t;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

 private:
  static constexpr int kMaxNesting = 2000;

  struct Nesting {
    Parser& p;
    explicit Nesting(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) p.fail("nesting too deep");
    }
    ~Nesting() { --p.depth_; }
  };

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }

  bool eat(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  /// The identifier at the cursor, without consuming it.
  std::string_view word() {
    skip();
    std::size_t e = pos_;
    while (e < s_.size() && identChar(s_[e])) ++e;
    return s_.substr(pos_, e - pos_);
  }

  bool eatKeyword(std::string_view kw) {
    if (word() != kw) return false;
    pos_ += kw.size();
    return true;
  }

  static bool isVariable(std::string_view w) {
    return !w.empty() && std::islower(static_cast<unsigned char>(w[0])) && w != "all" && w != "ex" && w != "exp";
  }

  static bool isPredicate(std::string_view w) {
    return !w.empty() && std::isupper(static_cast<unsigned char>(w[0])) && w != "S";
  }

  std::string variable() {
    auto w = word();
    if (!isVariable(w)) fail("expected a variable");
    pos_ += w.size();
    return std::string(w);
  }

  Formula conjunction() {
    Formula f = unit();
    while (eat("&")) f = Formula::conj(f, unit());
    return f;
  }

  Formula unit() {
    bool universal = eatKeyword("all");
    if (universal || eatKeyword("ex")) {
      std::string x = variable();
      std::optional<Term> bound;
      if (eat("<=")) bound = term();
      expect(".");
      Formula body = formula();
      if (bound) return universal ? Formula::boundedAll(x, *bound, body) : Formula::boundedEx(x, *bound, body);
      return universal ? Formula::all(x, body) : Formula::ex(x, body);
    }
    if (eat("~")) {
      std::size_t save = pos_;
      if (eat("(")) {
        try {
          Formula a = atom();
          expect(")");
          return deMorganNegate(a);
        } catch (const ParseError&) {
          pos_ = save;
        }
      }
      return deMorganNegate(atom());
    }
    if (peek("(")) {
      std::size_t save = pos_;
      try {
        eat("(");
        Formula f = formula();
        expect(")");
        if (!peek("=") && !peek("<=") && !peek("+") && !peek("*")) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    return atom();
  }

  Formula atom() {
    auto w = word();
    if (isPredicate(w)) {
      pos_ += w.size();
      std::vector<Term> args;
      if (eat("(")) {
        args.push_back(term());
        while (eat(",")) args.push_back(term());
        expect(")");
      }
      return Formula::pred(std::string(w), std::move(args));
    }
    Term a = term();
    if (eat("<=")) return Formula::le(a, term());
    if (eat("=")) return Formula::eq(a, term());
    fail("expected '=' or '<='");
  }

  Term product() {
    Term t = termAtom();
    while (eat("*")) t = Term::times(t, termAtom());
    return t;
  }

  Term termAtom() {
    skip();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::uint64_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        n = n * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
        if (n > kMaxLiteral) fail("numeral too large");
        ++pos_;
      }
      return Term::numeral(n);
    }
    if (eat("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    auto w = word();
    if (w == "S" || w == "exp") {
      pos_ += w.size();
      expect("(");
      Term t = term();
      expect(")");
      return w == "S" ? Term::succ(t) : Term::exp(t);
    }
    if (isVariable(w)) {
      pos_ += w.size();
      return Term::var(std::string(w));
    }
    fail("expected a term");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

inline Term parseTerm(std::string_view s) {
  detail::Parser p(s);
  Term t = p.term();
  p.finish();
  return t;
}

inline Formula parseFormula(std::string_view s) {
  detail::Parser p(s);
  Formula f = p.formula();
  p.finish();
  return f;
}

inline std::string render(const Term& t) {
  if (auto n = t.numeralValue()) return std::to_string(*n);
  auto wrap = [](const Term& u, bool paren) { return paren ? "(" + render(u) + ")" : render(u); };
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name();
    case Term::Kind::Succ:
      return "S(" + render(t.left()) + ")";
    case Term::Kind::Exp:
      return "exp(" + render(t.left()) + ")";
    case Term::Kind::Plus:
      return render(t.left()) + " + " + wrap(t.right(), t.right().kind() == Term::Kind::Plus);
    case Term::Kind::Times: {
      bool l = t.left().kind() == Term::Kind::Plus;
      bool r = t.right().kind() == Term::Kind::Plus || t.right().kind() == Term::Kind::Times;
      return wrap(t.left(), l) + " * " + wrap(t.right(), r);
    }
    case Term::Kind::Zero:
      break;
  }
  return "0";
}

inline std::string render(const Formula& f) {
  using K = Formula::Kind;
  auto args = [](const Formula& a) {
    if (a.terms().empty()) return a.name();
    std::string out = a.name() + "(";
    for (std::size_t i = 0; i < a.terms().size(); ++i) out += (i ? ", " : "") + render(a.terms()[i]);
    return out + ")";
  };
  auto rel = [](const Formula& a, const char* op) {
    return render(a.terms()[0]) + " " + op + " " + render(a.terms()[1]);
  };
  auto operand = [](const Formula& g, bool paren) { return paren ? "(" + render(g) + ")" : render(g); };
  switch (f.kind()) {
    case K::Pred: return args(f);
    case K::NegPred: return "~" + args(f);
    case K::Eq: return rel(f, "=");
    case K::NegEq: return "~(" + rel(f, "=") + ")";
    case K::Le: return rel(f, "<=");
    case K::NegLe: return "~(" + rel(f, "<=") + ")";
    case K::And:
      return operand(f.left(), f.left().kind() == K::Or || f.left().isQuantifier()) + " & " +
             operand(f.right(), !f.right().isAtomic());
    case K::Or:
      return operand(f.left(), f.left().isQuantifier()) + " | " +
             operand(f.right(), f.right().kind() == K::Or || f.right().isQuantifier());
    case K::BAll: return "all " + f.name() + " <= " + render(f.bound()) + " . " + render(f.body());
    case K::BEx: return "ex " + f.name() + " <= " + render(f.bound()) + " . " + render(f.body());
    case K::All: return "all " + f.name() + " . " + render(f.body());
    case K::Ex: return "ex " + f.name() + " . " + render(f.body());
  }
  return "?";
}

}  // namespace rcw::truth
