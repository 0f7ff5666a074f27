#pragma once

// Concrete ASCII syntax for ordinals, worms and RC formulas.
//
//   ordinal := "0" | term ("+" term)*
//   term    := base ("*" NAT)?
//   base    := NAT | "w" | "w^" atom | "phi(" ordinal "," ordinal ")"
//            | "eps(" ordinal ")" | "eps0"
//   atom    := NAT | "w" | "(" ordinal ")" | "phi(" ordinal "," ordinal ")"
//            | "eps(" ordinal ")" | "eps0"
//   worm    := "[" (ordinal ("," ordinal)*)? "]"
//   formula := conj ; conj := unary ("&" unary)*
//   unary   := "T" | IDENT | "<" ordinal ">" unary | "(" formula ")"
//
// "t*n" repeats a summand n times; sums are normalized on the fly, so
// "1+w" parses as w.  The aliases U+03C9 (omega), U+03C6 (phi), U+03B5
// (epsilon) and "eps" subscript zero U+2080 are accepted on input.

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "rcw/errors.hpp"
#include "rcw/ordinal.hpp"
#include "rcw/rc/formula.hpp"
#include "rcw/worm.hpp"

namespace rcw {

namespace detail {

/// Replaces the accepted non-ASCII aliases by their ASCII spelling.
inline std::string asciiAliases(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    if (starts("\xCE\xB5\xE2\x82\x80")) {  // epsilon, subscript zero
      out += "eps0";
      i += 5;
    } else if (starts("\xCF\x89")) {  // omega
      out += "w";
      i += 2;
    } else if (starts("\xCF\x86")) {  // phi
      out += "phi";
      i += 2;
    } else if (starts("\xCE\xB5")) {  // epsilon
      out += "eps";
      i += 2;
    } else if (starts("\xE2\x8A\xA4")) {  // top
      out += "T";
      i += 3;
    } else if (starts("\xE2\x88\xA7")) {  // logical and
      out += "&";
      i += 3;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(asciiAliases(text)) {}

  Ordinal ordinal() {
    Nesting guard(*this);
    Ordinal out = summand();
    skipSpace();
    while (peek() == '+') {
      ++pos_;
      out = add(out, summand());
      skipSpace();
    }
    return out;
  }

  Worm worm() {
    expect('[');
    std::vector<Ordinal> ls;
    skipSpace();
    if (peek() == ']') {
      ++pos_;
      return Worm(std::move(ls));
    }
    ls.push_back(ordinal());
    skipSpace();
    while (peek() == ',') {
      ++pos_;
      ls.push_back(ordinal());
      skipSpace();
    }
    expect(']');
    return Worm(std::move(ls));
  }

  rc::Formula formula() {
    std::vector<rc::Formula> parts{unary()};
    skipSpace();
    while (peek() == '&') {
      ++pos_;
      parts.push_back(unary());
      skipSpace();
    }
    return rc::Formula::conj(parts);
  }

  void finish() {
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::size_t position() const { return pos_; }

 private:
  static constexpr int kMaxNesting = 2000;

  struct Nesting {
    Parser& p;
    explicit Nesting(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) p.fail("nesting too deep");
    }
    ~Nesting() { --p.depth_; }
  };

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view word) {
    skipSpace();
    if (std::string_view(text_).substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skipSpace();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::uint64_t natural() {
    skipSpace();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      auto d = static_cast<std::uint64_t>(peek() - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  // Finite literals are expanded into unit terms; cap them to keep that sane.
  static constexpr std::uint64_t kMaxFinite = 100000;

  Ordinal finiteLiteral() {
    std::size_t at = pos_;
    std::uint64_t n = natural();
    if (n > kMaxFinite) throw ParseError("finite literal too large", at);
    return Ordinal::finite(n);
  }

  Ordinal summand() {
    Ordinal b = base();
    skipSpace();
    if (peek() == '*') {
      ++pos_;
      std::size_t at = pos_;
      std::uint64_t n = natural();
      if (n == 0 || n > kMaxFinite || b.terms().size() * n > kMaxFinite)
        throw ParseError("bad repetition count", at);
      // b is one term or finite, so b*n is its term list repeated
      std::vector<VeblenTerm> ts;
      ts.reserve(b.terms().size() * n);
      for (std::uint64_t i = 0; i < n; ++i) ts.insert(ts.end(), b.terms().begin(), b.terms().end());
      return Ordinal(std::move(ts));
    }
    return b;
  }

  Ordinal veblenForms() {
    if (accept("phi(")) {
      Ordinal a = ordinal();
      expect(',');
      Ordinal b = ordinal();
      expect(')');
      return phi(a, b);
    }
    if (accept("eps(")) {
      Ordinal a = ordinal();
      expect(')');
      return epsilon(a);
    }
    if (accept("eps0")) return epsilon(Ordinal());
    fail("expected an ordinal");
  }

  Ordinal base() {
    skipSpace();
    if (std::isdigit(static_cast<unsigned char>(peek()))) return finiteLiteral();
    if (accept("w^")) return omegaPower(atom());
    if (accept("w")) return Ordinal::omega();
    return veblenForms();
  }

  Ordinal atom() {
    skipSpace();
    if (std::isdigit(static_cast<unsigned char>(peek()))) return finiteLiteral();
    if (peek() == '(') {
      ++pos_;
      Ordinal a = ordinal();
      expect(')');
      return a;
    }
    if (accept("w")) {
      skipSpace();
      if (peek() == '^') fail("nested exponent needs parentheses");
      return Ordinal::omega();
    }
    return veblenForms();
  }

  rc::Formula unary() {
    Nesting guard(*this);
    skipSpace();
    char c = peek();
    if (c == '<') {
      ++pos_;
      Ordinal a = ordinal();
      expect('>');
      return rc::Formula::diamond(std::move(a), unary());
    }
    if (c == '(') {
      ++pos_;
      rc::Formula f = formula();
      expect(')');
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (name == "T") return rc::Formula::top();
      return rc::Formula::var(std::move(name));
    }
    fail("expected a formula");
  }

  std::string text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

inline Ordinal parseOrdinal(std::string_view s) {
  detail::Parser p(s);
  Ordinal o = p.ordinal();
  p.finish();
  return o;
}

inline Worm parseWorm(std::string_view s) {
  detail::Parser p(s);
  Worm w = p.worm();
  p.finish();
  return w;
}

inline rc::Formula parseFormula(std::string_view s) {
  detail::Parser p(s);
  rc::Formula f = p.formula();
  p.finish();
  return f;
}

// ---------------------------------------------------------------------------
// rendering

std::string render(const Ordinal& a);

namespace detail {

inline std::string renderTerm(const VeblenTerm& t) {
  if (t.isUnit()) return "1";
  if (t.index.isZero()) {
    const Ordinal& e = t.argument;
    if (e == Ordinal::finite(1)) return "w";
    // w^(w^x) needs parentheses; w, eps and phi forms do not
    bool atomic = e.isFinite() ||
                  (e.isSingleTerm() && (!e.terms()[0].index.isZero() ||
                                        e.terms()[0].argument == Ordinal::finite(1)));
    if (!atomic) return "w^(" + render(e) + ")";
    return "w^" + render(e);
  }
  if (t.index == Ordinal::finite(1)) {
    if (t.argument.isZero()) return "eps0";
    return "eps(" + render(t.argument) + ")";
  }
  return "phi(" + render(t.index) + "," + render(t.argument) + ")";
}

}  // namespace detail

inline std::string render(const Ordinal& a) {
  const auto& ts = a.terms();
  if (ts.empty()) return "0";
  std::string out;
  std::size_t i = 0;
  while (i < ts.size()) {
    if (ts[i].isUnit()) {
      // the finite tail
      if (!out.empty()) out += "+";
      out += std::to_string(ts.size() - i);
      break;
    }
    std::size_t j = i + 1;
    while (j < ts.size() && ts[j] == ts[i]) ++j;
    if (!out.empty()) out += "+";
    out += detail::renderTerm(ts[i]);
    if (j - i > 1) out += "*" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::string render(const Worm& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += render(w[i]);
  }
  return out + "]";
}

inline std::string render(const rc::Formula& f) {
  using K = rc::Formula::Kind;
  switch (f.kind()) {
    case K::Top:
      return "T";
    case K::Var:
      return f.name();
    case K::Diam: {
      const auto& b = f.body();
      std::string body = render(b);
      if (b.kind() == K::And) body = "(" + body + ")";
      return "<" + render(f.index()) + ">" + body;
    }
    case K::And: {
      std::string out;
      for (std::size_t i = 0; i < f.conjuncts().size(); ++i) {
        if (i) out += " & ";
        out += render(f.conjuncts()[i]);
      }
      return out;
    }
  }
  return {};
}

}  // namespace rcw
