#pragma once

// Tait-style formulas: atoms and negated atoms combined by &, |, bounded and
// unbounded quantifiers.  Bounded quantifiers are inclusive (x <= t).

#include <algorithm>
#include <compare>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rcw/truth/term.hpp"

namespace rcw::truth {

class Formula {
 public:
  enum class Kind { Pred, NegPred, Eq, NegEq, Le, NegLe, And, Or, BAll, BEx, All, Ex };

  static Formula pred(std::string name, std::vector<Term> args) {
    return make(Kind::Pred, std::move(name), std::move(args));
  }
  static Formula negPred(std::string name, std::vector<Term> args) {
    return make(Kind::NegPred, std::move(name), std::move(args));
  }
  static Formula eq(Term a, Term b) { return make(Kind::Eq, {}, {std::move(a), std::move(b)}); }
  static Formula negEq(Term a, Term b) { return make(Kind::NegEq, {}, {std::move(a), std::move(b)}); }
  static Formula le(Term a, Term b) { return make(Kind::Le, {}, {std::move(a), std::move(b)}); }
  static Formula negLe(Term a, Term b) { return make(Kind::NegLe, {}, {std::move(a), std::move(b)}); }
  static Formula conj(Formula a, Formula b) { return make(Kind::And, {}, {}, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return make(Kind::Or, {}, {}, std::move(a), std::move(b)); }
  static Formula boundedAll(std::string x, Term bound, Formula body) {
    return make(Kind::BAll, std::move(x), {std::move(bound)}, std::move(body));
  }
  static Formula boundedEx(std::string x, Term bound, Formula body) {
    return make(Kind::BEx, std::move(x), {std::move(bound)}, std::move(body));
  }
  static Formula all(std::string x, Formula body) { return make(Kind::All, std::move(x), {}, std::move(body)); }
  static Formula ex(std::string x, Formula body) { return make(Kind::Ex, std::move(x), {}, std::move(body)); }

  Kind kind() const { return node_->kind; }
  /// Predicate letter, or the bound variable of a quantifier.
  const std::string& name() const { return node_->name; }
  /// Atom arguments; for a bounded quantifier the single bound term.
  const std::vector<Term>& terms() const { return node_->terms; }
  const Term& bound() const { return node_->terms.front(); }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  Formula body() const { return Formula(node_->left); }

  bool isAtomic() const { return kind() <= Kind::NegLe; }
  bool isQuantifier() const { return kind() >= Kind::BAll; }
  bool isBinary() const { return kind() == Kind::And || kind() == Kind::Or; }

  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> terms;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula make(Kind k, std::string name, std::vector<Term> terms) {
    return Formula(std::make_shared<const Node>(Node{k, std::move(name), std::move(terms), nullptr, nullptr}));
  }
  static Formula make(Kind k, std::string name, std::vector<Term> terms, Formula l) {
    return Formula(
        std::make_shared<const Node>(Node{k, std::move(name), std::move(terms), std::move(l.node_), nullptr}));
  }
  static Formula make(Kind k, std::string name, std::vector<Term> terms, Formula l, Formula r) {
    return Formula(std::make_shared<const Node>(
        Node{k, std::move(name), std::move(terms), std::move(l.node_), std::move(r.node_)}));
  }

  std::shared_ptr<const Node> node_;
};

inline std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.identity() == b.identity()) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name().compare(b.name()) <=> 0; c != 0) return c;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (auto c = ta.size() <=> tb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (auto c = compare(ta[i], tb[i]); c != 0) return c;
  if (a.isAtomic()) return std::strong_ordering::equal;
  if (auto c = compare(a.left(), b.left()); c != 0) return c;
  if (a.isBinary()) return compare(a.right(), b.right());
  return std::strong_ordering::equal;
}

inline bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

inline void collectFreeVariables(const Formula& f, std::set<std::string>& out) {
  if (f.isAtomic()) {
    for (const auto& t : f.terms()) collectVariables(t, out);
    return;
  }
  if (f.isBinary()) {
    collectFreeVariables(f.left(), out);
    collectFreeVariables(f.right(), out);
    return;
  }
  if (f.kind() == Formula::Kind::BAll || f.kind() == Formula::Kind::BEx) collectVariables(f.bound(), out);
  std::set<std::string> inner;
  collectFreeVariables(f.body(), inner);
  inner.erase(f.name());
  out.insert(inner.begin(), inner.end());
}

inline bool isSentence(const Formula& f) {
  std::set<std::string> vs;
  collectFreeVariables(f, vs);
  return vs.empty();
}

/// No unbounded quantifier.
inline bool isDelta0(const Formula& f) {
  if (f.isAtomic()) return true;
  if (f.isBinary()) return isDelta0(f.left()) && isDelta0(f.right());
  if (f.kind() == Formula::Kind::All || f.kind() == Formula::Kind::Ex) return false;
  return isDelta0(f.body());
}

/// f with the free occurrences of x replaced by the closed term v.
inline Formula substitute(const Formula& f, const std::string& x, const Term& v) {
  using K = Formula::Kind;
  auto subTerms = [&](const std::vector<Term>& ts) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(substitute(t, x, v));
    return out;
  };
  switch (f.kind()) {
    case K::Pred:
      return Formula::pred(f.name(), subTerms(f.terms()));
    case K::NegPred:
      return Formula::negPred(f.name(), subTerms(f.terms()));
    case K::Eq:
      return Formula::eq(substitute(f.terms()[0], x, v), substitute(f.terms()[1], x, v));
    case K::NegEq:
      return Formula::negEq(substitute(f.terms()[0], x, v), substitute(f.terms()[1], x, v));
    case K::Le:
      return Formula::le(substitute(f.terms()[0], x, v), substitute(f.terms()[1], x, v));
    case K::NegLe:
      return Formula::negLe(substitute(f.terms()[0], x, v), substitute(f.terms()[1], x, v));
    case K::And:
      return Formula::conj(substitute(f.left(), x, v), substitute(f.right(), x, v));
    case K::Or:
      return Formula::disj(substitute(f.left(), x, v), substitute(f.right(), x, v));
    case K::BAll:
    case K::BEx: {
      Term b = substitute(f.bound(), x, v);
      Formula body = f.name() == x ? f.body() : substitute(f.body(), x, v);
      return f.kind() == K::BAll ? Formula::boundedAll(f.name(), b, body) : Formula::boundedEx(f.name(), b, body);
    }
    case K::All:
    case K::Ex: {
      if (f.name() == x) return f;
      Formula body = substitute(f.body(), x, v);
      return f.kind() == K::All ? Formula::all(f.name(), body) : Formula::ex(f.name(), body);
    }
  }
  return f;
}

/// The Tait negation: atoms flip, connectives and quantifiers dualize.
inline Formula deMorganNegate(const Formula& f) {
  using K = Formula::Kind;
  const auto& ts = f.terms();
  switch (f.kind()) {
    case K::Pred: return Formula::negPred(f.name(), ts);
    case K::NegPred: return Formula::pred(f.name(), ts);
    case K::Eq: return Formula::negEq(ts[0], ts[1]);
    case K::NegEq: return Formula::eq(ts[0], ts[1]);
    case K::Le: return Formula::negLe(ts[0], ts[1]);
    case K::NegLe: return Formula::le(ts[0], ts[1]);
    case K::And: return Formula::disj(deMorganNegate(f.left()), deMorganNegate(f.right()));
    case K::Or: return Formula::conj(deMorganNegate(f.left()), deMorganNegate(f.right()));
    case K::BAll: return Formula::boundedEx(f.name(), f.bound(), deMorganNegate(f.body()));
    case K::BEx: return Formula::boundedAll(f.name(), f.bound(), deMorganNegate(f.body()));
    case K::All: return Formula::ex(f.name(), deMorganNegate(f.body()));
    case K::Ex: return Formula::all(f.name(), deMorganNegate(f.body()));
  }
  return f;
}

struct FormulaClass {
  enum class Level { Delta0, Pi, Sigma, Mixed };
  Level level;
  /// 0 for Delta0.  Mixed(n): in both Pi_n and Sigma_n, in neither below n.
  unsigned n;

  friend bool operator==(const FormulaClass&, const FormulaClass&) = default;
};

namespace detail {

struct Ranks {
  unsigned pi;     // least n with the formula in Pi_n
  unsigned sigma;  // least n with the formula in Sigma_n
};

// Classes are taken up to the usual prenex operations: & and | take the
// maximum, a quantifier joins an adjacent block of its own kind.  A bounded
// quantifier over a formula with unbounded ones counts as unbounded.
inline Ranks ranks(const Formula& f) {
  using K = Formula::Kind;
  if (isDelta0(f)) return {0, 0};
  if (f.isBinary()) {
    Ranks a = ranks(f.left()), b = ranks(f.right());
    return {std::max(a.pi, b.pi), std::max(a.sigma, b.sigma)};
  }
  Ranks r = ranks(f.body());
  if (f.kind() == K::All || f.kind() == K::BAll) {
    unsigned pi = std::max(1u, std::min(r.pi, r.sigma + 1));
    return {pi, pi + 1};
  }
  unsigned sigma = std::max(1u, std::min(r.sigma, r.pi + 1));
  return {sigma + 1, sigma};
}

}  // namespace detail

inline FormulaClass classify(const Formula& f) {
  using L = FormulaClass::Level;
  auto r = detail::ranks(f);
  if (r.pi == 0) return {L::Delta0, 0};
  if (r.pi < r.sigma) return {L::Pi, r.pi};
  if (r.sigma < r.pi) return {L::Sigma, r.sigma};
  return {L::Mixed, r.pi};
}

inline std::string render(const FormulaClass& c) {
  switch (c.level) {
    case FormulaClass::Level::Delta0: return "Delta0";
    case FormulaClass::Level::Pi: return "Pi" + std::to_string(c.n);
    case FormulaClass::Level::Sigma: return "Sigma" + std::to_string(c.n);
    case FormulaClass::Level::Mixed: return "Mixed" + std::to_string(c.n);
  }
  return "?";
}

/// The inductive truth definitions for Pi_n and Sigma_n, top level first,
/// down to the Delta0 predicate Tr.
inline std::vector<std::string> truthSchema(FormulaClass c) {
  using L = FormulaClass::Level;
  std::vector<std::string> out;
  if (c.level == L::Mixed) throw Unsupported("no truth predicate for a mixed class");
  bool pi = c.level != L::Sigma;
  for (unsigned k = c.n; k > 0; --k) {
    std::string n1 = std::to_string(k), n = std::to_string(k - 1);
    std::string lower = k == 1 ? "Tr" : "Tr_Sigma" + n;
    if (!pi) out.push_back("Tr_Sigma" + n1 + "(phi) := ~Tr_Pi" + n1 + "(~phi)");
    out.push_back("Tr_Pi" + n1 + "(phi) := all psi in Sigma" + n +
                  " (phi = all xs psi(xs) -> all z " + lower + "(psi((z)_0, ..., (z)_{k-1})))");
    pi = false;
  }
  out.push_back("Tr(phi) := all s (EF(s) & phi in dom(s) -> s(phi) = 1)");
  return out;
}

}  // namespace rcw::truth
