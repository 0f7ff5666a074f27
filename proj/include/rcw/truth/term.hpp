#pragma once

// Arithmetic terms: 0, S, +, *, the unary exp (x |-> 2^x) and variables.
// Numerals are S^n(0); nothing else distinguishes them.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "rcw/errors.hpp"

namespace rcw::truth {

class Term {
 public:
  enum class Kind { Zero, Succ, Plus, Times, Exp, Var };

  Term() : Term(zero()) {}

  static Term zero() {
    static const Term z(std::make_shared<const Node>(Node{Kind::Zero, {}, nullptr, nullptr}));
    return z;
  }
  static Term succ(Term t) { return make(Kind::Succ, std::move(t)); }
  static Term plus(Term a, Term b) { return make(Kind::Plus, std::move(a), std::move(b)); }
  static Term times(Term a, Term b) { return make(Kind::Times, std::move(a), std::move(b)); }
  static Term exp(Term t) { return make(Kind::Exp, std::move(t)); }
  static Term var(std::string name) {
    return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr}));
  }
  static Term numeral(std::uint64_t n) {
    Term t = zero();
    for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
    return t;
  }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  /// Operand of S and exp, left operand of + and *.
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }
  std::size_t arity() const {
    switch (kind()) {
      case Kind::Zero:
      case Kind::Var:
        return 0;
      case Kind::Succ:
      case Kind::Exp:
        return 1;
      default:
        return 2;
    }
  }

  /// n when the term is S^n(0).
  std::optional<std::uint64_t> numeralValue() const {
    std::uint64_t n = 0;
    const Node* p = node_.get();
    while (p->kind == Kind::Succ) {
      ++n;
      p = p->left.get();
    }
    if (p->kind != Kind::Zero) return std::nullopt;
    return n;
  }

  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Term make(Kind k, Term a, Term b = Term(nullptr)) {
    return Term(std::make_shared<const Node>(Node{k, {}, std::move(a.node_), std::move(b.node_)}));
  }

  std::shared_ptr<const Node> node_;
};

inline std::strong_ordering compare(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Term::Kind::Zero:
      return std::strong_ordering::equal;
    case Term::Kind::Var:
      return a.name().compare(b.name()) <=> 0;
    case Term::Kind::Succ:
    case Term::Kind::Exp:
      return compare(a.left(), b.left());
    default:
      if (auto c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
  }
}

inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

inline void collectVariables(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) out.insert(t.name());
  if (t.arity() >= 1) collectVariables(t.left(), out);
  if (t.arity() == 2) collectVariables(t.right(), out);
}

inline bool isClosed(const Term& t) {
  std::set<std::string> vs;
  collectVariables(t, vs);
  return vs.empty();
}

/// t with every occurrence of variable x replaced by v.
inline Term substitute(const Term& t, const std::string& x, const Term& v) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return t;
    case Term::Kind::Var:
      return t.name() == x ? v : t;
    case Term::Kind::Succ:
      return Term::succ(substitute(t.left(), x, v));
    case Term::Kind::Exp:
      return Term::exp(substitute(t.left(), x, v));
    case Term::Kind::Plus:
      return Term::plus(substitute(t.left(), x, v), substitute(t.right(), x, v));
    case Term::Kind::Times:
      return Term::times(substitute(t.left(), x, v), substitute(t.right(), x, v));
  }
  return t;
}

namespace detail {

inline std::uint64_t overflow() { throw BudgetExceeded("term value exceeds 64 bits"); }

inline std::uint64_t checkedAdd(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

inline std::uint64_t checkedMul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

inline std::uint64_t checkedExp2(std::uint64_t e) {
  if (e >= 64) overflow();
  return std::uint64_t{1} << e;
}

}  // namespace detail

using Environment = std::map<std::string, std::uint64_t>;

/// Value of t with its variables read from env.  Throws NotVariableFree for
/// an unbound variable and BudgetExceeded when a value leaves 64 bits.
inline std::uint64_t evalTerm(const Term& t, const Environment& env) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) throw NotVariableFree("unbound variable " + t.name());
      return it->second;
    }
    case Term::Kind::Succ:
      return detail::checkedAdd(evalTerm(t.left(), env), 1);
    case Term::Kind::Exp:
      return detail::checkedExp2(evalTerm(t.left(), env));
    case Term::Kind::Plus:
      return detail::checkedAdd(evalTerm(t.left(), env), evalTerm(t.right(), env));
    case Term::Kind::Times:
      return detail::checkedMul(evalTerm(t.left(), env), evalTerm(t.right(), env));
  }
  return 0;
}

inline std::uint64_t evalTerm(const Term& t) { return evalTerm(t, Environment{}); }

}  // namespace rcw::truth
