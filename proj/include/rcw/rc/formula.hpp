#pragma once

// Strictly positive formulas: T, variables, conjunction and diamonds <a>F.

#include <algorithm>
#include <compare>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcw/ordinal.hpp"
#include "rcw/worm.hpp"

namespace rcw::rc {

class Formula {
 public:
  enum class Kind { Top, Var, And, Diam };

  /// T
  Formula() : Formula(top()) {}

  static Formula top() {
    static const std::shared_ptr<const Node> node = std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}});
    return Formula(node);
  }

  static Formula var(std::string name) {
    Node n{Kind::Var, {}, {}, {}};
    n.name = std::move(name);
    return Formula(std::make_shared<const Node>(std::move(n)));
  }

  /// Flattens nested conjunctions and drops T.  Keeps order and repeats.
  static Formula conj(const std::vector<Formula>& parts) {
    std::vector<Formula> flat;
    for (const auto& p : parts) {
      if (p.kind() == Kind::And)
        flat.insert(flat.end(), p.conjuncts().begin(), p.conjuncts().end());
      else if (p.kind() != Kind::Top)
        flat.push_back(p);
    }
    if (flat.empty()) return top();
    if (flat.size() == 1) return flat.front();
    Node n{Kind::And, {}, {}, {}};
    n.parts = std::move(flat);
    return Formula(std::make_shared<const Node>(std::move(n)));
  }

  static Formula conj(const Formula& a, const Formula& b) { return conj(std::vector<Formula>{a, b}); }

  static Formula diamond(Ordinal index, Formula body) {
    Node n{Kind::Diam, {}, {}, {}};
    n.index = std::move(index);
    n.parts.push_back(std::move(body));
    return Formula(std::make_shared<const Node>(std::move(n)));
  }

  Kind kind() const { return node_->kind; }
  bool isTop() const { return kind() == Kind::Top; }
  const std::string& name() const { return node_->name; }
  const Ordinal& index() const { return node_->index; }
  const Formula& body() const { return node_->parts.front(); }
  const std::vector<Formula>& conjuncts() const { return node_->parts; }

  /// The formula itself viewed as a list of conjuncts (T has none).
  std::vector<Formula> conjunctList() const {
    if (kind() == Kind::And) return conjuncts();
    if (kind() == Kind::Top) return {};
    return {*this};
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    Ordinal index;
    std::vector<Formula> parts;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;

  friend std::strong_ordering structuralCompare(const Formula&, const Formula&);
  friend bool operator==(const Formula&, const Formula&);
};

/// Total order on syntax trees: kind, then fields.
inline std::strong_ordering structuralCompare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Formula::Kind::Top:
      return std::strong_ordering::equal;
    case Formula::Kind::Var:
      return a.name().compare(b.name()) <=> 0;
    case Formula::Kind::Diam: {
      auto c = compare(a.index(), b.index());
      if (c != 0) return c;
      return structuralCompare(a.body(), b.body());
    }
    case Formula::Kind::And: {
      const auto& x = a.conjuncts();
      const auto& y = b.conjuncts();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        auto c = structuralCompare(x[i], y[i]);
        if (c != 0) return c;
      }
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

inline bool operator==(const Formula& a, const Formula& b) { return structuralCompare(a, b) == 0; }

inline bool operator<(const Formula& a, const Formula& b) { return structuralCompare(a, b) < 0; }

/// Canonical representative of the formula's class under AC-and-idempotence of
/// conjunction: conjuncts sorted and deduplicated at every depth.
inline Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Var:
      return f;
    case Formula::Kind::Diam:
      return Formula::diamond(f.index(), normalize(f.body()));
    case Formula::Kind::And: {
      std::vector<Formula> parts;
      for (const auto& c : f.conjuncts()) parts.push_back(normalize(c));
      Formula flat = Formula::conj(parts);
      if (flat.kind() != Formula::Kind::And) return flat;
      parts = flat.conjuncts();
      std::sort(parts.begin(), parts.end());
      parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
      return Formula::conj(parts);
    }
  }
  return f;
}

/// Symbol count: one per T, variable, diamond and binary conjunction.
inline std::size_t formulaSize(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Var:
      return 1;
    case Formula::Kind::Diam:
      return 1 + formulaSize(f.body());
    case Formula::Kind::And: {
      std::size_t s = f.conjuncts().size() - 1;
      for (const auto& c : f.conjuncts()) s += formulaSize(c);
      return s;
    }
  }
  return 0;
}

inline void collectIndices(const Formula& f, std::vector<Ordinal>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Var:
      return;
    case Formula::Kind::Diam:
      out.push_back(f.index());
      collectIndices(f.body(), out);
      return;
    case Formula::Kind::And:
      for (const auto& c : f.conjuncts()) collectIndices(c, out);
      return;
  }
}

inline void collectVariables(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Var:
      out.insert(f.name());
      return;
    case Formula::Kind::Diam:
      collectVariables(f.body(), out);
      return;
    case Formula::Kind::And:
      for (const auto& c : f.conjuncts()) collectVariables(c, out);
      return;
  }
}

inline bool isVariableFree(const Formula& f) {
  std::set<std::string> vs;
  collectVariables(f, vs);
  return vs.empty();
}

inline Formula wormFormula(const Worm& w) {
  Formula f = Formula::top();
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) f = Formula::diamond(*it, f);
  return f;
}

/// Substitutes `tail` for the final T of a worm: the concatenation AB.
inline Formula wormFormula(const Worm& w, const Formula& tail) {
  Formula f = tail;
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) f = Formula::diamond(*it, f);
  return f;
}

/// Q_0 = F, Q_{k+1} = <beta>(F & Q_k).  Repeated conjuncts are kept; T
/// conjuncts vanish as in every conjunction.
inline Formula buildQ(const Ordinal& beta, std::size_t k, const Formula& f) {
  Formula q = f;
  for (std::size_t i = 0; i < k; ++i) q = Formula::diamond(beta, Formula::conj(f, q));
  return q;
}

}  // namespace rcw::rc
