#pragma once

// Backward proof search producing checkable derivations.
//
// Goals are sequents G |- B with both sides normalized.  Diamond goals
// <b>C are reduced through a conjunct <a>A of G with a >= b, either directly
// (into A |- C or A |- <b>C) or after pushing the rest of G inside <a>:
// conjuncts with smaller index go in unchanged, the others weakened to the
// largest index below a, and so does <a'>A itself.  A push may also replace
// <a>A inside G, which lets later pushes carry richer sibling formulas.
// Goals whose right side mentions a variable missing on the left are
// dropped at once.  The search deepens iteratively up to the depth bound; NotFound (nullopt)
// only means the bound ran out.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcw/ordinal.hpp"
#include "rcw/rc/derivation.hpp"
#include "rcw/rc/formula.hpp"

namespace rcw::rc {

struct SearchLimits {
  std::size_t maxDepth = 12;
  /// Cap on expanded goals over the whole search.
  std::size_t maxGoals = 2'000'000;
};

namespace detail {

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Rule rule;
  Formula lhs;
  Formula rhs;
  std::vector<Proof> premises;
};

class ProofSearcher {
 public:
  ProofSearcher(std::vector<Ordinal> indices, SearchLimits limits)
      : indices_(std::move(indices)), limits_(limits) {}

  Proof run(const Formula& a, const Formula& b) {
    for (std::size_t d = 1; d <= limits_.maxDepth; ++d) {
      if (auto p = prove(a, b, d)) return p;
      if (goals_ > limits_.maxGoals) break;
    }
    return nullptr;
  }

 private:
  using Key = std::pair<Formula, Formula>;

  static Proof node(Rule r, Formula l, Formula rr, std::vector<Proof> ps = {}) {
    return std::make_shared<const ProofNode>(ProofNode{r, std::move(l), std::move(rr), std::move(ps)});
  }

  static Proof cut(const Proof& p, const Proof& q) {
    if (p->rule == Rule::Identity) return q;
    if (q->rule == Rule::Identity) return p;
    return node(Rule::Cut, p->lhs, q->rhs, {p, q});
  }

  /// G |- X for a conjunct X of G.
  static Proof elim(const Formula& g, const Formula& x) {
    if (g == x) return node(Rule::Identity, g, x);
    return node(Rule::ConjElim, g, x);
  }

  std::optional<Ordinal> predecessor(const Ordinal& a) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), a,
                               [](const Ordinal& x, const Ordinal& y) { return compare(x, y) < 0; });
    if (it == indices_.begin()) return std::nullopt;
    return *(it - 1);
  }

  struct Pushed {
    Formula formula;  // the pushed conjunct, index below that of the host
    Proof proof;      // G |- formula
  };

  std::vector<Pushed> pushedInto(const Formula& g, const std::vector<Formula>& gc, const Formula& x,
                                 const Proof& gx) const {
    std::vector<Pushed> out;
    auto pred = predecessor(x.index());
    for (const auto& y : gc) {
      if (y == x || y.kind() != Formula::Kind::Diam) continue;
      if (compare(y.index(), x.index()) < 0) {
        out.push_back({y, elim(g, y)});
      } else if (pred) {
        Formula w = Formula::diamond(*pred, y.body());
        out.push_back({w, cut(elim(g, y), node(Rule::Weaken, y, w))});
      }
    }
    if (pred) {
      Formula w = Formula::diamond(*pred, x.body());
      out.push_back({w, cut(gx, node(Rule::Weaken, x, w))});
    }
    return out;
  }

  /// From G |- <a>A and the pushed conjuncts, G |- <a>(A & pushed...).
  Proof pushAll(const Formula& g, const Formula& x, Proof cur, const std::vector<Pushed>& ps) const {
    Formula body = x.body();
    for (const auto& p : ps) {
      Formula host = Formula::diamond(x.index(), body);
      Formula both = normalize(Formula::conj(host, p.formula));
      Formula next = normalize(Formula::conj(body, p.formula));
      if (next == body) continue;
      Proof intro = node(Rule::ConjIntro, g, both, {cur, p.proof});
      Formula target = Formula::diamond(x.index(), next);
      cur = cut(intro, node(Rule::Push, both, target));
      body = next;
    }
    return cur;
  }

  /// From G |- <a>A (gHost), closes the goal <b>C through A.
  Proof through(const Proof& gHost, const Formula& host, const Formula& goal,
                std::size_t d) {
    const Ordinal& a = host.index();
    const Ordinal& b = goal.index();
    const Formula& inner = host.body();
    const Formula& c = goal.body();
    bool strict = compare(a, b) > 0;
    if (strict && inner == c) return cut(gHost, node(Rule::Weaken, host, goal));
    if (auto p = prove(inner, c, d - 1)) {
      Formula ac = Formula::diamond(a, c);
      Proof r = cut(gHost, node(Rule::Monotone, host, ac, {p}));
      if (strict) r = cut(r, node(Rule::Weaken, ac, goal));
      return r;
    }
    if (auto p = prove(inner, goal, d - 1)) {
      Formula ab = Formula::diamond(a, goal);
      Proof r = cut(gHost, node(Rule::Monotone, host, ab, {p}));
      Formula bb = Formula::diamond(b, goal);
      if (strict) r = cut(r, node(Rule::Weaken, ab, bb));
      return cut(r, node(Rule::Transitive, bb, goal));
    }
    return nullptr;
  }

  Proof prove(const Formula& g, const Formula& b, std::size_t d) {
    if (d == 0) return nullptr;
    if (b.isTop()) return node(Rule::Top, g, b);
    if (g == b) return node(Rule::Identity, g, b);

    Key key{g, b};
    if (auto it = proved_.find(key); it != proved_.end()) return it->second;
    if (!variablesCovered(g, b)) return nullptr;
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= d) return nullptr;
    if (++goals_ > limits_.maxGoals) return nullptr;

    Proof res = expand(g, b, d);
    if (res)
      proved_[key] = res;
    else
      failed_[key] = std::max(failed_[key], d);
    return res;
  }

  /// A variable of B missing from G can be made false everywhere without
  /// touching G, and then B fails; such goals are never provable.
  bool variablesCovered(const Formula& g, const Formula& b) {
    auto vars = [this](const Formula& f) -> const std::set<std::string>& {
      auto it = variables_.find(f);
      if (it != variables_.end()) return it->second;
      std::set<std::string> vs;
      collectVariables(f, vs);
      return variables_.emplace(f, std::move(vs)).first->second;
    };
    const auto& vg = vars(g);
    const auto& vb = vars(b);
    return std::includes(vg.begin(), vg.end(), vb.begin(), vb.end());
  }

  Proof expand(const Formula& g, const Formula& b, std::size_t d) {
    auto gc = g.conjunctList();
    auto has = [&](const Formula& f) { return std::find(gc.begin(), gc.end(), f) != gc.end(); };

    if (b.kind() == Formula::Kind::And) {
      auto bc = b.conjuncts();
      if (std::all_of(bc.begin(), bc.end(), has)) return node(Rule::ConjElim, g, b);
      std::vector<Proof> ps;
      for (const auto& c : bc) {
        auto p = prove(g, c, d - 1);
        if (!p) return nullptr;
        ps.push_back(p);
      }
      return node(Rule::ConjIntro, g, b, std::move(ps));
    }
    if (has(b)) return node(Rule::ConjElim, g, b);
    if (b.kind() != Formula::Kind::Diam) return nullptr;

    for (const auto& x : gc) {
      if (x.kind() != Formula::Kind::Diam || compare(x.index(), b.index()) < 0) continue;
      Proof gx = elim(g, x);
      if (auto p = through(gx, x, b, d)) return p;

      auto ps = pushedInto(g, gc, x, gx);
      if (ps.empty()) continue;
      Proof gx2 = pushAll(g, x, gx, ps);
      Formula x2 = gx2->rhs;
      if (x2 == x) continue;
      if (auto p = through(gx2, x2, b, d)) return p;

      // replace <a>A by its pushed form inside G
      std::vector<Formula> parts;
      std::vector<Proof> proofs;
      for (const auto& y : gc) {
        if (y == x) continue;
        parts.push_back(y);
        proofs.push_back(elim(g, y));
      }
      parts.push_back(x2);
      proofs.push_back(gx2);
      Formula g2 = normalize(Formula::conj(parts));
      if (g2 == g) continue;
      Proof toG2 = parts.size() == 1 ? gx2 : node(Rule::ConjIntro, g, g2, std::move(proofs));
      if (auto p = prove(g2, b, d - 1)) return cut(toG2, p);
    }
    return nullptr;
  }

  std::vector<Ordinal> indices_;
  SearchLimits limits_;
  std::size_t goals_ = 0;
  std::map<Key, Proof> proved_;
  std::map<Key, std::size_t> failed_;
  std::map<Formula, std::set<std::string>> variables_;
};

inline std::size_t flatten(const Proof& p, Derivation& d, std::map<const ProofNode*, std::size_t>& seen) {
  if (auto it = seen.find(p.get()); it != seen.end()) return it->second;
  std::vector<std::size_t> premises;
  for (const auto& q : p->premises) premises.push_back(flatten(q, d, seen));
  std::size_t at = d.append(Step{p->rule, p->lhs, p->rhs, std::move(premises)});
  seen[p.get()] = at;
  return at;
}

}  // namespace detail

/// A derivation of A |- B, or nullopt when none was found within the limits.
inline std::optional<Derivation> proofSearch(const Formula& a, const Formula& b, SearchLimits limits) {
  Formula na = normalize(a);
  Formula nb = normalize(b);
  std::vector<Ordinal> idx;
  collectIndices(na, idx);
  collectIndices(nb, idx);
  std::sort(idx.begin(), idx.end(), [](const Ordinal& x, const Ordinal& y) { return compare(x, y) < 0; });
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

  detail::ProofSearcher searcher(std::move(idx), limits);
  auto proof = searcher.run(na, nb);
  if (!proof) return std::nullopt;
  Derivation d;
  std::map<const detail::ProofNode*, std::size_t> seen;
  detail::flatten(proof, d, seen);
  // state the conclusion in the caller's own syntax
  const Step& last = d.conclusion();
  if (!(last.lhs == a) || !(last.rhs == b)) {
    std::size_t root = d.steps().size() - 1;
    Derivation framed = d;
    std::size_t left = framed.append(Step{Rule::Identity, a, last.lhs, {}});
    std::size_t right = framed.append(Step{Rule::Identity, last.rhs, b, {}});
    std::size_t mid = framed.append(Step{Rule::Cut, a, last.rhs, {left, root}});
    framed.append(Step{Rule::Cut, a, b, {mid, right}});
    return framed;
  }
  return d;
}

inline std::optional<Derivation> proofSearch(const Formula& a, const Formula& b, std::size_t maxDepth) {
  SearchLimits limits;
  limits.maxDepth = maxDepth;
  return proofSearch(a, b, limits);
}

}  // namespace rcw::rc
