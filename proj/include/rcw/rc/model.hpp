#pragma once

// Finite frames for RC and the decision procedure for A |- B.
//
// The minimal model of A is the syntax tree of A (one node per diamond
// occurrence) closed under the three frame conditions:
//   x R_a y, b < a           =>  x R_b y
//   x R_a y R_a z            =>  x R_a z
//   x R_a y, x R_b z, b < a  =>  y R_b z
// Indices are ranked in a table sorted by ordinal order; an edge stores the
// rank of the largest index relating its endpoints, which builds in the first
// condition.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcw/ordinal.hpp"
#include "rcw/rc/formula.hpp"

namespace rcw::rc {

class RcModel {
 public:
  using NodeId = std::size_t;
  static constexpr int kNoEdge = -1;

  RcModel() = default;
  RcModel(std::vector<Ordinal> indices, std::size_t nodes)
      : indices_(std::move(indices)), labels_(nodes), rank_(nodes * nodes, kNoEdge) {}

  std::size_t size() const { return labels_.size(); }
  const std::vector<Ordinal>& indices() const { return indices_; }
  const std::set<std::string>& label(NodeId x) const { return labels_[x]; }
  int rank(NodeId x, NodeId y) const { return rank_[x * size() + y]; }

  /// Largest index a with x R_a y.
  std::optional<Ordinal> supremum(NodeId x, NodeId y) const {
    int r = rank(x, y);
    if (r == kNoEdge) return std::nullopt;
    return indices_[static_cast<std::size_t>(r)];
  }

  bool related(NodeId x, NodeId y, const Ordinal& alpha) const {
    int r = rank(x, y);
    return r != kNoEdge && compare(alpha, indices_[static_cast<std::size_t>(r)]) <= 0;
  }

  /// Least rank whose index is >= alpha; size() of the table if none.
  int threshold(const Ordinal& alpha) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), alpha,
                               [](const Ordinal& a, const Ordinal& b) { return compare(a, b) < 0; });
    return static_cast<int>(it - indices_.begin());
  }

  void addLabel(NodeId x, std::string p) { labels_[x].insert(std::move(p)); }

  /// Raises the stored rank; returns whether it changed.
  bool raise(NodeId x, NodeId y, int r) {
    int& e = rank_[x * size() + y];
    if (r <= e) return false;
    e = r;
    return true;
  }

  /// Closes the relations under transitivity and the J-condition.
  void close() {
    const std::size_t n = size();
    std::deque<std::pair<NodeId, NodeId>> work;
    for (NodeId x = 0; x < n; ++x)
      for (NodeId y = 0; y < n; ++y)
        if (rank(x, y) != kNoEdge) work.emplace_back(x, y);
    auto update = [&](NodeId x, NodeId y, int v) {
      if (v >= 0 && raise(x, y, v)) work.emplace_back(x, y);
    };
    while (!work.empty()) {
      auto [a, b] = work.front();
      work.pop_front();
      const int r = rank(a, b);
      for (NodeId z = 0; z < n; ++z) {
        // a -> b -> z and z -> a -> b
        update(a, z, std::min(r, rank(b, z)));
        update(z, b, std::min(rank(z, a), r));
        // a -> b as the higher edge, a -> z as the lower one
        update(b, z, std::min(rank(a, z), r - 1));
        // a -> b as the lower edge, a -> z as the higher one
        update(z, b, std::min(r, rank(a, z) - 1));
      }
    }
  }

  bool isTransitive() const {
    const std::size_t n = size();
    for (NodeId x = 0; x < n; ++x)
      for (NodeId y = 0; y < n; ++y)
        for (NodeId z = 0; z < n; ++z)
          if (rank(x, z) < std::min(rank(x, y), rank(y, z))) return false;
    return true;
  }

  bool satisfiesJ() const {
    const std::size_t n = size();
    for (NodeId x = 0; x < n; ++x)
      for (NodeId y = 0; y < n; ++y)
        for (NodeId z = 0; z < n; ++z) {
          int need = std::min(rank(x, z), rank(x, y) - 1);
          if (need >= 0 && rank(y, z) < need) return false;
        }
    return true;
  }

 private:
  std::vector<Ordinal> indices_;
  std::vector<std::set<std::string>> labels_;
  std::vector<int> rank_;
};

namespace detail {

inline std::vector<Ordinal> sortedIndices(std::vector<Ordinal> v) {
  std::sort(v.begin(), v.end(), [](const Ordinal& a, const Ordinal& b) { return compare(a, b) < 0; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::size_t countDiamonds(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Var:
      return 0;
    case Formula::Kind::Diam:
      return 1 + countDiamonds(f.body());
    case Formula::Kind::And: {
      std::size_t s = 0;
      for (const auto& c : f.conjuncts()) s += countDiamonds(c);
      return s;
    }
  }
  return 0;
}

inline void seedTree(RcModel& m, const Formula& f, RcModel::NodeId at, RcModel::NodeId& next) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Var:
      m.addLabel(at, f.name());
      return;
    case Formula::Kind::And:
      for (const auto& c : f.conjuncts()) seedTree(m, c, at, next);
      return;
    case Formula::Kind::Diam: {
      RcModel::NodeId child = next++;
      m.raise(at, child, m.threshold(f.index()));
      seedTree(m, f.body(), child, next);
      return;
    }
  }
}

}  // namespace detail

/// Minimal model of `a`; node 0 is the root.  `extra` lists further indices
/// the model must be able to talk about (the indices of a formula to check).
inline RcModel buildMinimalModel(const Formula& a, const std::vector<Ordinal>& extra = {}) {
  std::vector<Ordinal> idx = extra;
  collectIndices(a, idx);
  RcModel m(detail::sortedIndices(std::move(idx)), 1 + detail::countDiamonds(a));
  RcModel::NodeId next = 1;
  detail::seedTree(m, a, 0, next);
  m.close();
  return m;
}

/// For every node, whether it satisfies `f`.
inline std::vector<char> satisfyingNodes(const RcModel& m, const Formula& f) {
  const std::size_t n = m.size();
  switch (f.kind()) {
    case Formula::Kind::Top:
      return std::vector<char>(n, 1);
    case Formula::Kind::Var: {
      std::vector<char> out(n, 0);
      for (std::size_t x = 0; x < n; ++x) out[x] = m.label(x).count(f.name()) ? 1 : 0;
      return out;
    }
    case Formula::Kind::And: {
      std::vector<char> out(n, 1);
      for (const auto& c : f.conjuncts()) {
        auto s = satisfyingNodes(m, c);
        for (std::size_t x = 0; x < n; ++x) out[x] = out[x] && s[x];
      }
      return out;
    }
    case Formula::Kind::Diam: {
      auto s = satisfyingNodes(m, f.body());
      std::vector<char> out(n, 0);
      const int t = m.threshold(f.index());
      if (t == static_cast<int>(m.indices().size())) return out;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n && !out[x]; ++y)
          if (s[y] && m.rank(x, y) >= t) out[x] = 1;
      return out;
    }
  }
  return {};
}

inline bool modelCheck(const RcModel& m, RcModel::NodeId n, const Formula& f) {
  return satisfyingNodes(m, f)[n] != 0;
}

/// A |- B in RC over all notations below Gamma_0.
inline bool derives(const Formula& a, const Formula& b) {
  std::vector<Ordinal> idx;
  collectIndices(b, idx);
  return modelCheck(buildMinimalModel(normalize(a), idx), 0, b);
}

}  // namespace rcw::rc
