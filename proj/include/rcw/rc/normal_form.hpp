#pragma once

// Word normal forms of variable-free formulas.
//
// Conjunctions are merged worm by worm.  Against a worm with smaller head,
// <a>A & <b>B == <a>(A & <b>B) moves the lower worm inside.  Two worms with the
// same head <a>A, <a>B are resolved by derivability when one implies the
// other, and otherwise by trying <a>(A & <a>B) and <a>(B & <a>A); failing
// that, worms over the letters of the input are enumerated.  Every candidate
// and the final answer are checked with `derives` in both directions.

#include <algorithm>
#include <optional>
#include <vector>

#include "rcw/errors.hpp"
#include "rcw/rc/formula.hpp"
#include "rcw/rc/model.hpp"
#include "rcw/worm.hpp"

namespace rcw::rc {

namespace detail {

class WormMerger {
 public:
  WormMerger(std::size_t budget, std::vector<Ordinal> letters)
      : budget_(budget), letters_(std::move(letters)) {}

  struct OutOfBudget {};

  bool implies(const Formula& a, const Formula& b) {
    if (++used_ > budget_) throw OutOfBudget{};
    return derives(a, b);
  }

  bool equivalent(const Formula& a, const Formula& b) { return implies(a, b) && implies(b, a); }

  Worm wormOf(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Top:
        return Worm();
      case Formula::Kind::Diam:
        return prepend(f.index(), wormOf(f.body()));
      case Formula::Kind::And: {
        std::vector<Worm> ws;
        for (const auto& c : f.conjuncts()) ws.push_back(wormOf(c));
        return merge(ws);
      }
      case Formula::Kind::Var:
        break;
    }
    throw NotVariableFree("formula has a variable");
  }

  Worm merge(std::vector<Worm> ws) {
    ws.erase(std::remove_if(ws.begin(), ws.end(), [](const Worm& w) { return w.empty(); }), ws.end());
    if (ws.empty()) return Worm();
    if (ws.size() == 1) return ws.front();
    const Ordinal* top = &ws.front()[0];
    for (const auto& w : ws)
      if (compare(w[0], *top) > 0) top = &w[0];
    Ordinal alpha = *top;
    std::vector<Worm> high, low;
    for (auto& w : ws) (w[0] == alpha ? high : low).push_back(std::move(w));
    while (high.size() > 1) {
      Worm b = std::move(high.back());
      high.pop_back();
      high.back() = combine(high.back(), b);
    }
    low.push_back(tail(high.front()));
    return prepend(alpha, merge(std::move(low)));
  }

 private:
  static Worm prepend(const Ordinal& a, const Worm& w) {
    std::vector<Ordinal> ls{a};
    ls.insert(ls.end(), w.letters().begin(), w.letters().end());
    return Worm(std::move(ls));
  }

  static Worm tail(const Worm& w) { return Worm(std::vector<Ordinal>(w.letters().begin() + 1, w.letters().end())); }

  /// A worm equivalent to a & b, both with the same head.
  Worm combine(const Worm& a, const Worm& b) {
    Formula fa = wormFormula(a), fb = wormFormula(b);
    if (implies(fa, fb)) return a;
    if (implies(fb, fa)) return b;
    Formula both = Formula::conj(fa, fb);
    const Ordinal& alpha = a[0];
    for (const auto& [inner, outer] : {std::pair{tail(a), b}, std::pair{tail(b), a}}) {
      Worm c = prepend(alpha, merge({inner, outer}));
      if (equivalent(wormFormula(c), both)) return c;
    }
    return enumerate(both, alpha, a.size() + b.size());
  }

  /// Worms beginning with alpha over the input letters, shortest first.
  Worm enumerate(const Formula& target, const Ordinal& alpha, std::size_t maxLen) {
    std::vector<Worm> layer{Worm({alpha})};
    for (std::size_t len = 1; len <= maxLen; ++len) {
      std::vector<Worm> next;
      for (const auto& w : layer) {
        if (equivalent(wormFormula(w), target)) return w;
        for (const auto& l : letters_) {
          auto ls = w.letters();
          ls.push_back(l);
          next.emplace_back(std::move(ls));
        }
      }
      layer = std::move(next);
    }
    throw OutOfBudget{};
  }

  std::size_t budget_;
  std::size_t used_ = 0;
  std::vector<Ordinal> letters_;
};

}  // namespace detail

/// A worm RC-equivalent to the variable-free formula `f`, or nullopt when the
/// budget (counted in derivability checks) runs out.  Throws NotVariableFree.
inline std::optional<Worm> wordNormalForm(const Formula& f, std::size_t budget = 100000) {
  if (!isVariableFree(f)) throw NotVariableFree("wordNormalForm needs a variable-free formula");
  std::vector<Ordinal> letters;
  collectIndices(f, letters);
  letters = detail::sortedIndices(std::move(letters));
  detail::WormMerger m(budget, letters);
  try {
    Worm w = m.wormOf(normalize(f));
    if (!m.equivalent(wormFormula(w), f)) return std::nullopt;
    return w;
  } catch (const detail::WormMerger::OutOfBudget&) {
    return std::nullopt;
  }
}

}  // namespace rcw::rc
