#pragma once

// Worms: variable-free, conjunction-free formulas <a1><a2>...<an>T, stored as
// the letter list a1..an (leftmost outermost).

#include <algorithm>
#include <compare>
#include <utility>
#include <vector>

#include "rcw/errors.hpp"
#include "rcw/ordinal.hpp"

namespace rcw {

class Worm {
 public:
  Worm() = default;
  explicit Worm(std::vector<Ordinal> letters) : letters_(std::move(letters)) {}

  const std::vector<Ordinal>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Ordinal& operator[](std::size_t i) const { return letters_[i]; }

  /// Every letter >= alpha.
  bool inFragment(const Ordinal& alpha) const {
    return std::all_of(letters_.begin(), letters_.end(),
                       [&](const Ordinal& l) { return compare(l, alpha) >= 0; });
  }

  friend bool operator==(const Worm&, const Worm&) = default;

 private:
  std::vector<Ordinal> letters_;
};

inline Worm concat(const Worm& a, const Worm& b) {
  std::vector<Ordinal> ls = a.letters();
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return Worm(std::move(ls));
}

inline Worm lift(const Ordinal& alpha, const Worm& a) {
  std::vector<Ordinal> ls;
  ls.reserve(a.size());
  for (const auto& l : a.letters()) ls.push_back(add(alpha, l));
  return Worm(std::move(ls));
}

/// Inverse of lift.  Throws NotInFragment if a letter is below alpha.
inline Worm lower(const Ordinal& alpha, const Worm& a) {
  std::vector<Ordinal> ls;
  ls.reserve(a.size());
  for (const auto& l : a.letters()) {
    if (compare(l, alpha) < 0) throw NotInFragment("worm letter below fragment bound");
    ls.push_back(leftSubtract(alpha, l));
  }
  return Worm(std::move(ls));
}

/// Order type of the worm among all worms under <_0.
inline Ordinal orderType(const Worm& a) {
  const auto& ls = a.letters();
  if (ls.empty()) return Ordinal();

  auto zero = std::find_if(ls.begin(), ls.end(), [](const Ordinal& l) { return l.isZero(); });
  if (zero != ls.end()) {
    // A = C 0 B with C free of zeros
    Worm c(std::vector<Ordinal>(ls.begin(), zero));
    Worm b(std::vector<Ordinal>(zero + 1, ls.end()));
    return add(orderType(b), omegaPower(orderType(lower(Ordinal::finite(1), c))));
  }

  const Ordinal& m = *std::min_element(ls.begin(), ls.end());
  Ordinal x = leftSubtract(Ordinal::finite(1), orderType(lower(m, a)));
  auto exps = cnfExponents(m);
  for (auto it = exps.rbegin(); it != exps.rend(); ++it) x = paperPhi(*it, x);
  return x;
}

/// Order type of the worm among the worms of W_alpha under <_alpha.
inline Ordinal orderTypeAt(const Ordinal& alpha, const Worm& a) {
  return orderType(lower(alpha, a));
}

/// Compares A and B in W_alpha; equivalent means RC-equivalent.
inline std::strong_ordering compareAt(const Ordinal& alpha, const Worm& a, const Worm& b) {
  return compare(orderTypeAt(alpha, a), orderTypeAt(alpha, b));
}

}  // namespace rcw
