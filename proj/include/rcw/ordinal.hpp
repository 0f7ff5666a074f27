#pragma once

// Ordinal notations below Gamma_0 in binary Veblen normal form.
//
// An ordinal is a non-increasing list of terms phi(index, argument), read as
// their ordinal sum.  phi is the standard Veblen function (phi(0, x) = w^x),
// so every term is additively principal and the list is a Cantor normal form
// whose summands are written with the largest possible Veblen index.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rcw/errors.hpp"

namespace rcw {

using Natural = boost::multiprecision::cpp_int;

struct VeblenTerm;

class Ordinal {
 public:
  Ordinal();
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  /// No normal-form check; see isNormalForm.
  explicit Ordinal(std::vector<VeblenTerm> terms);

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  /// The single term phi(index, argument), unchecked.
  static Ordinal term(Ordinal index, Ordinal argument);

  const std::vector<VeblenTerm>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isSingleTerm() const { return terms_.size() == 1; }
  bool isFinite() const;
  bool isSuccessor() const;
  bool isLimit() const { return !isZero() && !isSuccessor(); }
  std::optional<std::uint64_t> toFinite() const;

 private:
  std::vector<VeblenTerm> terms_;
};

struct VeblenTerm {
  Ordinal index;
  Ordinal argument;

  bool isUnit() const { return index.isZero() && argument.isZero(); }
};

inline Ordinal::Ordinal() = default;
inline Ordinal::Ordinal(const Ordinal&) = default;
inline Ordinal::Ordinal(Ordinal&&) noexcept = default;
inline Ordinal& Ordinal::operator=(const Ordinal&) = default;
inline Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
inline Ordinal::~Ordinal() = default;
inline Ordinal::Ordinal(std::vector<VeblenTerm> terms) : terms_(std::move(terms)) {}

inline Ordinal Ordinal::finite(std::uint64_t n) {
  return Ordinal(std::vector<VeblenTerm>(n, VeblenTerm{}));
}

inline Ordinal Ordinal::term(Ordinal index, Ordinal argument) {
  std::vector<VeblenTerm> ts;
  ts.push_back(VeblenTerm{std::move(index), std::move(argument)});
  return Ordinal(std::move(ts));
}

inline Ordinal Ordinal::omega() { return term(Ordinal(), finite(1)); }

inline bool Ordinal::isFinite() const {
  for (const auto& t : terms_)
    if (!t.isUnit()) return false;
  return true;
}

inline bool Ordinal::isSuccessor() const {
  return !terms_.empty() && terms_.back().isUnit();
}

inline std::optional<std::uint64_t> Ordinal::toFinite() const {
  if (!isFinite()) return std::nullopt;
  return terms_.size();
}

// ---------------------------------------------------------------------------
// comparison

namespace detail {

using TermSpan = std::span<const VeblenTerm>;

std::strong_ordering compareTermLists(TermSpan a, TermSpan b);

inline std::strong_ordering compareTerm(const VeblenTerm& s, const VeblenTerm& t) {
  auto c = compareTermLists(s.index.terms(), t.index.terms());
  if (c < 0) return compareTermLists(s.argument.terms(), TermSpan(&t, 1));
  if (c == 0) return compareTermLists(s.argument.terms(), t.argument.terms());
  return compareTermLists(TermSpan(&s, 1), t.argument.terms());
}

inline std::strong_ordering compareTermLists(TermSpan a, TermSpan b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = compareTerm(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() <=> b.size();
}

inline bool sameTermLists(TermSpan a, TermSpan b);

inline bool sameTerm(const VeblenTerm& s, const VeblenTerm& t) {
  return sameTermLists(s.index.terms(), t.index.terms()) &&
         sameTermLists(s.argument.terms(), t.argument.terms());
}

inline bool sameTermLists(TermSpan a, TermSpan b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!sameTerm(a[i], b[i])) return false;
  return true;
}

}  // namespace detail

/// Ordinal order.  Agrees with structural equality on normal forms.
inline std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  return detail::compareTermLists(a.terms(), b.terms());
}

/// Structural equality.
inline bool operator==(const Ordinal& a, const Ordinal& b) {
  return detail::sameTermLists(a.terms(), b.terms());
}

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  return compare(a, b);
}

inline bool operator==(const VeblenTerm& a, const VeblenTerm& b) {
  return detail::sameTerm(a, b);
}

// ---------------------------------------------------------------------------
// normal form

inline bool isNormalForm(const Ordinal& a) {
  const auto& ts = a.terms();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    if (!isNormalForm(t.index) || !isNormalForm(t.argument)) return false;
    // phi(a, b) with b = phi(c, d), c > a, collapses to b
    if (t.argument.isSingleTerm() && compare(t.argument.terms()[0].index, t.index) > 0)
      return false;
    if (i > 0 && detail::compareTerm(ts[i - 1], t) < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// arithmetic

inline Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.isZero()) return a;
  if (a.isZero()) return b;
  const auto& head = b.terms().front();
  std::vector<VeblenTerm> out;
  for (const auto& t : a.terms()) {
    if (detail::compareTerm(t, head) < 0) break;
    out.push_back(t);
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal(std::move(out));
}

/// w^a.
inline Ordinal omegaPower(const Ordinal& a) {
  if (a.isSingleTerm() && !a.terms().front().index.isZero()) return a;
  return Ordinal::term(Ordinal(), a);
}

/// Standard binary Veblen function, phi(0, x) = w^x.
inline Ordinal phi(const Ordinal& a, const Ordinal& b) {
  if (b.isSingleTerm() && compare(b.terms().front().index, a) > 0) return b;
  return Ordinal::term(a, b);
}

/// Offset variant: index 0 enumerates w^(1+x), higher indices agree with phi.
inline Ordinal paperPhi(const Ordinal& a, const Ordinal& b) {
  if (a.isZero()) return omegaPower(add(Ordinal::finite(1), b));
  return phi(a, b);
}

/// Exponents of the Cantor normal form, largest first.
inline std::vector<Ordinal> cnfExponents(const Ordinal& a) {
  std::vector<Ordinal> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    if (t.index.isZero())
      out.push_back(t.argument);
    else
      out.push_back(Ordinal(std::vector<VeblenTerm>{t}));
  }
  return out;
}

/// w * a.
inline Ordinal omegaTimes(const Ordinal& a) {
  Ordinal out;
  for (const auto& e : cnfExponents(a))
    out = add(out, omegaPower(add(Ordinal::finite(1), e)));
  return out;
}

/// The g with a + g = b.  Throws UndefinedOperation when a > b.
inline Ordinal leftSubtract(const Ordinal& a, const Ordinal& b) {
  if (compare(a, b) > 0) throw UndefinedOperation("leftSubtract: left operand exceeds right");
  const auto& at = a.terms();
  const auto& bt = b.terms();
  std::size_t i = 0;
  while (i < at.size() && i < bt.size() && at[i] == bt[i]) ++i;
  return Ordinal(std::vector<VeblenTerm>(bt.begin() + static_cast<std::ptrdiff_t>(i), bt.end()));
}

/// Successor a + 1.
inline Ordinal successor(const Ordinal& a) { return add(a, Ordinal::finite(1)); }

inline Ordinal epsilon(const Ordinal& a) { return phi(Ordinal::finite(1), a); }

// ---------------------------------------------------------------------------
// Goedel coding
//
//   code(0)                 = 0
//   code(t_1 + ... + t_k)   = 1 + pair(pair(code(index_1), code(arg_1)), code(t_2 + ... + t_k))
//   pair(x, y)              = (x + y)(x + y + 1) / 2 + y          (Cantor pairing)

inline Natural cantorPair(const Natural& x, const Natural& y) {
  Natural s = x + y;
  return s * (s + 1) / 2 + y;
}

inline std::pair<Natural, Natural> cantorUnpair(const Natural& z) {
  Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
  Natural t = w * (w + 1) / 2;
  Natural y = z - t;
  return {w - y, y};
}

namespace detail {

inline Natural codeFrom(const std::vector<VeblenTerm>& ts, std::size_t i);

inline Natural codeOf(const Ordinal& a) { return codeFrom(a.terms(), 0); }

inline Natural codeFrom(const std::vector<VeblenTerm>& ts, std::size_t i) {
  if (i == ts.size()) return 0;
  Natural head = cantorPair(codeOf(ts[i].index), codeOf(ts[i].argument));
  return 1 + cantorPair(head, codeFrom(ts, i + 1));
}

}  // namespace detail

inline Natural godelCode(const Ordinal& a) { return detail::codeOf(a); }

/// Inverse of godelCode; nullopt when n does not code a normal form.
inline std::optional<Ordinal> godelDecode(const Natural& n) {
  if (n == 0) return Ordinal();
  auto [head, rest] = cantorUnpair(n - 1);
  auto [ci, ca] = cantorUnpair(head);
  auto index = godelDecode(ci);
  if (!index) return std::nullopt;
  auto arg = godelDecode(ca);
  if (!arg) return std::nullopt;
  auto tail = godelDecode(rest);
  if (!tail) return std::nullopt;
  VeblenTerm t{std::move(*index), std::move(*arg)};
  if (t.argument.isSingleTerm() && compare(t.argument.terms().front().index, t.index) > 0)
    return std::nullopt;
  if (!tail->isZero() && detail::compareTerm(t, tail->terms().front()) < 0) return std::nullopt;
  std::vector<VeblenTerm> ts;
  ts.reserve(tail->terms().size() + 1);
  ts.push_back(std::move(t));
  ts.insert(ts.end(), tail->terms().begin(), tail->terms().end());
  return Ordinal(std::move(ts));
}

}  // namespace rcw
