#pragma once

// Cataloged theories, their level-wise conservativity ordinals, and a
// small-input evaluator for the fast-growing hierarchy.
//
// A theory is either a worm read over the base theory (its ordinal at level b
// is the order type of the worm in W_b) or a named preset with a closed form.
// Preset keys as accepted by parseTheory:
//   pi01-ca0:A     iterated Pi^0_1 comprehension without induction, A >= 1
//   pi01-ca:A      same with full induction, A >= 1
//   pi01-ca0-lt:L  the union of the stages below w^L, L a limit
//   pi01-ca-lt:L
//   pa-t, aca      arithmetic with a truth predicate, or ACA
//   ea-ct-isigma-n:N
//   word:WORM      e.g. word:[w*2]

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rcw/errors.hpp"
#include "rcw/ordinal.hpp"
#include "rcw/syntax.hpp"
#include "rcw/worm.hpp"

namespace rcw {

enum class Preset { Pi01Ca0, Pi01Ca, Pi01Ca0Below, Pi01CaBelow, PaT, Aca, EaCtISigma };

struct WordOverBase {
  Worm worm;
  /// Exclusive bound on levels; nullopt for none beyond the worm's own.
  std::optional<Ordinal> applicabilityBound;
};

struct PresetTheory {
  Preset key;
  Ordinal parameter;  // alpha, lambda or n; zero when unused
};

struct TheoryDescriptor {
  std::string name;
  std::variant<WordOverBase, PresetTheory> presentation;
};

struct Spectrum {
  std::vector<std::pair<Ordinal, Ordinal>> entries;  // (level, ordinal)
};

namespace detail {

inline const Ordinal& epsilon0() {
  static const Ordinal e = epsilon(Ordinal());
  return e;
}

/// w_0 = 1, w_{n+1} = w^{w_n}.
inline Ordinal omegaTower(std::uint64_t n) {
  Ordinal x = Ordinal::finite(1);
  for (std::uint64_t i = 0; i < n; ++i) x = omegaPower(x);
  return x;
}

inline const char* presetKey(Preset p) {
  switch (p) {
    case Preset::Pi01Ca0: return "pi01-ca0";
    case Preset::Pi01Ca: return "pi01-ca";
    case Preset::Pi01Ca0Below: return "pi01-ca0-lt";
    case Preset::Pi01CaBelow: return "pi01-ca-lt";
    case Preset::PaT: return "pa-t";
    case Preset::Aca: return "aca";
    case Preset::EaCtISigma: return "ea-ct-isigma-n";
  }
  return "?";
}

inline bool hasParameter(Preset p) { return p != Preset::PaT && p != Preset::Aca; }

inline TheoryDescriptor makePreset(Preset p, Ordinal param) {
  std::string name = presetKey(p);
  if (hasParameter(p)) name += ":" + render(param);
  return TheoryDescriptor{std::move(name), PresetTheory{p, std::move(param)}};
}

inline void requireAtLeastOne(const Ordinal& a) {
  if (a.isZero()) throw Unsupported("the iteration exponent must be at least 1");
}

inline std::uint64_t smallNatural(const Ordinal& n) {
  auto v = n.toFinite();
  if (!v) throw Unsupported("ea-ct-isigma-n needs a natural number");
  return *v;
}

}  // namespace detail

inline TheoryDescriptor pi01Ca0(const Ordinal& alpha) {
  detail::requireAtLeastOne(alpha);
  return detail::makePreset(Preset::Pi01Ca0, alpha);
}

inline TheoryDescriptor pi01Ca(const Ordinal& alpha) {
  detail::requireAtLeastOne(alpha);
  return detail::makePreset(Preset::Pi01Ca, alpha);
}

inline TheoryDescriptor pi01Ca0Below(const Ordinal& lambda) {
  if (!lambda.isLimit()) throw Unsupported("the bound exponent must be a limit");
  return detail::makePreset(Preset::Pi01Ca0Below, lambda);
}

inline TheoryDescriptor pi01CaBelow(const Ordinal& lambda) {
  if (!lambda.isLimit()) throw Unsupported("the bound exponent must be a limit");
  return detail::makePreset(Preset::Pi01CaBelow, lambda);
}

inline TheoryDescriptor paT() { return detail::makePreset(Preset::PaT, Ordinal()); }
inline TheoryDescriptor aca() { return detail::makePreset(Preset::Aca, Ordinal()); }

inline TheoryDescriptor eaCtISigma(std::uint64_t n) {
  return detail::makePreset(Preset::EaCtISigma, Ordinal::finite(n));
}

inline TheoryDescriptor wordTheory(Worm worm, std::optional<Ordinal> bound = std::nullopt) {
  std::string name = "word:" + render(worm);
  return TheoryDescriptor{std::move(name), WordOverBase{std::move(worm), std::move(bound)}};
}

/// The worm a preset is identified with, for presets that have one.
inline std::optional<Worm> presetWorm(const TheoryDescriptor& t) {
  const auto* p = std::get_if<PresetTheory>(&t.presentation);
  if (!p) return std::nullopt;
  if (p->key == Preset::PaT || p->key == Preset::Aca) return Worm({omegaTimes(Ordinal::finite(2))});
  if (p->key == Preset::EaCtISigma) return Worm({add(Ordinal::omega(), successor(p->parameter))});
  return std::nullopt;
}

/// Levels b with b < the result are covered; nullopt means every level is.
inline std::optional<Ordinal> applicabilityBound(const TheoryDescriptor& t) {
  if (const auto* wb = std::get_if<WordOverBase>(&t.presentation)) {
    std::optional<Ordinal> bound = wb->applicabilityBound;
    if (!wb->worm.empty()) {
      const auto& ls = wb->worm.letters();
      Ordinal m = *std::min_element(ls.begin(), ls.end());
      Ordinal own = successor(m);
      if (!bound || compare(own, *bound) < 0) bound = own;
    }
    return bound;
  }
  const auto& p = std::get<PresetTheory>(t.presentation);
  switch (p.key) {
    case Preset::Pi01Ca0:
      return omegaPower(successor(p.parameter));
    case Preset::Pi01Ca:
      return add(omegaPower(successor(p.parameter)), Ordinal::omega());
    case Preset::Pi01Ca0Below:
    case Preset::Pi01CaBelow:
      return omegaPower(p.parameter);
    case Preset::PaT:
    case Preset::Aca:
      return omegaTimes(Ordinal::finite(2));
    case Preset::EaCtISigma:
      return add(Ordinal::omega(), successor(p.parameter));
  }
  return std::nullopt;
}

/// The ordinal of t at level beta.  Throws OutOfApplicability.
inline Ordinal ordAt(const TheoryDescriptor& t, const Ordinal& beta) {
  auto bound = applicabilityBound(t);
  if (bound && compare(beta, *bound) >= 0)
    throw OutOfApplicability("level " + render(beta) + " is outside the range of " + t.name);

  if (const auto* wb = std::get_if<WordOverBase>(&t.presentation)) return orderTypeAt(beta, wb->worm);

  const auto& p = std::get<PresetTheory>(t.presentation);
  const Ordinal& e0 = detail::epsilon0();
  switch (p.key) {
    case Preset::Pi01Ca0:
      return phi(successor(p.parameter), Ordinal());
    case Preset::Pi01Ca:
      if (compare(beta, omegaPower(successor(p.parameter))) < 0) return phi(successor(p.parameter), e0);
      return e0;
    case Preset::Pi01Ca0Below:
    case Preset::Pi01CaBelow:
      return phi(p.parameter, Ordinal());
    case Preset::PaT:
    case Preset::Aca:
      if (beta.isFinite()) return epsilon(e0);
      return e0;
    case Preset::EaCtISigma: {
      std::uint64_t n = detail::smallNatural(p.parameter);
      if (beta.isFinite()) return epsilon(detail::omegaTower(n + 1));
      // beta = w + k with k <= n
      std::uint64_t k = *leftSubtract(Ordinal::omega(), beta).toFinite();
      return detail::omegaTower(n + 1 - k);
    }
  }
  throw Unsupported("unknown preset");
}

/// Pointwise ordAt.  Levels must be strictly increasing.
inline Spectrum spectrum(const TheoryDescriptor& t, const std::vector<Ordinal>& levels) {
  Spectrum s;
  for (const auto& b : levels) {
    if (!s.entries.empty() && compare(s.entries.back().first, b) >= 0)
      throw UndefinedOperation("spectrum levels must be strictly increasing");
    Ordinal o = ordAt(t, b);
    if (!s.entries.empty() && compare(o, s.entries.back().second) > 0)
      throw std::logic_error("spectrum of " + t.name + " increases at level " + render(b));
    s.entries.emplace_back(b, std::move(o));
  }
  return s;
}

inline Ordinal pi11Ordinal(const TheoryDescriptor& t) {
  const auto* p = std::get_if<PresetTheory>(&t.presentation);
  if (!p) throw Unsupported("no Pi^1_1 clause for " + t.name);
  switch (p->key) {
    case Preset::Pi01Ca0:
      return phi(successor(p->parameter), Ordinal());
    case Preset::Pi01Ca:
      return phi(successor(p->parameter), detail::epsilon0());
    case Preset::Pi01Ca0Below:
    case Preset::Pi01CaBelow:
      return phi(p->parameter, Ordinal());
    case Preset::PaT:
    case Preset::Aca:
      return epsilon(detail::epsilon0());
    case Preset::EaCtISigma:
      break;
  }
  throw Unsupported("no Pi^1_1 clause for " + t.name);
}

/// Index of the class of provably total functions: the level-1 ordinal.
inline Ordinal fghClassLabel(const TheoryDescriptor& t) {
  if (!std::holds_alternative<PresetTheory>(t.presentation))
    throw Unsupported("no function-class clause for " + t.name);
  return ordAt(t, Ordinal::finite(1));
}

namespace detail {

inline std::uint64_t checkedPow2(std::uint64_t e) {
  if (e >= 64) throw BudgetExceeded("value exceeds 64 bits");
  return std::uint64_t{1} << e;
}

/// 2_k(y): 2_0(y) = y, 2_{k+1}(y) = 2^{2_k(y)}.
inline std::uint64_t superexp(std::uint64_t k, std::uint64_t y) {
  for (std::uint64_t i = 0; i < k; ++i) y = checkedPow2(y);
  return y;
}

inline std::uint64_t inc(std::uint64_t v) {
  if (v == UINT64_MAX) throw BudgetExceeded("value exceeds 64 bits");
  return v + 1;
}

class FastGrowing {
 public:
  explicit FastGrowing(std::size_t budget) : budget_(budget) {}

  std::uint64_t eval(const Ordinal& a, std::uint64_t x) {
    auto key = std::make_pair(godelCode(a), x);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++steps_ > budget_) throw BudgetExceeded("fast-growing evaluation ran out of steps");

    std::uint64_t best = inc(superexp(x, x));
    for (std::uint64_t c = 0; c <= x; ++c) {
      auto b = godelDecode(Natural(c));
      if (!b || compare(*b, a) >= 0) continue;
      for (std::uint64_t n = 0; n <= x; ++n) {
        std::uint64_t v = n;
        for (std::uint64_t m = 0; m <= x; ++m) {
          if (m > 0) v = eval(*b, v);
          best = std::max(best, inc(v));
        }
      }
    }
    memo_[key] = best;
    return best;
  }

 private:
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::map<std::pair<Natural, std::uint64_t>, std::uint64_t> memo_;
};

}  // namespace detail

/// F_alpha(x) by direct unfolding.  Only tiny x are feasible (x <= 2);
/// BudgetExceeded once the step budget runs out or a value leaves 64 bits.
inline std::uint64_t fghEval(const Ordinal& alpha, std::uint64_t x, std::size_t budget = 100000) {
  detail::FastGrowing f(budget);
  return f.eval(alpha, x);
}

/// Accepts the keys listed at the top of this header.
inline TheoryDescriptor parseTheory(std::string_view s) {
  auto colon = s.find(':');
  std::string key(s.substr(0, colon));
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  auto needArg = [&]() {
    if (colon == std::string_view::npos || arg.empty()) throw ParseError("theory " + key + " needs a parameter", s.size());
  };
  auto noArg = [&]() {
    if (colon != std::string_view::npos) throw ParseError("theory " + key + " takes no parameter", colon);
  };
  if (key == "pa-t") return noArg(), paT();
  if (key == "aca") return noArg(), aca();
  if (key == "word") return needArg(), wordTheory(parseWorm(arg));
  if (key == "pi01-ca0") return needArg(), pi01Ca0(parseOrdinal(arg));
  if (key == "pi01-ca") return needArg(), pi01Ca(parseOrdinal(arg));
  if (key == "pi01-ca0-lt") return needArg(), pi01Ca0Below(parseOrdinal(arg));
  if (key == "pi01-ca-lt") return needArg(), pi01CaBelow(parseOrdinal(arg));
  if (key == "ea-ct-isigma-n") {
    needArg();
    auto n = parseOrdinal(arg).toFinite();
    if (!n) throw ParseError("ea-ct-isigma-n needs a natural number", colon + 1);
    return eaCtISigma(*n);
  }
  throw ParseError("unknown theory '" + key + "'", 0);
}

}  // namespace rcw
