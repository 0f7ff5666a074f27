#include <gtest/gtest.h>

#include "rcw/spectra.hpp"
#include "rcw/syntax.hpp"
#include "support/generators.hpp"

using namespace rcw;
using rcw::gen::Rng;

namespace {

Ordinal O(const char* s) { return parseOrdinal(s); }
Ordinal N(std::uint64_t n) { return Ordinal::finite(n); }
int sign(std::strong_ordering c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

const Ordinal kEps0 = phi(N(1), N(0));

std::vector<TheoryDescriptor> catalog() {
  std::vector<TheoryDescriptor> out;
  for (const char* a : {"1", "2", "w", "w^w"}) {
    out.push_back(pi01Ca0(O(a)));
    out.push_back(pi01Ca(O(a)));
  }
  for (const char* l : {"w", "w^w"}) {
    out.push_back(pi01Ca0Below(O(l)));
    out.push_back(pi01CaBelow(O(l)));
  }
  out.push_back(paT());
  out.push_back(aca());
  for (int n = 0; n <= 3; ++n) out.push_back(eaCtISigma(n));
  return out;
}

/// The worm whose order type at each level gives the preset's value.
Worm definingWorm(const TheoryDescriptor& t) {
  const auto& p = std::get<PresetTheory>(t.presentation);
  switch (p.key) {
    case Preset::Pi01Ca0:
      return Worm({omegaPower(successor(p.parameter))});
    case Preset::Pi01Ca:
      return Worm({add(omegaPower(successor(p.parameter)), Ordinal::omega())});
    case Preset::Pi01Ca0Below:
    case Preset::Pi01CaBelow:
      return Worm({omegaPower(p.parameter)});
    case Preset::PaT:
    case Preset::Aca:
      return parseWorm("[w*2]");
    case Preset::EaCtISigma:
      return Worm({add(O("w"), successor(p.parameter))});
  }
  return Worm();
}

/// Levels below the theory's bound: a fixed pool, points just past each
/// power of w below the bound, and random ordinals.
std::vector<Ordinal> sampleLevels(Rng& rng, const TheoryDescriptor& t) {
  Ordinal bound = *applicabilityBound(t);
  std::vector<Ordinal> cand = gen::transfinitePool();
  for (const auto& e : cnfExponents(bound)) {
    Ordinal p = omegaPower(e);
    for (std::uint64_t k = 0; k < 3; ++k) cand.push_back(add(p, N(k)));
  }
  for (int i = 0; i < 40; ++i) cand.push_back(gen::randomOrdinal(rng, 2, 2));
  std::vector<Ordinal> out;
  for (auto& c : cand)
    if (compare(c, bound) < 0) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST(Spectra, ClosedForms) {
  EXPECT_EQ(ordAt(pi01Ca0(N(1)), N(0)), phi(N(2), N(0)));
  EXPECT_EQ(ordAt(pi01Ca(N(1)), N(0)), phi(N(2), kEps0));
  EXPECT_EQ(ordAt(pi01Ca(N(1)), O("w^2")), kEps0);
  EXPECT_EQ(ordAt(pi01Ca(N(1)), O("w^2+5")), kEps0);
  EXPECT_EQ(ordAt(paT(), N(0)), phi(N(1), phi(N(1), N(0))));
  EXPECT_EQ(ordAt(eaCtISigma(1), O("w")), O("w^w"));
  EXPECT_EQ(ordAt(eaCtISigma(1), O("w+1")), O("w"));
  EXPECT_EQ(ordAt(eaCtISigma(0), N(3)), epsilon(O("w")));
  EXPECT_EQ(ordAt(pi01Ca0Below(O("w")), O("w^5")), phi(O("w"), N(0)));
}

TEST(Spectra, ApplicabilityRanges) {
  EXPECT_THROW(ordAt(pi01Ca0(N(1)), O("w^2")), OutOfApplicability);
  EXPECT_NO_THROW(ordAt(pi01Ca0(N(1)), O("w*7+3")));
  EXPECT_THROW(ordAt(pi01Ca(N(1)), O("w^2+w")), OutOfApplicability);
  EXPECT_THROW(ordAt(paT(), O("w*2")), OutOfApplicability);
  EXPECT_THROW(ordAt(eaCtISigma(2), O("w+3")), OutOfApplicability);
  EXPECT_THROW(ordAt(pi01Ca0Below(O("w")), O("w^w")), OutOfApplicability);
  EXPECT_THROW(ordAt(wordTheory(parseWorm("[w, 3]")), N(4)), OutOfApplicability);
  EXPECT_EQ(ordAt(wordTheory(parseWorm("[w, 3]")), N(3)), orderTypeAt(N(3), parseWorm("[w, 3]")));
  EXPECT_THROW(ordAt(wordTheory(parseWorm("[w]"), N(2)), N(2)), OutOfApplicability);
  EXPECT_EQ(ordAt(wordTheory(Worm()), O("eps0")), N(0));
}

TEST(Spectra, DescriptorValidation) {
  EXPECT_THROW(pi01Ca0(N(0)), Unsupported);
  EXPECT_THROW(pi01Ca(N(0)), Unsupported);
  EXPECT_THROW(pi01Ca0Below(N(3)), Unsupported);
  EXPECT_THROW(pi01CaBelow(O("w+1")), Unsupported);
}

TEST(Spectra, PaTSpectrum) {
  std::vector<Ordinal> levels{N(0), N(1), N(2), O("w"), O("w+1")};
  auto s = spectrum(paT(), levels);
  std::vector<Ordinal> want{epsilon(kEps0), epsilon(kEps0), epsilon(kEps0), kEps0, kEps0};
  ASSERT_EQ(s.entries.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(s.entries[i].first, levels[i]);
    EXPECT_EQ(s.entries[i].second, want[i]);
  }
  EXPECT_TRUE(spectrum(paT(), {}).entries.empty());
  auto one = spectrum(pi01Ca0(N(1)), {N(0)});
  ASSERT_EQ(one.entries.size(), 1u);
  EXPECT_EQ(one.entries[0].second, phi(N(2), N(0)));
  EXPECT_THROW(spectrum(paT(), {N(1), N(1)}), UndefinedOperation);
  EXPECT_THROW(spectrum(paT(), {N(0), O("w*2")}), OutOfApplicability);
}

TEST(Spectra, CatalogMatchesDefiningWorm) {
  Rng rng(17);
  for (const auto& t : catalog()) {
    Worm w = definingWorm(t);
    for (const auto& b : sampleLevels(rng, t)) {
      EXPECT_EQ(ordAt(t, b), orderTypeAt(b, w)) << t.name << " at " << render(b);
    }
  }
}

TEST(Spectra, WordPresetCoherence) {
  for (const auto& t : {paT(), eaCtISigma(0), eaCtISigma(1), eaCtISigma(2), eaCtISigma(3)}) {
    Worm w = *presetWorm(t);
    TheoryDescriptor asWord = wordTheory(w);
    for (const char* b : {"0", "1", "w"}) {
      EXPECT_EQ(ordAt(t, O(b)), orderTypeAt(O(b), w)) << t.name << " at " << b;
      EXPECT_EQ(ordAt(t, O(b)), ordAt(asWord, O(b)));
    }
  }
}

TEST(Spectra, Antitone) {
  Rng rng(5);
  for (const auto& t : catalog()) {
    auto levels = sampleLevels(rng, t);
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t j = i + 1; j < levels.size(); ++j)
        EXPECT_GE(sign(compare(ordAt(t, levels[i]), ordAt(t, levels[j]))), 0) << t.name;
    EXPECT_NO_THROW(spectrum(t, levels));
  }
}

TEST(Spectra, IncreasingInExponent) {
  std::vector<Ordinal> alphas{N(1), N(2), O("w"), O("w^w"), kEps0, phi(N(2), N(0)), phi(O("w"), N(1))};
  for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
    Ordinal lo = ordAt(pi01Ca0(alphas[i]), N(0));
    Ordinal hi = ordAt(pi01Ca0(alphas[i + 1]), N(0));
    EXPECT_LT(sign(compare(lo, hi)), 0);
    // every output is a binary Veblen notation, hence below Gamma_0
    EXPECT_TRUE(isNormalForm(hi));
    EXPECT_LT(sign(compare(hi.terms().front().index, hi)), 0);
  }
}

TEST(Spectra, Pi11AndFunctionClasses) {
  EXPECT_EQ(pi11Ordinal(pi01Ca0(N(1))), phi(N(2), N(0)));
  EXPECT_EQ(pi11Ordinal(pi01Ca(N(1))), phi(N(2), kEps0));
  EXPECT_EQ(pi11Ordinal(aca()), epsilon(kEps0));
  EXPECT_EQ(pi11Ordinal(pi01CaBelow(O("w^w"))), phi(O("w^w"), N(0)));
  EXPECT_THROW(pi11Ordinal(eaCtISigma(1)), Unsupported);
  EXPECT_THROW(pi11Ordinal(wordTheory(parseWorm("[2]"))), Unsupported);

  EXPECT_EQ(fghClassLabel(pi01Ca0(N(1))), phi(N(2), N(0)));
  EXPECT_EQ(fghClassLabel(pi01Ca(N(1))), phi(N(2), kEps0));
  EXPECT_EQ(fghClassLabel(paT()), epsilon(kEps0));
  EXPECT_THROW(fghClassLabel(wordTheory(parseWorm("[2]"))), Unsupported);
}

TEST(Spectra, ParseTheory) {
  EXPECT_EQ(parseTheory("pi01-ca0:w").name, "pi01-ca0:w");
  EXPECT_EQ(ordAt(parseTheory("pi01-ca:1"), N(0)), phi(N(2), kEps0));
  EXPECT_EQ(parseTheory("pa-t").name, "pa-t");
  EXPECT_EQ(ordAt(parseTheory("word:[w*2]"), N(0)), epsilon(kEps0));
  EXPECT_EQ(ordAt(parseTheory("ea-ct-isigma-n:1"), O("w")), O("w^w"));
  EXPECT_THROW(parseTheory("zfc"), ParseError);
  EXPECT_THROW(parseTheory("pa-t:3"), ParseError);
  EXPECT_THROW(parseTheory("pi01-ca0"), ParseError);
  EXPECT_THROW(parseTheory("ea-ct-isigma-n:w"), ParseError);
}

TEST(Fgh, MicroValues) {
  for (const char* a : {"0", "1", "2", "w", "eps0", "phi(2,0)"}) EXPECT_EQ(fghEval(O(a), 0), 1u) << a;
  EXPECT_EQ(fghEval(N(0), 1), 3u);
  EXPECT_EQ(fghEval(N(0), 2), 17u);
  EXPECT_EQ(fghEval(N(1), 1), 4u);
  // only beta = 0 and beta = 1 have codes <= 1
  for (const char* a : {"2", "w", "eps0", "w^w"}) EXPECT_EQ(fghEval(O(a), 1), 5u) << a;
  EXPECT_THROW(fghEval(N(1), 2), BudgetExceeded);
  EXPECT_THROW(fghEval(N(0), 5), BudgetExceeded);
  EXPECT_THROW(fghEval(O("w"), 1, 1), BudgetExceeded);
}

TEST(Fgh, Monotone) {
  std::vector<Ordinal> alphas{N(0), N(1), N(2), O("w"), kEps0, O("eps0+1"), phi(N(2), N(0))};
  for (const auto& a : alphas) {
    EXPECT_LE(fghEval(a, 0), fghEval(a, 1));
    for (const auto& b : alphas) {
      if (compare(b, a) >= 0) continue;
      for (std::uint64_t x = 0; x <= 1; ++x)
        if (godelCode(b) <= x) {
          EXPECT_GE(fghEval(a, x), fghEval(b, x));
        }
    }
  }
  EXPECT_LE(fghEval(N(0), 1), fghEval(N(0), 2));
}
