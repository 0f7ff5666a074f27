#include <gtest/gtest.h>

#include "rcw/rc/derivation.hpp"
#include "rcw/rc/model.hpp"
#include "rcw/rc/normal_form.hpp"
#include "rcw/rc/proof_search.hpp"
#include "rcw/syntax.hpp"
#include "support/axioms.hpp"
#include "support/enumerate.hpp"
#include "support/generators.hpp"

using namespace rcw;
using namespace rcw::rc;
using rcw::gen::Rng;

namespace {

Formula F(const char* s) { return parseFormula(s); }
Ordinal O(const char* s) { return parseOrdinal(s); }

const std::vector<std::string> kVars = {"p", "q"};

}  // namespace

TEST(RcModel, TopIsOneNode) {
  RcModel m = buildMinimalModel(F("T"));
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.rank(0, 0), RcModel::kNoEdge);
}

TEST(RcModel, ChainGetsTransitiveZeroEdge) {
  // root -1-> a -0-> b.  Downward closure makes root -0-> a, so R_0 is
  // transitive only with root -0-> b.
  RcModel m = buildMinimalModel(F("<1><0>T"));
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.supremum(0, 1), O("1"));
  EXPECT_EQ(m.supremum(1, 2), O("0"));
  EXPECT_EQ(m.supremum(0, 2), O("0"));
  // J at root: root -1-> a and root -0-> a give a -0-> a (a loop);
  // root -1-> a and root -0-> b give a -0-> b, already there.
  EXPECT_EQ(m.supremum(1, 1), O("0"));
  EXPECT_FALSE(m.supremum(2, 0).has_value());
  EXPECT_TRUE(m.isTransitive());
  EXPECT_TRUE(m.satisfiesJ());
}

TEST(RcModel, JConditionAddsSiblingEdge) {
  RcModel m = buildMinimalModel(F("<2>p & <1>q"));
  ASSERT_EQ(m.size(), 3u);
  EXPECT_TRUE(m.label(1).count("p"));
  EXPECT_TRUE(m.label(2).count("q"));
  EXPECT_EQ(m.supremum(0, 1), O("2"));
  EXPECT_EQ(m.supremum(0, 2), O("1"));
  EXPECT_EQ(m.supremum(1, 2), O("1"));
  EXPECT_FALSE(m.supremum(2, 1).has_value());
}

TEST(RcModel, ModelCheckExamples) {
  RcModel m0 = buildMinimalModel(F("<0>T"));
  EXPECT_TRUE(modelCheck(m0, 0, F("T")));
  EXPECT_FALSE(modelCheck(m0, 0, F("<0><0>T")));
  RcModel m1 = buildMinimalModel(F("<1>T"), {O("0")});
  EXPECT_TRUE(modelCheck(m1, 0, F("<0>T")));
}

TEST(RcModel, ClosureSatisfiesFrameConditionsOnRandomFormulas) {
  Rng rng(31);
  auto pool = gen::transfinitePool();
  for (int i = 0; i < 150; ++i) {
    Formula f = gen::randomFormula(rng, 14, pool, kVars);
    RcModel m = buildMinimalModel(f);
    EXPECT_TRUE(m.isTransitive()) << render(f);
    EXPECT_TRUE(m.satisfiesJ()) << render(f);
    EXPECT_TRUE(modelCheck(m, 0, f)) << render(f);
  }
}

TEST(RcDerives, Examples) {
  EXPECT_TRUE(derives(F("<1><1>p"), F("<1>p")));
  EXPECT_TRUE(derives(F("<2>p & <1>q"), F("<2>(p & <1>q)")));
  EXPECT_TRUE(derives(F("<2>(p & <1>q)"), F("<2>p & <1>q")));
  EXPECT_FALSE(derives(F("T"), F("<0>T")));
  EXPECT_TRUE(derives(F("<w><3>p"), F("<3>p")));
  EXPECT_FALSE(derives(F("<1>p"), F("<2>p")));
  EXPECT_FALSE(derives(F("<1>p & <1>q"), F("<1>(p & q)")));
  EXPECT_FALSE(derives(F("<0>p"), F("<0><0>p")));
  EXPECT_TRUE(derives(F("<1>T"), F("<0><0><0>T")));
}

TEST(RcDerives, DependsOnlyOnConjunctionClass) {
  Rng rng(32);
  auto pool = gen::transfinitePool();
  for (int i = 0; i < 300; ++i) {
    Formula a = gen::randomFormula(rng, 8, pool, kVars), b = gen::randomFormula(rng, 6, pool, kVars);
    std::vector<Formula> parts = a.conjunctList();
    std::reverse(parts.begin(), parts.end());
    if (!parts.empty()) parts.push_back(parts.front());
    Formula a2 = Formula::conj(parts);
    EXPECT_EQ(derives(a, b), derives(a2, b));
  }
}

TEST(RcProofSearch, Examples) {
  auto d1 = proofSearch(F("p"), F("p"), 1);
  ASSERT_TRUE(d1);
  EXPECT_EQ(d1->steps().size(), 1u);
  EXPECT_EQ(d1->conclusion().rule, Rule::Identity);

  auto d2 = proofSearch(F("<1>p"), F("<0>p"), 2);
  ASSERT_TRUE(d2);
  EXPECT_EQ(d2->conclusion().rule, Rule::Weaken);
  EXPECT_TRUE(certifies(*d2, F("<1>p"), F("<0>p")));

  EXPECT_FALSE(proofSearch(F("T"), F("<0>T"), 6));
}

TEST(RcProofSearch, FindsAxiomSixAndLoops) {
  for (auto [a, b] : {std::pair{"<2>p & <1>q", "<2>(p & <1>q)"}, std::pair{"<1>T", "<1><0><0>T"},
                      std::pair{"<2>p & <1>q", "<2><1>q"}, std::pair{"<w><3>p", "<3>p"},
                      std::pair{"<2>(p & <1>q)", "<2>p & <1>q"}}) {
    auto d = proofSearch(F(a), F(b), 10);
    ASSERT_TRUE(d) << a << " |- " << b;
    EXPECT_FALSE(checkDerivation(*d)) << *checkDerivation(*d);
    EXPECT_TRUE(certifies(*d, F(a), F(b)));
  }
}

TEST(RcDerivation, CheckerRejectsBadSteps) {
  Derivation bad({Step{Rule::Weaken, F("<0>p"), F("<1>p"), {}}});
  EXPECT_TRUE(checkDerivation(bad));
  Derivation bad6({Step{Rule::Push, F("<1>p & <1>q"), F("<1>(p & <1>q)"), {}}});
  EXPECT_TRUE(checkDerivation(bad6));
  Derivation fwd({Step{Rule::Cut, F("p"), F("p"), {0, 0}}});
  EXPECT_TRUE(checkDerivation(fwd));
  Derivation elim({Step{Rule::ConjElim, F("p & q"), F("q"), {}}});
  EXPECT_FALSE(checkDerivation(elim));
  Derivation ok4({Step{Rule::Transitive, F("<w><w>p"), F("<w>p"), {}}});
  EXPECT_FALSE(checkDerivation(ok4));
  Derivation bad4({Step{Rule::Transitive, F("<w><1>p"), F("<w>p"), {}}});
  EXPECT_TRUE(checkDerivation(bad4));
}

TEST(RcDerivation, CertificateRoundTrip) {
  auto d = proofSearch(F("<2>p & <1>q"), F("<2>(p & <1>q)"), 10);
  ASSERT_TRUE(d);
  std::string text = certificateText(*d);
  Derivation back = parseCertificate(text);
  EXPECT_EQ(certificateText(back), text);
  EXPECT_FALSE(checkDerivation(back));
  EXPECT_THROW(parseCertificate("0 9.magic [] p |- p\n"), ParseError);
}

TEST(RcProofSearch, SoundAndCompleteOnSmallCorpus) {
  auto all = gen::allFormulaTrees(3, {"p"}, {O("0"), O("1")});
  for (const auto& a : all)
    for (const auto& b : all) {
      bool truth = derives(a, b);
      auto d = proofSearch(a, b, 10);
      if (d) {
        EXPECT_TRUE(certifies(*d, a, b));
        EXPECT_TRUE(truth) << render(a) << " |- " << render(b);
      } else {
        EXPECT_FALSE(truth) << render(a) << " |- " << render(b) << " has no proof";
      }
    }
}

TEST(RcProperties, AxiomSchemasSampled) {
  Rng rng(33);
  auto pool = gen::transfinitePool();
  for (int i = 0; i < 400; ++i) {
    Formula a = gen::randomFormula(rng, 7, pool, kVars), b = gen::randomFormula(rng, 5, pool, kVars);
    auto [hi, lo] = gen::orderedPair(rng, pool);
    EXPECT_TRUE(derives(a, a));
    EXPECT_TRUE(derives(a, Formula::top()));
    EXPECT_TRUE(derives(Formula::conj(a, b), a));
    EXPECT_TRUE(derives(Formula::conj(a, b), b));
    Formula w1 = gen::weakenSteps(rng, a, pool, 2), w2 = gen::weakenSteps(rng, w1, pool, 2);
    EXPECT_TRUE(derives(a, w1)) << render(a) << " |- " << render(w1);
    EXPECT_TRUE(derives(w1, w2));
    EXPECT_TRUE(derives(a, w2));
    EXPECT_TRUE(derives(a, Formula::conj(w1, gen::weakenSteps(rng, a, pool, 3))));
    EXPECT_TRUE(derives(Formula::diamond(hi, a), Formula::diamond(hi, w1)));
    EXPECT_TRUE(derives(Formula::diamond(hi, Formula::diamond(hi, a)), Formula::diamond(hi, a)));
    EXPECT_TRUE(derives(Formula::diamond(hi, a), Formula::diamond(lo, a)));
    EXPECT_TRUE(derives(Formula::conj(Formula::diamond(hi, a), Formula::diamond(lo, b)),
                        Formula::diamond(hi, Formula::conj(a, Formula::diamond(lo, b)))));
  }
}

TEST(RcProperties, TransitivityOnRandomPairs) {
  Rng rng(34);
  std::vector<Ordinal> idx = {O("0"), O("1"), O("w")};
  for (int i = 0; i < 400; ++i) {
    Formula a = gen::randomFormula(rng, 5, idx, {"p"}), b = gen::randomFormula(rng, 4, idx, {"p"}),
            c = gen::randomFormula(rng, 3, idx, {"p"});
    if (derives(a, b) && derives(b, c)) { EXPECT_TRUE(derives(a, c)); }
    if (derives(a, b)) {
      EXPECT_TRUE(derives(Formula::diamond(O("1"), a), Formula::diamond(O("1"), b)));
    }
  }
}

TEST(RcNormalForm, Examples) {
  EXPECT_EQ(wordNormalForm(F("T")), Worm());
  auto w = wordNormalForm(F("<1>T & <0>T"));
  ASSERT_TRUE(w);
  EXPECT_TRUE(derives(wormFormula(*w), F("<1><0>T")) && derives(F("<1><0>T"), wormFormula(*w)));
  auto w2 = wordNormalForm(F("<0>(T & <1>T)"));
  ASSERT_TRUE(w2);
  EXPECT_EQ(*w2, parseWorm("[0, 1]"));
  EXPECT_THROW(wordNormalForm(F("<0>p")), NotVariableFree);
}

TEST(RcNormalForm, SameHeadNeedsReordering) {
  // neither conjunct implies the other; the worm is [1, 1, 0, 2]
  auto w = wordNormalForm(F("<1><0><2>T & <1><1>T"));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, parseWorm("[1, 1, 0, 2]"));
}

TEST(RcNormalForm, RandomVariableFreeFormulas) {
  Rng rng(35);
  std::vector<Ordinal> idx = {O("0"), O("1"), O("2"), O("w")};
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::randomFormula(rng, 10, idx, {});
    auto w = wordNormalForm(f);
    ASSERT_TRUE(w) << render(f);
    EXPECT_TRUE(derives(f, wormFormula(*w)) && derives(wormFormula(*w), f)) << render(f);
  }
}

TEST(RcBuildQ, Examples) {
  Formula p = F("p");
  EXPECT_EQ(buildQ(O("5"), 0, p), p);
  EXPECT_EQ(buildQ(O("1"), 1, p), Formula::diamond(O("1"), Formula::conj(p, p)));
  EXPECT_EQ(render(buildQ(O("1"), 1, p)), "<1>(p & p)");
  // T conjuncts vanish: <1>(T & <1>(T & T)) is <1><1>T
  EXPECT_EQ(buildQ(O("1"), 2, Formula::top()), F("<1><1>T"));
}

TEST(RcBuildQ, TowerIsMonotone) {
  Rng rng(36);
  auto pool = gen::transfinitePool();
  for (int i = 0; i < 100; ++i) {
    Formula f = gen::randomFormula(rng, 4, pool, kVars);
    Ordinal beta = pool[gen::below(rng, pool.size())];
    std::size_t k = gen::below(rng, 4);
    EXPECT_TRUE(derives(buildQ(beta, k + 1, f), Formula::diamond(beta, buildQ(beta, k, f))));
  }
}
