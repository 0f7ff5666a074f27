#include <gtest/gtest.h>

#include "rcw/truth/evaluation.hpp"
#include "rcw/truth/formula.hpp"
#include "rcw/truth/syntax.hpp"
#include "support/truth_gen.hpp"

using namespace rcw;
using namespace rcw::truth;
using rcw::gen::Rng;

namespace {

Term T(const char* s) { return parseTerm(s); }
Formula F(const char* s) { return truth::parseFormula(s); }

FiniteStructure withP(std::vector<std::uint64_t> members) {
  FiniteStructure m;
  m.declare("P", 1);
  for (auto v : members) m.add("P", {v});
  return m;
}

using L = FormulaClass::Level;

}  // namespace

TEST(TruthTerm, Values) {
  EXPECT_EQ(evalTerm(Term::exp(Term::succ(Term::succ(Term::zero())))), 4u);
  EXPECT_EQ(evalTerm(Term::plus(Term::numeral(2), Term::numeral(3))), 5u);
  EXPECT_EQ(evalTerm(Term::times(Term::zero(), Term::numeral(7))), 0u);
  EXPECT_EQ(evalTerm(T("exp(3) * 2 + S(1)")), 18u);
  EXPECT_EQ(Term::numeral(3), Term::succ(Term::succ(Term::succ(Term::zero()))));
  EXPECT_THROW(evalTerm(T("x + 1")), NotVariableFree);
  EXPECT_THROW(evalTerm(T("exp(64)")), BudgetExceeded);
  EXPECT_EQ(evalTerm(T("x * x"), {{"x", 6}}), 36u);
}

TEST(TruthSyntax, ParseAndRender) {
  EXPECT_EQ(render(F("all x <= S(S(0)) . x <= S(S(0))")), "all x <= 2 . x <= 2");
  EXPECT_EQ(F("P(3) | ~P(3)"), Formula::disj(Formula::pred("P", {Term::numeral(3)}),
                                            Formula::negPred("P", {Term::numeral(3)})));
  EXPECT_EQ(F("(x + 1) <= 3"), Formula::le(T("x + 1"), T("3")));
  EXPECT_EQ(F("(P(x) & x = 1)"), Formula::conj(F("P(x)"), F("x = 1")));
  EXPECT_EQ(F("~(x = 1)"), Formula::negEq(T("x"), T("1")));
  EXPECT_EQ(F("~x <= 1"), Formula::negLe(T("x"), T("1")));
  EXPECT_EQ(F("P(0) | P(1) & P(2)"), Formula::disj(F("P(0)"), Formula::conj(F("P(1)"), F("P(2)"))));
  EXPECT_EQ(F("all x . P(x) & P(0)"), Formula::all("x", F("P(x) & P(0)")));
  EXPECT_EQ(render(F("P(1) & (P(2) & P(3))")), "P(1) & (P(2) & P(3))");
  EXPECT_EQ(render(F("(P(1) | P(2)) & P(3)")), "(P(1) | P(2)) & P(3)");
  EXPECT_EQ(render(F("(all x . P(x)) & P(0)")), "(all x . P(x)) & P(0)");
  EXPECT_EQ(render(T("(1 + 2) * (3 * x)")), "(1 + 2) * (3 * x)");
  EXPECT_THROW(F("P(x"), ParseError);
  EXPECT_THROW(F("all S . P(S)"), ParseError);
  EXPECT_THROW(F("x"), ParseError);
  EXPECT_THROW(F("~(P(1) & P(2))"), ParseError);
  EXPECT_THROW(F("P(1) &"), ParseError);
}

TEST(TruthSyntax, RoundTripRandom) {
  Rng rng(3);
  for (int i = 0; i < 3000; ++i) {
    Formula f = gen::randomArithFormula(rng, 4);
    std::string text = render(f);
    EXPECT_EQ(truth::parseFormula(text), f) << text;
    EXPECT_EQ(render(truth::parseFormula(text)), text);
  }
}

TEST(TruthDirect, Examples) {
  FiniteStructure m = withP({0});
  EXPECT_TRUE(directEval(F("all x <= S(S(0)) . x <= S(S(0))"), m));
  EXPECT_FALSE(directEval(F("ex y <= 0 . S(y) = 0"), m));
  EXPECT_TRUE(directEval(F("P(0)"), m));
  EXPECT_FALSE(directEval(F("P(9)"), m));
  EXPECT_THROW(directEval(F("all x . P(x)"), m), Unsupported);
  EXPECT_THROW(directEval(F("P(y)"), m), NotVariableFree);
  EXPECT_THROW(directEval(F("Q(1)"), m), Unsupported);
}

TEST(TruthEvaluation, ClauseChecks) {
  FiniteStructure m = withP({0});
  EXPECT_TRUE(isEvaluation(PartialEvaluation{}, m));

  PartialEvaluation s;
  s.terms[Term::succ(Term::zero())] = 1;
  auto bad = findViolation(s, m);
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->clause, 5);
  EXPECT_EQ(bad->witness, render(Term::succ(Term::zero())));
  s.terms[Term::zero()] = 0;
  EXPECT_TRUE(isEvaluation(s, m));
  s.terms[Term::zero()] = 2;
  EXPECT_EQ(findViolation(s, m)->clause, 4);

  PartialEvaluation open;
  open.terms[T("x")] = 0;
  EXPECT_EQ(findViolation(open, m)->clause, 1);

  PartialEvaluation twoValued;
  twoValued.terms[Term::zero()] = 0;
  twoValued.sentences[F("0 = 0")] = 2;
  EXPECT_EQ(findViolation(twoValued, m)->clause, 2);
  twoValued.sentences[F("0 = 0")] = 0;
  EXPECT_EQ(findViolation(twoValued, m)->clause, 9);

  PartialEvaluation unbounded;
  unbounded.sentences[F("all x . x = x")] = 1;
  EXPECT_EQ(findViolation(unbounded, m)->clause, 1);

  // break one entry of a built evaluation; no other entry depends on it
  auto breakRoot = [&](const char* text, bool sentence, Term::Kind kind) {
    auto e = buildEvaluation(F(text), m);
    if (sentence) {
      e.sentences[F(text)] ^= 1u;
    } else {
      for (auto& [t, v] : e.terms)
        if (t.kind() == kind) ++v;
    }
    auto f = findViolation(e, m);
    return f ? f->clause : 0;
  };
  EXPECT_EQ(breakRoot("1 + 1 = 2", false, Term::Kind::Plus), 6);
  EXPECT_EQ(breakRoot("2 * 1 = 2", false, Term::Kind::Times), 7);
  EXPECT_EQ(breakRoot("exp(1) = 2", false, Term::Kind::Exp), 8);
  EXPECT_EQ(breakRoot("P(0)", true, Term::Kind::Zero), 9);
  EXPECT_EQ(breakRoot("0 = 0 & P(0)", true, Term::Kind::Zero), 10);
  EXPECT_EQ(breakRoot("0 = 1 | P(0)", true, Term::Kind::Zero), 11);
  EXPECT_EQ(breakRoot("all y <= 1 . P(y)", true, Term::Kind::Zero), 12);
  EXPECT_EQ(breakRoot("ex y <= 1 . P(y)", true, Term::Kind::Zero), 13);
  EXPECT_EQ(breakRoot("ex y <= 3 . P(0)", true, Term::Kind::Zero), 13);

  Formula top = F("ex x <= 2 . (exp(x) = x * 2 + 0 | P(x)) & ~P(S(x))");
  auto built = buildEvaluation(top, m);
  EXPECT_TRUE(isEvaluation(built, m));
  auto missing = built;
  missing.sentences.erase(substitute(top.body(), "x", Term::numeral(1)));
  EXPECT_EQ(findViolation(missing, m)->clause, 13);
  auto noBound = built;
  noBound.terms.erase(Term::numeral(2));
  EXPECT_FALSE(isEvaluation(noBound, m));
}

TEST(TruthEvaluation, Build) {
  FiniteStructure m = withP({0});
  auto s = buildEvaluation(F("0 = 0"), m);
  EXPECT_EQ(s.sentences.at(F("0 = 0")), 1u);
  auto q = buildEvaluation(F("all x <= S(0) . x <= S(0)"), m);
  EXPECT_TRUE(q.sentences.count(F("0 <= 1")));
  EXPECT_TRUE(q.sentences.count(F("1 <= 1")));
  EXPECT_TRUE(isEvaluation(q, m));
  EXPECT_THROW(buildEvaluation(F("all x . P(x)"), m), Unsupported);
  EXPECT_THROW(buildEvaluation(F("all x <= exp(40) . P(x)"), m), BudgetExceeded);
}

TEST(TruthEvaluation, TrExamples) {
  FiniteStructure m = withP({1, 4});
  EXPECT_TRUE(trEval(F("all x <= 2 . ex y <= x . y = x"), m));
  EXPECT_TRUE(directEval(F("all x <= 2 . ex y <= x . y = x"), m));
  EXPECT_FALSE(trEval(F("0 = S(0)"), m));
  for (const auto& mm : {withP({}), withP({3}), withP({0, 1, 2, 3})}) EXPECT_TRUE(trEval(F("P(3) | ~P(3)"), mm));
}

TEST(TruthEvaluation, MergeConflicts) {
  PartialEvaluation a, b;
  a.terms[Term::zero()] = 0;
  b.terms[Term::zero()] = 1;
  EXPECT_THROW(merge(a, b), MergeConflict);
  b.terms[Term::zero()] = 0;
  EXPECT_EQ(merge(a, b).terms.size(), 1u);
}

TEST(TruthEvaluation, RandomAgreement) {
  Rng rng(11);
  for (int i = 0; i < 1500; ++i) {
    FiniteStructure m = gen::randomStructure(rng);
    Formula f = gen::randomDelta0(rng, 4);
    Formula g = gen::randomDelta0(rng, 4);
    auto sf = buildEvaluation(f, m);
    auto sg = buildEvaluation(g, m);
    ASSERT_EQ(sf.sentences.at(f) == 1, directEval(f, m)) << render(f);
    ASSERT_FALSE(findViolation(sf, m)) << render(f) << " clause " << findViolation(sf, m)->clause;
    // different evaluations agree wherever both are defined
    PartialEvaluation both;
    ASSERT_NO_THROW(both = merge(sf, sg));
    EXPECT_TRUE(isEvaluation(both, m));
    for (const auto& [t, v] : sf.terms) ASSERT_EQ(v, evalTerm(t));
    EXPECT_EQ(trEval(deMorganNegate(f), m), !trEval(f, m));
  }
}

TEST(TruthEvaluation, TamperingIsDetected) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    FiniteStructure m = gen::randomStructure(rng);
    Formula f = gen::randomDelta0(rng, 3);
    auto s = buildEvaluation(f, m);
    auto broken = s;
    auto it = std::next(broken.sentences.begin(), static_cast<std::ptrdiff_t>(gen::below(rng, broken.sentences.size())));
    it->second = 1 - it->second;
    EXPECT_TRUE(findViolation(broken, m)) << render(it->first);
  }
}

TEST(TruthClassify, Examples) {
  EXPECT_EQ(classify(F("all x . P(x)")), (FormulaClass{L::Pi, 1}));
  EXPECT_EQ(classify(F("ex x . all y . y <= x")), (FormulaClass{L::Sigma, 2}));
  EXPECT_EQ(classify(F("all x <= 3 . ex y <= x . P(y)")), (FormulaClass{L::Delta0, 0}));
  EXPECT_EQ(classify(F("all x . all y . P(x) | ex z . R(z, y)")), (FormulaClass{L::Pi, 2}));
  EXPECT_EQ(classify(F("(all x . P(x)) & (ex y . P(y))")), (FormulaClass{L::Mixed, 2}));
  EXPECT_EQ(classify(F("(all x . P(x)) & P(0)")), (FormulaClass{L::Pi, 1}));
  EXPECT_EQ(classify(F("all x <= 3 . ex y . P(y)")), (FormulaClass{L::Pi, 2}));
  EXPECT_EQ(classify(F("ex x . ex y . P(x)")), (FormulaClass{L::Sigma, 1}));
}

TEST(TruthClassify, NegationDuality) {
  Rng rng(4);
  EXPECT_EQ(deMorganNegate(F("P(1)")), F("~P(1)"));
  EXPECT_EQ(deMorganNegate(F("all x . P(x) & x = 0")), F("ex x . ~P(x) | ~(x = 0)"));
  for (int i = 0; i < 3000; ++i) {
    Formula f = gen::randomArithFormula(rng, 5);
    Formula n = deMorganNegate(f);
    EXPECT_EQ(deMorganNegate(n), f);
    FormulaClass a = classify(f), b = classify(n);
    EXPECT_EQ(a.n, b.n);
    if (a.level == L::Pi) { EXPECT_EQ(b.level, L::Sigma); }
    if (a.level == L::Sigma) { EXPECT_EQ(b.level, L::Pi); }
    if (a.level == L::Delta0 || a.level == L::Mixed) { EXPECT_EQ(b.level, a.level); }
    EXPECT_EQ(a.level == L::Delta0, isDelta0(f));
  }
}

TEST(TruthClassify, Schema) {
  auto s = truthSchema({L::Pi, 2});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.front().rfind("Tr_Pi2(phi) :=", 0), 0u);
  EXPECT_EQ(s[1], "Tr_Sigma1(phi) := ~Tr_Pi1(~phi)");
  EXPECT_EQ(s.back().rfind("Tr(phi) :=", 0), 0u);
  EXPECT_EQ(truthSchema({L::Delta0, 0}).size(), 1u);
  EXPECT_THROW(truthSchema({L::Mixed, 2}), Unsupported);
}
