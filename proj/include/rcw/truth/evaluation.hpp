#pragma once

// Partial evaluation functions: finite assignments of values to closed terms
// and of truth values to Delta0 sentences, checked clause by clause against
// a finite structure.  Truth of a Delta0 sentence is read off the canonical
// evaluation built for it; any two evaluations agree where both are defined.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "rcw/errors.hpp"
#include "rcw/truth/formula.hpp"
#include "rcw/truth/structure.hpp"
#include "rcw/truth/syntax.hpp"
#include "rcw/truth/term.hpp"

namespace rcw::truth {

struct PartialEvaluation {
  std::map<Term, std::uint64_t> terms;
  /// Values other than 0 and 1 are representable so that checks can fail.
  std::map<Formula, unsigned> sentences;

  std::size_t size() const { return terms.size() + sentences.size(); }
};

struct FailedClause {
  int clause;           // 1..13
  std::string witness;  // the offending domain element, rendered
};

namespace detail {

inline std::optional<std::uint64_t> lookup(const PartialEvaluation& s, const Term& t) {
  auto it = s.terms.find(t);
  if (it == s.terms.end()) return std::nullopt;
  return it->second;
}

inline std::optional<unsigned> lookup(const PartialEvaluation& s, const Formula& f) {
  auto it = s.sentences.find(f);
  if (it == s.sentences.end()) return std::nullopt;
  return it->second;
}

inline bool inSignature(const Formula& f, const FiniteStructure& m) {
  if (f.isAtomic()) {
    if (f.kind() != Formula::Kind::Pred && f.kind() != Formula::Kind::NegPred) return true;
    if (!m.has(f.name())) return false;
    try {
      m.holds(f.name(), FiniteStructure::Tuple(f.terms().size(), 0));
    } catch (const Unsupported&) {
      return false;
    }
    return true;
  }
  if (f.isBinary()) return inSignature(f.left(), m) && inSignature(f.right(), m);
  return inSignature(f.body(), m);
}

/// Clause k on a single term entry; true when it holds or does not apply.
inline bool termClause(int k, const PartialEvaluation& s, const Term& t, std::uint64_t v) {
  using K = Term::Kind;
  auto operand = [&](const Term& u) { return lookup(s, u); };
  switch (k) {
    case 1:
      return isClosed(t);
    case 4:
      return t.kind() != K::Zero || v == 0;
    case 5: {
      if (t.kind() != K::Succ) return true;
      auto a = operand(t.left());
      return a && *a != UINT64_MAX && v == *a + 1;
    }
    case 6: {
      if (t.kind() != K::Plus) return true;
      auto a = operand(t.left()), b = operand(t.right());
      std::uint64_t r;
      return a && b && !__builtin_add_overflow(*a, *b, &r) && v == r;
    }
    case 7: {
      if (t.kind() != K::Times) return true;
      auto a = operand(t.left()), b = operand(t.right());
      std::uint64_t r;
      return a && b && !__builtin_mul_overflow(*a, *b, &r) && v == r;
    }
    case 8: {
      if (t.kind() != K::Exp) return true;
      auto a = operand(t.left());
      return a && *a < 64 && v == (std::uint64_t{1} << *a);
    }
    default:
      return true;
  }
}

inline std::optional<bool> atomTruth(const PartialEvaluation& s, const Formula& f, const FiniteStructure& m) {
  using K = Formula::Kind;
  FiniteStructure::Tuple vals;
  for (const auto& t : f.terms()) {
    auto v = lookup(s, t);
    if (!v) return std::nullopt;
    vals.push_back(*v);
  }
  switch (f.kind()) {
    case K::Pred: return m.holds(f.name(), vals);
    case K::NegPred: return !m.holds(f.name(), vals);
    case K::Eq: return vals[0] == vals[1];
    case K::NegEq: return vals[0] != vals[1];
    case K::Le: return vals[0] <= vals[1];
    case K::NegLe: return vals[0] > vals[1];
    default: return std::nullopt;
  }
}

/// Clause k on a single sentence entry.
inline bool sentenceClause(int k, const PartialEvaluation& s, const Formula& f, unsigned v,
                           const FiniteStructure& m) {
  using K = Formula::Kind;
  switch (k) {
    case 1:
      return isSentence(f) && isDelta0(f) && inSignature(f, m);
    case 2:
      return v <= 1;
    case 9: {
      if (!f.isAtomic()) return true;
      auto t = atomTruth(s, f, m);
      return t && (v == 1) == *t;
    }
    case 10:
    case 11: {
      if (f.kind() != (k == 10 ? K::And : K::Or)) return true;
      auto a = lookup(s, f.left()), b = lookup(s, f.right());
      if (!a || !b) return false;
      bool want = k == 10 ? (*a == 1 && *b == 1) : (*a == 1 || *b == 1);
      return (v == 1) == want;
    }
    case 12:
    case 13: {
      if (f.kind() != (k == 12 ? K::BAll : K::BEx)) return true;
      auto bound = lookup(s, f.bound());
      if (!bound) return false;
      // distinct instances are distinct entries, unless x does not occur
      std::set<std::string> fv;
      collectFreeVariables(f.body(), fv);
      bool vacuous = fv.count(f.name()) == 0;
      if (!vacuous && *bound >= s.sentences.size()) return false;
      std::uint64_t last = vacuous ? 0 : *bound;
      bool all = true, some = false;
      for (std::uint64_t i = 0; i <= last; ++i) {
        auto inst = lookup(s, substitute(f.body(), f.name(), Term::numeral(i)));
        if (!inst) return false;
        all = all && *inst == 1;
        some = some || *inst == 1;
      }
      return (v == 1) == (k == 12 ? all : some);
    }
    default:
      return true;
  }
}

}  // namespace detail

/// The first violated clause, with the earliest offending entry; nullopt
/// when s is an evaluation over m.
inline std::optional<FailedClause> findViolation(const PartialEvaluation& s, const FiniteStructure& m) {
  for (int k = 1; k <= 13; ++k) {
    for (const auto& [t, v] : s.terms)
      if (!detail::termClause(k, s, t, v)) return FailedClause{k, render(t)};
    if (k == 1 || k == 2 || k >= 9)
      for (const auto& [f, v] : s.sentences)
        if (!detail::sentenceClause(k, s, f, v, m)) return FailedClause{k, render(f)};
  }
  return std::nullopt;
}

inline bool isEvaluation(const PartialEvaluation& s, const FiniteStructure& m) { return !findViolation(s, m); }

/// Union of two evaluations; MergeConflict on a shared entry with two values.
inline PartialEvaluation merge(const PartialEvaluation& a, const PartialEvaluation& b) {
  PartialEvaluation out = a;
  for (const auto& [t, v] : b.terms) {
    auto [it, fresh] = out.terms.emplace(t, v);
    if (!fresh && it->second != v) throw MergeConflict("term " + render(t) + " has two values");
  }
  for (const auto& [f, v] : b.sentences) {
    auto [it, fresh] = out.sentences.emplace(f, v);
    if (!fresh && it->second != v) throw MergeConflict("sentence " + render(f) + " has two values");
  }
  return out;
}

namespace detail {

inline void requireDelta0Sentence(const Formula& f) {
  if (!isSentence(f)) throw NotVariableFree("not a sentence: " + render(f));
  if (!isDelta0(f)) throw Unsupported("not a Delta0 formula: " + render(f));
}

class EvaluationBuilder {
 public:
  EvaluationBuilder(const FiniteStructure& m, std::size_t maxEntries) : m_(m), maxEntries_(maxEntries) {}

  std::uint64_t term(const Term& t) {
    if (auto v = lookup(s_, t)) return *v;
    std::uint64_t v = 0;
    switch (t.kind()) {
      case Term::Kind::Zero:
        break;
      case Term::Kind::Succ:
        v = checkedAdd(term(t.left()), 1);
        break;
      case Term::Kind::Exp:
        v = checkedExp2(term(t.left()));
        break;
      case Term::Kind::Plus:
        v = checkedAdd(term(t.left()), term(t.right()));
        break;
      case Term::Kind::Times:
        v = checkedMul(term(t.left()), term(t.right()));
        break;
      case Term::Kind::Var:
        throw NotVariableFree("open term " + t.name());
    }
    grow();
    s_.terms.emplace(t, v);
    return v;
  }

  bool sentence(const Formula& f) {
    using K = Formula::Kind;
    if (auto v = lookup(s_, f)) return *v == 1;
    bool r = false;
    if (f.isAtomic()) {
      for (const auto& t : f.terms()) term(t);
      r = *atomTruth(s_, f, m_);
    } else if (f.isBinary()) {
      bool a = sentence(f.left());
      bool b = sentence(f.right());
      r = f.kind() == K::And ? (a && b) : (a || b);
    } else {
      std::uint64_t n = term(f.bound());
      if (n >= maxEntries_) throw BudgetExceeded("quantifier bound too large");
      bool all = true, some = false;
      // every instance up to the bound goes in, not just up to the first witness
      for (std::uint64_t i = 0; i <= n; ++i) {
        bool inst = sentence(substitute(f.body(), f.name(), Term::numeral(i)));
        all = all && inst;
        some = some || inst;
      }
      r = f.kind() == K::BAll ? all : some;
    }
    grow();
    s_.sentences.emplace(f, r ? 1u : 0u);
    return r;
  }

  PartialEvaluation take() { return std::move(s_); }

 private:
  void grow() {
    if (s_.size() >= maxEntries_) throw BudgetExceeded("evaluation exceeds the entry budget");
  }

  const FiniteStructure& m_;
  std::size_t maxEntries_;
  PartialEvaluation s_;
};

}  // namespace detail

/// Smallest evaluation over m with f in its domain.  Throws NotVariableFree or
/// Unsupported unless f is a Delta0 sentence over m's letters, and
/// BudgetExceeded past maxEntries entries or 64-bit values.
inline PartialEvaluation buildEvaluation(const Formula& f, const FiniteStructure& m,
                                         std::size_t maxEntries = 2'000'000) {
  detail::requireDelta0Sentence(f);
  detail::EvaluationBuilder b(m, maxEntries);
  b.sentence(f);
  return b.take();
}

inline bool trEval(const Formula& f, const FiniteStructure& m) {
  return buildEvaluation(f, m).sentences.at(f) == 1;
}

namespace detail {

inline bool directEval(const Formula& f, const FiniteStructure& m, Environment& env) {
  using K = Formula::Kind;
  auto vals = [&]() {
    FiniteStructure::Tuple out;
    for (const auto& t : f.terms()) out.push_back(evalTerm(t, env));
    return out;
  };
  switch (f.kind()) {
    case K::Pred: return m.holds(f.name(), vals());
    case K::NegPred: return !m.holds(f.name(), vals());
    case K::Eq: return evalTerm(f.terms()[0], env) == evalTerm(f.terms()[1], env);
    case K::NegEq: return evalTerm(f.terms()[0], env) != evalTerm(f.terms()[1], env);
    case K::Le: return evalTerm(f.terms()[0], env) <= evalTerm(f.terms()[1], env);
    case K::NegLe: return evalTerm(f.terms()[0], env) > evalTerm(f.terms()[1], env);
    case K::And: return directEval(f.left(), m, env) && directEval(f.right(), m, env);
    case K::Or: return directEval(f.left(), m, env) || directEval(f.right(), m, env);
    case K::BAll:
    case K::BEx: {
      std::uint64_t n = evalTerm(f.bound(), env);
      auto saved = env.find(f.name()) == env.end() ? std::nullopt : std::optional(env[f.name()]);
      bool universal = f.kind() == K::BAll;
      bool result = universal;
      for (std::uint64_t i = 0; i <= n; ++i) {
        env[f.name()] = i;
        if (directEval(f.body(), m, env) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved)
        env[f.name()] = *saved;
      else
        env.erase(f.name());
      return result;
    }
    case K::All:
    case K::Ex:
      break;
  }
  throw Unsupported("unbounded quantifier");
}

}  // namespace detail

/// Plain recursive truth in the standard model expanded by m.
inline bool directEval(const Formula& f, const FiniteStructure& m) {
  detail::requireDelta0Sentence(f);
  Environment env;
  return detail::directEval(f, m, env);
}

}  // namespace rcw::truth
