#pragma once

// Random Delta0 sentences and finite structures over the letters P (unary)
// and R (binary).  Term values stay far below 64 bits: exp only wraps
// leaves and quantifier bounds are numerals <= 5 or enclosing variables.

#include <string>
#include <vector>

#include "rcw/truth/formula.hpp"
#include "rcw/truth/structure.hpp"
#include "support/generators.hpp"

namespace rcw::gen {

inline truth::Term randomLeaf(Rng& rng, const std::vector<std::string>& vars) {
  if (!vars.empty() && coin(rng, 0.6)) return truth::Term::var(vars[below(rng, vars.size())]);
  return truth::Term::numeral(below(rng, 4));
}

inline truth::Term randomTerm(Rng& rng, const std::vector<std::string>& vars, int depth = 2) {
  using truth::Term;
  if (depth == 0 || coin(rng, 0.4)) return randomLeaf(rng, vars);
  switch (below(rng, 4)) {
    case 0: return Term::succ(randomTerm(rng, vars, depth - 1));
    case 1: return Term::plus(randomTerm(rng, vars, depth - 1), randomTerm(rng, vars, depth - 1));
    case 2: return Term::times(randomTerm(rng, vars, depth - 1), randomTerm(rng, vars, depth - 1));
    default: return Term::exp(randomLeaf(rng, vars));
  }
}

inline truth::Formula randomAtom(Rng& rng, const std::vector<std::string>& vars) {
  using truth::Formula;
  Formula a = [&] {
    switch (below(rng, 4)) {
      case 0: return Formula::pred("P", {randomTerm(rng, vars)});
      case 1: return Formula::pred("R", {randomTerm(rng, vars, 1), randomTerm(rng, vars, 1)});
      case 2: return Formula::eq(randomTerm(rng, vars), randomTerm(rng, vars));
      default: return Formula::le(randomTerm(rng, vars), randomTerm(rng, vars));
    }
  }();
  return coin(rng, 0.3) ? truth::deMorganNegate(a) : a;
}

/// Delta0 formula of nesting depth <= depth whose free variables are among vars.
inline truth::Formula randomDelta0(Rng& rng, int depth, std::vector<std::string> vars = {}) {
  using truth::Formula;
  using truth::Term;
  if (depth == 0 || coin(rng, 0.2)) return randomAtom(rng, vars);
  switch (below(rng, 4)) {
    case 0: return Formula::conj(randomDelta0(rng, depth - 1, vars), randomDelta0(rng, depth - 1, vars));
    case 1: return Formula::disj(randomDelta0(rng, depth - 1, vars), randomDelta0(rng, depth - 1, vars));
    default: {
      std::string x = "x" + std::to_string(vars.size());
      Term bound = !vars.empty() && coin(rng, 0.4) ? Term::var(vars[below(rng, vars.size())])
                                                   : Term::numeral(below(rng, 6));
      auto inner = vars;
      inner.push_back(x);
      Formula body = randomDelta0(rng, depth - 1, inner);
      return coin(rng) ? Formula::boundedAll(x, bound, body) : Formula::boundedEx(x, bound, body);
    }
  }
}

inline truth::FiniteStructure randomStructure(Rng& rng) {
  truth::FiniteStructure m;
  m.declare("P", 1);
  m.declare("R", 2);
  std::size_t support = 1 + below(rng, 8);
  for (std::uint64_t i = 0; i < support; ++i)
    if (coin(rng)) m.add("P", {i});
  for (std::uint64_t i = 0; i < support; ++i)
    for (std::uint64_t j = 0; j < support; ++j)
      if (coin(rng, 0.3)) m.add("R", {i, j});
  return m;
}

/// A formula with unbounded quantifiers mixed in, for the syntactic layer.
inline truth::Formula randomArithFormula(Rng& rng, int depth, std::vector<std::string> vars = {}) {
  using truth::Formula;
  if (depth == 0 || coin(rng, 0.15)) return randomAtom(rng, vars);
  std::string x = "x" + std::to_string(vars.size());
  auto inner = vars;
  inner.push_back(x);
  switch (below(rng, 5)) {
    case 0: return Formula::conj(randomArithFormula(rng, depth - 1, vars), randomArithFormula(rng, depth - 1, vars));
    case 1: return Formula::disj(randomArithFormula(rng, depth - 1, vars), randomArithFormula(rng, depth - 1, vars));
    case 2: return Formula::all(x, randomArithFormula(rng, depth - 1, inner));
    case 3: return Formula::ex(x, randomArithFormula(rng, depth - 1, inner));
    default:
      return Formula::boundedAll(x, truth::Term::numeral(below(rng, 4)), randomArithFormula(rng, depth - 1, inner));
  }
}

}  // namespace rcw::gen
