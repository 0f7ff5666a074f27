#pragma once

// Derivations in RC as lists of rule applications.  Each step names the
// premises it uses by position; the last step is the conclusion.
//
// Rules, with their certificate identifiers:
//   1.id      A |- A
//   1.top     A |- T
//   1.cut     from A |- B and B |- C infer A |- C
//   2.elim    A1 & ... & An |- Ai1 & ... & Aik           (a sub-conjunction)
//   2.intro   from A |- B1, ..., A |- Bk infer A |- B1 & ... & Bk
//   3.mono    from A |- B infer <a>A |- <a>B
//   4.trans   <a><a>A |- <a>A
//   5.weaken  <a>A |- <b>A                               (a > b)
//   6.push    <a>A & <b>B |- <a>(A & <b>B)               (a > b)
// Conjunction is compared up to order and repetition throughout.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rcw/errors.hpp"
#include "rcw/rc/formula.hpp"
#include "rcw/syntax.hpp"

namespace rcw::rc {

enum class Rule { Identity, Top, Cut, ConjElim, ConjIntro, Monotone, Transitive, Weaken, Push };

inline const char* ruleId(Rule r) {
  switch (r) {
    case Rule::Identity: return "1.id";
    case Rule::Top: return "1.top";
    case Rule::Cut: return "1.cut";
    case Rule::ConjElim: return "2.elim";
    case Rule::ConjIntro: return "2.intro";
    case Rule::Monotone: return "3.mono";
    case Rule::Transitive: return "4.trans";
    case Rule::Weaken: return "5.weaken";
    case Rule::Push: return "6.push";
  }
  return "?";
}

inline std::optional<Rule> ruleFromId(std::string_view s) {
  for (Rule r : {Rule::Identity, Rule::Top, Rule::Cut, Rule::ConjElim, Rule::ConjIntro, Rule::Monotone,
                 Rule::Transitive, Rule::Weaken, Rule::Push})
    if (s == ruleId(r)) return r;
  return std::nullopt;
}

struct Step {
  Rule rule;
  Formula lhs;
  Formula rhs;
  std::vector<std::size_t> premises;
};

class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::vector<Step> steps) : steps_(std::move(steps)) {}

  const std::vector<Step>& steps() const { return steps_; }
  const Step& conclusion() const { return steps_.back(); }
  bool empty() const { return steps_.empty(); }

  std::size_t append(Step s) {
    steps_.push_back(std::move(s));
    return steps_.size() - 1;
  }

 private:
  std::vector<Step> steps_;
};

namespace detail {

inline bool sameUpToAci(const Formula& a, const Formula& b) { return normalize(a) == normalize(b); }

inline bool subConjunction(const Formula& big, const Formula& small) {
  auto have = normalize(big).conjunctList();
  for (const auto& c : normalize(small).conjunctList())
    if (std::find(have.begin(), have.end(), c) == have.end()) return false;
  return true;
}

inline std::optional<std::string> checkPush(const Step& s) {
  Formula l = normalize(s.lhs);
  Formula r = normalize(s.rhs);
  if (r.kind() != Formula::Kind::Diam) return "conclusion is not a diamond";
  auto parts = l.conjunctList();
  if (parts.size() != 2) return "premise side must have two conjuncts";
  for (int flip = 0; flip < 2; ++flip) {
    const Formula& x = parts[flip];
    const Formula& y = parts[1 - flip];
    if (x.kind() != Formula::Kind::Diam || y.kind() != Formula::Kind::Diam) continue;
    if (x.index() != r.index() || compare(y.index(), x.index()) >= 0) continue;
    if (normalize(Formula::conj(x.body(), y)) == r.body()) return std::nullopt;
  }
  return "not an instance of <a>A & <b>B |- <a>(A & <b>B) with a > b";
}

inline std::optional<std::string> checkStep(const Derivation& d, std::size_t i) {
  const Step& s = d.steps()[i];
  for (auto p : s.premises)
    if (p >= i) return "premise index " + std::to_string(p) + " does not precede the step";
  auto premise = [&](std::size_t k) -> const Step& { return d.steps()[s.premises[k]]; };
  auto arity = [&](std::size_t n) { return s.premises.size() == n; };
  switch (s.rule) {
    case Rule::Identity:
      if (!arity(0)) return std::string("takes no premises");
      if (!sameUpToAci(s.lhs, s.rhs)) return std::string("sides differ");
      return std::nullopt;
    case Rule::Top:
      if (!arity(0)) return std::string("takes no premises");
      if (!normalize(s.rhs).isTop()) return std::string("conclusion is not T");
      return std::nullopt;
    case Rule::Cut:
      if (!arity(2)) return std::string("takes two premises");
      if (!sameUpToAci(premise(0).lhs, s.lhs) || !sameUpToAci(premise(0).rhs, premise(1).lhs) ||
          !sameUpToAci(premise(1).rhs, s.rhs))
        return std::string("premises do not chain to the conclusion");
      return std::nullopt;
    case Rule::ConjElim:
      if (!arity(0)) return std::string("takes no premises");
      if (!subConjunction(s.lhs, s.rhs)) return std::string("conclusion is not a sub-conjunction");
      return std::nullopt;
    case Rule::ConjIntro: {
      if (s.premises.empty()) return std::string("needs premises");
      std::vector<Formula> parts;
      for (std::size_t k = 0; k < s.premises.size(); ++k) {
        if (!sameUpToAci(premise(k).lhs, s.lhs)) return std::string("premise has a different antecedent");
        parts.push_back(premise(k).rhs);
      }
      if (!sameUpToAci(Formula::conj(parts), s.rhs)) return std::string("conclusion is not the conjunction");
      return std::nullopt;
    }
    case Rule::Monotone: {
      if (!arity(1)) return std::string("takes one premise");
      Formula l = normalize(s.lhs);
      Formula r = normalize(s.rhs);
      if (l.kind() != Formula::Kind::Diam || r.kind() != Formula::Kind::Diam || l.index() != r.index())
        return std::string("sides are not diamonds with one index");
      if (!sameUpToAci(premise(0).lhs, l.body()) || !sameUpToAci(premise(0).rhs, r.body()))
        return std::string("premise does not match the bodies");
      return std::nullopt;
    }
    case Rule::Transitive: {
      if (!arity(0)) return std::string("takes no premises");
      Formula l = normalize(s.lhs);
      Formula r = normalize(s.rhs);
      bool ok = l.kind() == Formula::Kind::Diam && l.body().kind() == Formula::Kind::Diam &&
                l.index() == l.body().index() && l.body() == r;
      if (!ok) return std::string("not an instance of <a><a>A |- <a>A");
      return std::nullopt;
    }
    case Rule::Weaken: {
      if (!arity(0)) return std::string("takes no premises");
      Formula l = normalize(s.lhs);
      Formula r = normalize(s.rhs);
      if (l.kind() != Formula::Kind::Diam || r.kind() != Formula::Kind::Diam || l.body() != r.body() ||
          compare(l.index(), r.index()) <= 0)
        return std::string("not an instance of <a>A |- <b>A with a > b");
      return std::nullopt;
    }
    case Rule::Push:
      if (!arity(0)) return std::string("takes no premises");
      return checkPush(s);
  }
  return std::string("unknown rule");
}

}  // namespace detail

/// Nullopt when every step is locally valid; otherwise a message naming the
/// first bad step.
inline std::optional<std::string> checkDerivation(const Derivation& d) {
  if (d.empty()) return std::string("empty derivation");
  for (std::size_t i = 0; i < d.steps().size(); ++i)
    if (auto err = detail::checkStep(d, i)) return "step " + std::to_string(i) + " (" +
                                                    ruleId(d.steps()[i].rule) + "): " + *err;
  return std::nullopt;
}

/// Valid and concluding A |- B.
inline bool certifies(const Derivation& d, const Formula& a, const Formula& b) {
  return !checkDerivation(d) && detail::sameUpToAci(d.conclusion().lhs, a) &&
         detail::sameUpToAci(d.conclusion().rhs, b);
}

/// One line per step: `<n> <rule> [<premises>] <lhs> |- <rhs>`.
inline std::string certificateText(const Derivation& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.steps().size(); ++i) {
    const Step& s = d.steps()[i];
    out << i << ' ' << ruleId(s.rule) << " [";
    for (std::size_t k = 0; k < s.premises.size(); ++k) out << (k ? "," : "") << s.premises[k];
    out << "] " << render(s.lhs) << " |- " << render(s.rhs) << '\n';
  }
  return out.str();
}

inline Derivation parseCertificate(std::string_view text) {
  Derivation d;
  std::size_t lineNo = 0;
  std::size_t offset = 0;
  while (offset < text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(offset, end - offset));
    std::size_t lineStart = offset;
    offset = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto bad = [&](const std::string& why) { return ParseError("certificate line " + std::to_string(lineNo) + ": " + why, lineStart); };
    std::istringstream in(line);
    std::size_t n = 0;
    std::string rule;
    if (!(in >> n) || n != lineNo) throw bad("expected step number " + std::to_string(lineNo));
    if (!(in >> rule)) throw bad("missing rule");
    auto r = ruleFromId(rule);
    if (!r) throw bad("unknown rule " + rule);
    std::string rest;
    std::getline(in, rest);
    auto open = rest.find('[');
    auto close = rest.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open) throw bad("missing premise list");
    std::vector<std::size_t> premises;
    std::string list = rest.substr(open + 1, close - open - 1);
    std::istringstream ps(list);
    std::string item;
    while (std::getline(ps, item, ',')) {
      if (item.find_first_not_of(' ') == std::string::npos) continue;
      try {
        premises.push_back(static_cast<std::size_t>(std::stoull(item)));
      } catch (const std::exception&) {
        throw bad("bad premise index");
      }
    }
    std::string sequent = rest.substr(close + 1);
    auto turn = sequent.find("|-");
    if (turn == std::string::npos) throw bad("missing |-");
    d.append(Step{*r, parseFormula(sequent.substr(0, turn)), parseFormula(sequent.substr(turn + 2)),
                  std::move(premises)});
    ++lineNo;
  }
  return d;
}

}  // namespace rcw::rc
