#pragma once

// The `rcw` command line: a thin shell over the library.  execute() takes the
// arguments after the program name and returns the exit code and the text
// for stdout and stderr, so it can be tested without a process.
//
// Exit codes: 0 success, 1 domain error (or failing fixtures), 2 parse or
// usage error.  With --json one object is printed:
//   {"command": ..., "ok": bool, "result": ..., "error": null | message}

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcw/errors.hpp"
#include "rcw/ordinal.hpp"
#include "rcw/rc/derivation.hpp"
#include "rcw/rc/model.hpp"
#include "rcw/rc/normal_form.hpp"
#include "rcw/rc/proof_search.hpp"
#include "rcw/spectra.hpp"
#include "rcw/syntax.hpp"
#include "rcw/truth/evaluation.hpp"
#include "rcw/truth/syntax.hpp"
#include "rcw/worm.hpp"

namespace rcw::cli {

using nlohmann::json;

struct CliResult {
  int exitCode = 0;
  std::string out;
  std::string err;
};

/// Malformed user input; the message already names the input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json result;
  std::string text;  // human form, without trailing newline
};

namespace detail {

/// Long inputs are cut in messages.
inline std::string shorten(const std::string& s, std::size_t keep = 60) {
  return s.size() <= keep ? s : s.substr(0, keep) + "...";
}

template <class F>
auto parsing(const std::string& what, const std::string& text, F&& f) {
  try {
    return f(text);
  } catch (const ParseError& e) {
    throw InputError("cannot parse " + what + " '" + shorten(text) + "': " + e.what());
  }
}

inline Ordinal ord(const std::string& s) {
  return parsing("ordinal", s, [](const std::string& t) { return parseOrdinal(t); });
}
inline Worm worm(const std::string& s) {
  return parsing("worm", s, [](const std::string& t) { return parseWorm(t); });
}
inline rc::Formula rcFormula(const std::string& s) {
  return parsing("formula", s, [](const std::string& t) { return parseFormula(t); });
}
inline TheoryDescriptor theory(const std::string& s) {
  return parsing("theory", s, [](const std::string& t) { return parseTheory(t); });
}
inline truth::Formula arithFormula(const std::string& s) {
  return parsing("formula", s, [](const std::string& t) { return truth::parseFormula(t); });
}

inline std::uint64_t natural(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw InputError("expected a natural number, got '" + s + "'");
  return v;
}

inline std::string relation(std::strong_ordering c) { return c < 0 ? "<" : (c > 0 ? ">" : "="); }

/// Splits at commas outside parentheses and brackets.
inline std::vector<std::string> splitTopLevel(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& p : out) {
    auto b = p.find_first_not_of(" \t");
    auto e = p.find_last_not_of(" \t\r");
    p = b == std::string::npos ? std::string() : p.substr(b, e - b + 1);
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

inline std::vector<Ordinal> ordList(const std::string& s) {
  std::vector<Ordinal> out;
  for (const auto& p : splitTopLevel(s)) out.push_back(ord(p));
  return out;
}

inline json renderList(const std::vector<Ordinal>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(render(x));
  return j;
}

inline std::string joinList(const json& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].get<std::string>();
  return out;
}

inline truth::FiniteStructure loadStructure(const std::string& path) {
  if (path.empty()) return truth::FiniteStructure();
  std::ifstream in(path);
  if (!in) throw InputError("cannot read structure file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return truth::FiniteStructure::fromJsonText(ss.str());
  } catch (const ParseError& e) {
    throw InputError("bad structure file '" + path + "': " + e.what());
  }
}

inline truth::FiniteStructure inlineStructure(const std::string& text) {
  if (text.empty()) return truth::FiniteStructure();
  try {
    return truth::FiniteStructure::fromJsonText(text);
  } catch (const ParseError& e) {
    throw InputError("bad structure '" + text + "': " + e.what());
  }
}

/// Levels reported by ord-analysis: a few landmarks inside the theory's range.
inline std::vector<Ordinal> analysisLevels(const TheoryDescriptor& t) {
  std::vector<Ordinal> cand;
  for (const char* s : {"0", "1", "2", "w", "w+1", "w*2", "w^2", "w^w"}) cand.push_back(parseOrdinal(s));
  if (const auto* p = std::get_if<PresetTheory>(&t.presentation)) {
    if (p->key == Preset::Pi01Ca || p->key == Preset::Pi01Ca0) {
      Ordinal top = omegaPower(successor(p->parameter));
      cand.push_back(top);
      cand.push_back(successor(top));
    }
    if (p->key == Preset::EaCtISigma) cand.push_back(add(Ordinal::omega(), p->parameter));
  }
  if (const auto* w = std::get_if<WordOverBase>(&t.presentation); w && !w->worm.empty()) {
    const auto& ls = w->worm.letters();
    cand.push_back(*std::min_element(ls.begin(), ls.end()));
  }
  auto bound = applicabilityBound(t);
  std::vector<Ordinal> out;
  for (auto& c : cand)
    if (!bound || compare(c, *bound) < 0) out.push_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Outcome spectrumOutcome(const TheoryDescriptor& t, const std::vector<Ordinal>& levels) {
  Spectrum s = spectrum(t, levels);
  json lv = json::array(), os = json::array();
  std::string text;
  for (const auto& [l, o] : s.entries) {
    lv.push_back(render(l));
    os.push_back(render(o));
    text += (text.empty() ? "" : "\n") + render(l) + ": " + render(o);
  }
  return {json{{"theory", t.name}, {"levels", lv}, {"ordinals", os}}, text};
}

inline std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot read '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// Fixture corpus format: one check per line, fields separated by ';':
//   KIND ; INPUT ; ... ; EXPECTED
// '#' starts a comment line.  EXPECTED may be `!error` when the input must be
// rejected (any parse or domain error).  Values are compared after parsing
// and re-rendering, so `w+w` matches `w*2`.
namespace fixtures {

struct Kind {
  std::size_t inputs;
  std::function<std::string(const std::vector<std::string>&)> actual;
  std::function<std::string(const std::string&)> canonical;
};

inline std::string canonOrd(const std::string& s) { return render(detail::ord(s)); }
inline std::string canonWorm(const std::string& s) { return render(detail::worm(s)); }
inline std::string canonFormula(const std::string& s) { return render(detail::rcFormula(s)); }
inline std::string canonWord(const std::string& s) { return s; }
inline std::string canonOrdList(const std::string& s) {
  std::string out;
  for (const auto& o : detail::ordList(s)) out += (out.empty() ? "" : ", ") + render(o);
  return out;
}

inline const std::map<std::string, Kind>& kinds() {
  using V = const std::vector<std::string>&;
  using namespace detail;
  static const std::map<std::string, Kind> k = {
      {"ord-compare", {2, [](V a) { return relation(compare(ord(a[0]), ord(a[1]))); }, canonWord}},
      {"ord-add", {2, [](V a) { return render(add(ord(a[0]), ord(a[1]))); }, canonOrd}},
      {"ord-phi", {2, [](V a) { return render(phi(ord(a[0]), ord(a[1]))); }, canonOrd}},
      {"ord-phi1", {2, [](V a) { return render(paperPhi(ord(a[0]), ord(a[1]))); }, canonOrd}},
      {"ord-cnf",
       {1,
        [](V a) {
          std::string out;
          for (const auto& e : cnfExponents(ord(a[0]))) out += (out.empty() ? "" : ", ") + render(e);
          return out;
        },
        canonOrdList}},
      {"ord-code", {1, [](V a) { return godelCode(ord(a[0])).str(); }, canonWord}},
      {"worm-o", {1, [](V a) { return render(orderType(worm(a[0]))); }, canonOrd}},
      {"worm-o-at", {2, [](V a) { return render(orderTypeAt(ord(a[0]), worm(a[1]))); }, canonOrd}},
      {"worm-cmp-at", {3, [](V a) { return relation(compareAt(ord(a[0]), worm(a[1]), worm(a[2]))); }, canonWord}},
      {"worm-lift", {2, [](V a) { return render(lift(ord(a[0]), worm(a[1]))); }, canonWorm}},
      {"worm-lower", {2, [](V a) { return render(lower(ord(a[0]), worm(a[1]))); }, canonWorm}},
      {"rc-derives",
       {2, [](V a) { return std::string(rc::derives(rcFormula(a[0]), rcFormula(a[1])) ? "true" : "false"); },
        canonWord}},
      {"rc-q",
       {3,
        [](V a) {
          return render(rc::buildQ(ord(a[0]), static_cast<std::size_t>(natural(a[1])), rcFormula(a[2])));
        },
        canonFormula}},
      {"rc-normalize",
       {1,
        [](V a) {
          auto w = rc::wordNormalForm(rcFormula(a[0]));
          if (!w) throw BudgetExceeded("word normal form search exhausted");
          return render(*w);
        },
        canonWorm}},
      {"ord-at", {2, [](V a) { return render(ordAt(theory(a[0]), ord(a[1]))); }, canonOrd}},
      {"spectrum",
       {2,
        [](V a) {
          auto s = spectrum(theory(a[0]), ordList(a[1]));
          std::string out;
          for (const auto& [l, o] : s.entries) out += (out.empty() ? "" : ", ") + render(o);
          return out;
        },
        canonOrdList}},
      {"pi11", {1, [](V a) { return render(pi11Ordinal(theory(a[0]))); }, canonOrd}},
      {"fgh-class", {1, [](V a) { return render(fghClassLabel(theory(a[0]))); }, canonOrd}},
      {"fgh", {2, [](V a) { return std::to_string(fghEval(ord(a[0]), natural(a[1]))); }, canonWord}},
      {"truth-eval",
       {2,
        [](V a) {
          return std::string(truth::trEval(arithFormula(a[0]), inlineStructure(a[1])) ? "true" : "false");
        },
        canonWord}},
      {"truth-direct",
       {2,
        [](V a) {
          return std::string(truth::directEval(arithFormula(a[0]), inlineStructure(a[1])) ? "true" : "false");
        },
        canonWord}},
      {"truth-negate", {1, [](V a) { return truth::render(truth::deMorganNegate(arithFormula(a[0]))); },
                        [](const std::string& e) { return truth::render(arithFormula(e)); }}},
      {"truth-classify", {1, [](V a) { return truth::render(truth::classify(arithFormula(a[0]))); }, canonWord}},
  };
  return k;
}

struct LineResult {
  std::size_t line;
  bool passed;
  std::string message;
};

/// Runs one fixture line; nullopt for blank and comment lines.
inline std::optional<LineResult> runLine(const std::string& raw, std::size_t lineNo) {
  auto first = raw.find_first_not_of(" \t\r");
  if (first == std::string::npos || raw[first] == '#') return std::nullopt;
  std::vector<std::string> fields;
  {
    std::string cur;
    for (char c : raw) {
      if (c == ';') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
      auto b = f.find_first_not_of(" \t");
      auto e = f.find_last_not_of(" \t\r");
      f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
  }
  const auto& ks = kinds();
  auto it = ks.find(fields[0]);
  if (it == ks.end()) return LineResult{lineNo, false, "unknown fixture kind '" + fields[0] + "'"};
  const Kind& kind = it->second;
  if (fields.size() != kind.inputs + 2)
    return LineResult{lineNo, false,
                      fields[0] + " takes " + std::to_string(kind.inputs) + " inputs and an expected value"};
  std::vector<std::string> inputs(fields.begin() + 1, fields.end() - 1);
  const std::string& expected = fields.back();
  bool expectError = expected.rfind("!error", 0) == 0;
  std::string actual;
  try {
    actual = kind.actual(inputs);
  } catch (const std::exception& e) {
    if (expectError) return LineResult{lineNo, true, ""};
    return LineResult{lineNo, false, std::string("error: ") + e.what()};
  }
  if (expectError) return LineResult{lineNo, false, "expected an error, got " + actual};
  std::string want;
  try {
    want = kind.canonical(expected);
  } catch (const std::exception& e) {
    return LineResult{lineNo, false, std::string("bad expected value: ") + e.what()};
  }
  if (want == actual) return LineResult{lineNo, true, ""};
  return LineResult{lineNo, false, "expected " + want + ", got " + actual};
}

struct Report {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // "file:line: message"
};

inline void runFile(const std::filesystem::path& p, Report& r) {
  std::istringstream in(detail::readFile(p));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto res = runLine(line, n);
    if (!res) continue;
    if (res->passed) {
      ++r.passed;
    } else {
      ++r.failed;
      r.failures.push_back(p.string() + ":" + std::to_string(n) + ": " + res->message);
    }
  }
}

/// A .fix file, or every .fix file below a directory in name order.
inline Report runPath(const std::string& path) {
  namespace fs = std::filesystem;
  Report r;
  fs::path p(path);
  if (fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(p))
      if (e.is_regular_file() && e.path().extension() == ".fix") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) runFile(f, r);
  } else {
    runFile(p, r);
  }
  return r;
}

}  // namespace fixtures

inline std::string errorKind(const std::exception& e) {
  if (dynamic_cast<const UndefinedOperation*>(&e)) return "UndefinedOperation";
  if (dynamic_cast<const NotInFragment*>(&e)) return "NotInFragment";
  if (dynamic_cast<const NotVariableFree*>(&e)) return "NotVariableFree";
  if (dynamic_cast<const OutOfApplicability*>(&e)) return "OutOfApplicability";
  if (dynamic_cast<const Unsupported*>(&e)) return "Unsupported";
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
  if (dynamic_cast<const MergeConflict*>(&e)) return "MergeConflict";
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InputError*>(&e)) return "ParseError";
  return "InternalError";
}

inline CliResult execute(const std::vector<std::string>& args) {
  using namespace detail;
  CliResult res;
  std::ostringstream out, err;

  CLI::App app{"Reflection calculus workbench: ordinal notations, worms, RC derivability, "
               "conservativity spectra and Delta0 truth."};
  app.name("rcw");
  app.require_subcommand(1);
  app.fallthrough();
  bool asJson = false;
  app.add_flag("--json", asJson, "Print one JSON object instead of text");

  std::string command;
  std::function<Outcome()> action;
  auto on = [&](CLI::App* sub, std::string name, std::function<Outcome()> f) {
    sub->callback([&command, &action, name = std::move(name), f = std::move(f)]() {
      command = name;
      action = f;
    });
  };
  std::string a, b, c, d;

  // ord
  auto* ordCmd = app.add_subcommand("ord", "Ordinal notations below Gamma_0")->require_subcommand(1);
  {
    auto* s = ordCmd->add_subcommand("compare", "Compare A and B; prints <, = or >");
    s->add_option("A", a)->required();
    s->add_option("B", b)->required();
    on(s, "ord compare", [&] {
      std::string r = relation(compare(ord(a), ord(b)));
      return Outcome{r, r};
    });
  }
  {
    auto* s = ordCmd->add_subcommand("add", "Ordinal sum A + B");
    s->add_option("A", a)->required();
    s->add_option("B", b)->required();
    on(s, "ord add", [&] {
      std::string r = render(add(ord(a), ord(b)));
      return Outcome{r, r};
    });
  }
  bool shifted = false;
  {
    auto* s = ordCmd->add_subcommand("phi", "Veblen function phi(A, B)");
    s->add_option("A", a)->required();
    s->add_option("B", b)->required();
    s->add_flag("--paper", shifted, "Use the variant with phi(0, x) = w^(1+x); higher indices agree");
    on(s, "ord phi", [&] {
      std::string r = render(shifted ? paperPhi(ord(a), ord(b)) : phi(ord(a), ord(b)));
      return Outcome{r, r};
    });
  }
  {
    auto* s = ordCmd->add_subcommand("cnf", "Cantor normal form exponents, largest first");
    s->add_option("A", a)->required();
    on(s, "ord cnf", [&] {
      json r = renderList(cnfExponents(ord(a)));
      return Outcome{r, joinList(r)};
    });
  }
  {
    auto* s = ordCmd->add_subcommand("code", "Goedel code of A");
    s->add_option("A", a)->required();
    on(s, "ord code", [&] {
      std::string r = godelCode(ord(a)).str();
      return Outcome{r, r};
    });
  }
  {
    auto* s = ordCmd->add_subcommand("decode", "Ordinal with Goedel code N, if N is a code");
    s->add_option("N", a)->required();
    on(s, "ord decode", [&] {
      Natural n;
      if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("expected a natural number, got '" + a + "'");
      n = Natural(a);
      auto o = godelDecode(n);
      if (!o) return Outcome{nullptr, "invalid"};
      return Outcome{render(*o), render(*o)};
    });
  }

  // worm
  auto* wormCmd = app.add_subcommand("worm", "Worms of the closed fragment")->require_subcommand(1);
  {
    auto* s = wormCmd->add_subcommand("o", "Order type of W");
    s->add_option("W", a)->required();
    on(s, "worm o", [&] {
      std::string r = render(orderType(worm(a)));
      return Outcome{r, r};
    });
  }
  {
    auto* s = wormCmd->add_subcommand("o-at", "Order type of W in W_ALPHA");
    s->add_option("ALPHA", a)->required();
    s->add_option("W", b)->required();
    on(s, "worm o-at", [&] {
      std::string r = render(orderTypeAt(ord(a), worm(b)));
      return Outcome{r, r};
    });
  }
  {
    auto* s = wormCmd->add_subcommand("cmp-at", "Compare W1 and W2 in W_ALPHA; prints <, = or >");
    s->add_option("ALPHA", a)->required();
    s->add_option("W1", b)->required();
    s->add_option("W2", c)->required();
    on(s, "worm cmp-at", [&] {
      std::string r = relation(compareAt(ord(a), worm(b), worm(c)));
      return Outcome{r, r};
    });
  }
  for (const char* which : {"lift", "lower"}) {
    bool isLift = std::string(which) == "lift";
    auto* s = wormCmd->add_subcommand(which, isLift ? "Add ALPHA to every letter" : "Subtract ALPHA on the left");
    s->add_option("ALPHA", a)->required();
    s->add_option("W", b)->required();
    on(s, std::string("worm ") + which, [&, isLift] {
      std::string r = render(isLift ? lift(ord(a), worm(b)) : lower(ord(a), worm(b)));
      return Outcome{r, r};
    });
  }

  // rc
  auto* rcCmd = app.add_subcommand("rc", "Reflection calculus")->require_subcommand(1);
  bool certificate = false;
  std::size_t depth = 12;
  std::size_t budget = 100000;
  {
    auto* s = rcCmd->add_subcommand("derives", "Decide F |- G");
    s->add_option("F", a)->required();
    s->add_option("G", b)->required();
    s->add_flag("--certificate", certificate, "Also search for and print a checked derivation");
    s->add_option("--depth", depth, "Proof search depth bound")->capture_default_str();
    on(s, "rc derives", [&] {
      rc::Formula f = rcFormula(a), g = rcFormula(b);
      bool r = rc::derives(f, g);
      if (!certificate) return Outcome{r, r ? "true" : "false"};
      json j{{"derives", r}, {"certificate", nullptr}};
      std::string text = r ? "true" : "false";
      if (r) {
        auto proof = rc::proofSearch(f, g, depth);
        if (proof && rc::certifies(*proof, f, g)) {
          j["certificate"] = rc::certificateText(*proof);
          text += "\n" + rc::certificateText(*proof);
          if (text.back() == '\n') text.pop_back();
        } else {
          text += "\nno derivation found within depth " + std::to_string(depth);
        }
      }
      return Outcome{j, text};
    });
  }
  {
    auto* s = rcCmd->add_subcommand("normalize", "Word normal form of a variable-free formula");
    s->add_option("F", a)->required();
    s->add_option("--budget", budget, "Derivability checks allowed")->capture_default_str();
    on(s, "rc normalize", [&] {
      auto w = rc::wordNormalForm(rcFormula(a), budget);
      if (!w) throw BudgetExceeded("word normal form search exhausted its budget");
      return Outcome{render(*w), render(*w)};
    });
  }
  {
    auto* s = rcCmd->add_subcommand("q", "Q_K: <BETA>(F & Q_{K-1}) with Q_0 = T");
    s->add_option("BETA", a)->required();
    s->add_option("K", b)->required();
    s->add_option("F", c)->required();
    on(s, "rc q", [&] {
      std::string r = render(rc::buildQ(ord(a), static_cast<std::size_t>(natural(b)), rcFormula(c)));
      return Outcome{r, r};
    });
  }

  // theories
  std::string levels;
  {
    auto* s = app.add_subcommand("spectrum", "Conservativity ordinals of THEORY at the given levels");
    s->add_option("THEORY", a, "pi01-ca0:A | pi01-ca:A | pi01-ca0-lt:L | pi01-ca-lt:L | pa-t | aca | "
                               "ea-ct-isigma-n:N | word:WORM")
        ->required();
    s->add_option("--levels", levels, "Comma-separated increasing levels")->required();
    on(s, "spectrum", [&] { return spectrumOutcome(theory(a), ordList(levels)); });
  }
  {
    auto* s = app.add_subcommand("ord-analysis", "Pi^1_1 ordinal, function class and sample spectrum of THEORY");
    s->add_option("THEORY", a)->required();
    on(s, "ord-analysis", [&] {
      TheoryDescriptor t = theory(a);
      json j{{"theory", t.name}, {"pi11", nullptr}, {"fghClass", nullptr}};
      std::string text = "theory: " + t.name;
      try {
        j["pi11"] = render(pi11Ordinal(t));
      } catch (const Unsupported&) {
      }
      try {
        j["fghClass"] = render(fghClassLabel(t));
      } catch (const Unsupported&) {
      }
      text += "\npi11: " + (j["pi11"].is_null() ? std::string("unsupported") : j["pi11"].get<std::string>());
      text += "\nfgh class: " +
              (j["fghClass"].is_null() ? std::string("unsupported") : j["fghClass"].get<std::string>());
      Outcome s = spectrumOutcome(t, analysisLevels(t));
      j["spectrum"] = s.result;
      text += "\nspectrum:";
      std::istringstream lines(s.text);
      for (std::string l; std::getline(lines, l);) text += "\n  " + l;
      return Outcome{j, text};
    });
  }
  std::size_t steps = 100000;
  {
    auto* s = app.add_subcommand("fgh", "Fast-growing function F_ALPHA(X) for tiny X");
    s->add_option("ALPHA", a)->required();
    s->add_option("X", b)->required();
    s->add_option("--budget", steps, "Evaluation steps allowed")->capture_default_str();
    on(s, "fgh", [&] {
      std::uint64_t v = fghEval(ord(a), natural(b), steps);
      return Outcome{v, std::to_string(v)};
    });
  }

  // truth
  auto* truthCmd = app.add_subcommand("truth", "Delta0 truth via partial evaluations")->require_subcommand(1);
  std::string structure;
  {
    auto* s = truthCmd->add_subcommand("eval", "Truth of a Delta0 sentence");
    s->add_option("FORMULA", a)->required();
    s->add_option("--structure", structure, "JSON file: predicate -> members");
    on(s, "truth eval", [&] {
      bool r = truth::trEval(arithFormula(a), loadStructure(structure));
      return Outcome{r, r ? "true" : "false"};
    });
  }
  {
    auto* s = truthCmd->add_subcommand("build-ef", "The canonical partial evaluation of a Delta0 sentence");
    s->add_option("FORMULA", a)->required();
    s->add_option("--structure", structure, "JSON file: predicate -> members");
    on(s, "truth build-ef", [&] {
      truth::Formula f = arithFormula(a);
      auto m = loadStructure(structure);
      auto e = truth::buildEvaluation(f, m);
      json ts = json::array(), ss = json::array();
      std::string text;
      for (const auto& [t, v] : e.terms) {
        ts.push_back(json{{"term", truth::render(t)}, {"value", v}});
        text += "term " + truth::render(t) + " = " + std::to_string(v) + "\n";
      }
      for (const auto& [g, v] : e.sentences) {
        ss.push_back(json{{"sentence", truth::render(g)}, {"value", v}});
        text += "sentence " + truth::render(g) + " : " + std::to_string(v) + "\n";
      }
      bool value = e.sentences.at(f) == 1;
      text += std::string("value: ") + (value ? "true" : "false");
      return Outcome{json{{"terms", ts}, {"sentences", ss}, {"value", value}, {"isEvaluation", truth::isEvaluation(e, m)}},
                     text};
    });
  }
  {
    auto* s = truthCmd->add_subcommand("classify", "Delta0, Pi_n, Sigma_n or Mixed_n");
    s->add_option("FORMULA", a)->required();
    on(s, "truth classify", [&] {
      std::string r = truth::render(truth::classify(arithFormula(a)));
      return Outcome{r, r};
    });
  }

  // fixtures
  auto* fixCmd = app.add_subcommand("fixtures", "Regression fixtures")->require_subcommand(1);
  {
    auto* s = fixCmd->add_subcommand("run", "Run a .fix file or a directory of them");
    s->add_option("PATH", a)->required();
    on(s, "fixtures run", [&] {
      auto r = fixtures::runPath(a);
      json j{{"passed", r.passed}, {"failed", r.failed}, {"failures", r.failures}};
      std::string text;
      for (const auto& f : r.failures) text += f + "\n";
      text += std::to_string(r.passed) + " passed, " + std::to_string(r.failed) + " failed";
      return Outcome{j, text};
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    res.exitCode = app.exit(e, out, err);
    if (res.exitCode != 0) res.exitCode = 2;
    res.out = out.str();
    res.err = err.str();
    return res;
  }

  std::string echo = "rcw";
  for (const auto& x : args) echo += " " + shorten(x);
  auto fail = [&](int code, const std::exception& e) {
    res.exitCode = code;
    if (asJson) {
      json j{{"command", command}, {"ok", false}, {"result", nullptr},
             {"error", errorKind(e) + ": " + e.what()}};
      res.out = j.dump() + "\n";
    }
    res.err = echo + ": " + errorKind(e) + ": " + e.what() + "\n";
  };
  try {
    Outcome o = action();
    bool ok = true;
    if (command == "fixtures run") ok = o.result["failed"].get<std::size_t>() == 0;
    res.exitCode = ok ? 0 : 1;
    if (asJson) {
      json j{{"command", command}, {"ok", ok}, {"result", o.result}, {"error", nullptr}};
      res.out = j.dump() + "\n";
    } else {
      res.out = o.text + "\n";
    }
  } catch (const InputError& e) {
    fail(2, e);
  } catch (const ParseError& e) {
    fail(2, e);
  } catch (const Error& e) {
    fail(1, e);
  }
  return res;
}

}  // namespace rcw::cli
