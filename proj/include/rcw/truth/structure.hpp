#pragma once

// Finite interpretations of the extra predicate letters.  Each predicate is
// a finite set of tuples; any tuple with an entry above the support bound
// (the largest member entry) is outside the predicate.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "rcw/errors.hpp"

namespace rcw::truth {

class FiniteStructure {
 public:
  using Tuple = std::vector<std::uint64_t>;

  /// Declares an empty predicate, or checks the arity of an existing one.
  void declare(const std::string& name, std::size_t arity) {
    auto& r = relations_[name];
    if (r.arity && *r.arity != arity) throw Unsupported("predicate " + name + " used with two arities");
    r.arity = arity;
  }

  void add(const std::string& name, Tuple t) {
    declare(name, t.size());
    auto& r = relations_[name];
    for (auto v : t) r.support = std::max(r.support, v);
    r.members.insert(std::move(t));
  }

  bool has(const std::string& name) const { return relations_.count(name) != 0; }

  /// Throws Unsupported for an undeclared letter or a wrong arity.
  bool holds(const std::string& name, const Tuple& args) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw Unsupported("predicate " + name + " is not in the structure");
    const auto& r = it->second;
    if (r.arity && *r.arity != args.size())
      throw Unsupported("predicate " + name + " has arity " + std::to_string(*r.arity));
    for (auto v : args)
      if (v > r.support) return false;
    return r.members.count(args) != 0;
  }

  std::uint64_t supportBound(const std::string& name) const { return relations_.at(name).support; }

  std::vector<std::string> predicates() const {
    std::vector<std::string> out;
    for (const auto& [n, r] : relations_) out.push_back(n);
    return out;
  }

  /// {"P": [0, 2], "R": [[0, 1], [3, 3]]}: unary members as numbers, others as lists.
  static FiniteStructure fromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("structure must be a JSON object", 0);
    FiniteStructure m;
    for (const auto& [name, members] : j.items()) {
      if (!members.is_array()) throw ParseError("members of " + name + " must be a list", 0);
      m.relations_[name];
      for (const auto& e : members) {
        Tuple t;
        if (e.is_number_unsigned()) {
          t.push_back(e.get<std::uint64_t>());
        } else if (e.is_array()) {
          for (const auto& v : e) {
            if (!v.is_number_unsigned()) throw ParseError("tuple entries of " + name + " must be naturals", 0);
            t.push_back(v.get<std::uint64_t>());
          }
        } else {
          throw ParseError("bad member of " + name, 0);
        }
        try {
          m.add(name, std::move(t));
        } catch (const Unsupported& e) {
          throw ParseError(e.what(), 0);
        }
      }
    }
    return m;
  }

  static FiniteStructure fromJsonText(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("structure file: ") + e.what(), e.byte);
    }
    return fromJson(j);
  }

  nlohmann::json toJson() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, r] : relations_) {
      nlohmann::json ms = nlohmann::json::array();
      for (const auto& t : r.members) {
        if (t.size() == 1)
          ms.push_back(t[0]);
        else
          ms.push_back(t);
      }
      j[name] = ms;
    }
    return j;
  }

 private:
  struct Relation {
    std::optional<std::size_t> arity;
    std::uint64_t support = 0;
    std::set<Tuple> members;
  };

  std::map<std::string, Relation> relations_;
};

}  // namespace rcw::truth
