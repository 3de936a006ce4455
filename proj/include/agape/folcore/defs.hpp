#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agape/folcore/freevars.hpp"
#include "agape/folcore/store.hpp"
#include "agape/folcore/subst.hpp"

namespace agape::folcore {

enum class Variant { Plain, Vol };

struct FormulaMeta {
  std::string paper_loc;           // where the formula comes from
  std::string intended_semantics;  // prose statement of the intended meaning
  Variant variant = Variant::Plain;
  bool symbolic = false;  // exempt from finite-model testing
};

struct NamedDef {
  std::string name;
  std::vector<Binding> params;
  FormulaId body{};
  FormulaMeta meta;
};

// Definition table: named, parameterized formula abbreviations.  Bodies may
// call other definitions; expansion requires the call graph to be acyclic.
class DefTable {
 public:
  void add(const Store& st, NamedDef def) {
    if (ix_.count(def.name)) throw DefError("duplicate definition '" + def.name + "'");
    for (std::size_t i = 0; i < def.params.size(); ++i)
      for (std::size_t j = i + 1; j < def.params.size(); ++j)
        if (def.params[i].var == def.params[j].var)
          throw DefError("definition '" + def.name + "' repeats parameter '" +
                         st.name(def.params[i].var) + "'");
    for (const FV& v : free_vars(st, def.body)) {
      bool ok = false;
      for (const Binding& b : def.params)
        if (b.var == v.var && b.sort == v.sort) ok = true;
      if (!ok)
        throw DefError("definition '" + def.name + "' has stray free variable '" +
                       st.name(v.var) + "'");
    }
    ix_[def.name] = defs_.size();
    defs_.push_back(std::move(def));
  }

  bool has(const std::string& name) const { return ix_.count(name) != 0; }
  const NamedDef& get(const std::string& name) const {
    auto it = ix_.find(name);
    if (it == ix_.end()) throw DefError("missing definition '" + name + "'");
    return defs_[it->second];
  }
  const std::vector<NamedDef>& all() const { return defs_; }

  // Merge another table on top of this one (duplicates rejected).
  void absorb(const Store& st, const DefTable& other) {
    for (const NamedDef& d : other.defs_) add(st, d);
  }

 private:
  std::vector<NamedDef> defs_;
  std::map<std::string, std::size_t> ix_;
};

// Expands every definition call; the result contains core connectives and
// atoms only.  Detects cycles and missing definitions.
class DefExpander {
 public:
  DefExpander(Store& st, const DefTable& table) : st_(st), table_(table) {}

  FormulaId expand(FormulaId f) {
    auto hit = cache_.find(f);
    if (hit != cache_.end()) return hit->second;
    const FormulaNode& n = st_.node(f);
    FormulaId out = f;
    switch (n.kind) {
      case FKind::Atom:
      case FKind::Eq:
        break;
      case FKind::Call: {
        const std::string name = st_.name(n.name);
        const NamedDef& def = table_.get(name);
        if (def.params.size() != n.terms.size())
          throw DefError("definition '" + name + "' called with " +
                         std::to_string(n.terms.size()) + " arguments, expects " +
                         std::to_string(def.params.size()));
        FormulaId body = expanded_body(name);
        std::map<NameId, TermId> m;
        for (std::size_t i = 0; i < def.params.size(); ++i)
          m[def.params[i].var] = n.terms[i];
        out = substitute(st_, body, m);
        break;
      }
      case FKind::Not:
        out = st_.lnot(expand(n.kids[0]));
        break;
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaId> ks;
        ks.reserve(n.kids.size());
        for (FormulaId k : n.kids) ks.push_back(expand(k));
        out = n.kind == FKind::And ? st_.conj(std::move(ks)) : st_.disj(std::move(ks));
        break;
      }
      case FKind::Imp:
        out = st_.imp(expand(n.kids[0]), expand(n.kids[1]));
        break;
      case FKind::Forall:
      case FKind::Exists:
        out = st_.quant(n.kind, std::vector<Binding>(n.binds), expand(n.kids[0]));
        break;
    }
    cache_.emplace(f, out);
    return out;
  }

 private:
  FormulaId expanded_body(const std::string& def_name) {
    auto done = body_cache_.find(def_name);
    if (done != body_cache_.end()) return done->second;
    for (const std::string& s : stack_)
      if (s == def_name) {
        std::string chain;
        for (const std::string& t : stack_) chain += t + " -> ";
        throw DefError("cyclic definitions: " + chain + def_name);
      }
    stack_.push_back(def_name);
    FormulaId body = expand(table_.get(def_name).body);
    stack_.pop_back();
    body_cache_.emplace(def_name, body);
    return body;
  }

  Store& st_;
  const DefTable& table_;
  std::vector<std::string> stack_;
  std::unordered_map<FormulaId, FormulaId> cache_;
  std::map<std::string, FormulaId> body_cache_;
};

inline FormulaId expand_defs(Store& st, FormulaId f, const DefTable& table) {
  DefExpander e(st, table);
  return e.expand(f);
}

}  // namespace agape::folcore
