#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "agape/support.hpp"

namespace agape::folcore {

// Handles into the append-only node store.  Handle equality is structural
// equality: the store interns every node.
struct TermId {
  std::uint32_t v = 0;
  bool operator==(const TermId& o) const { return v == o.v; }
  bool operator!=(const TermId& o) const { return v != o.v; }
  bool operator<(const TermId& o) const { return v < o.v; }
};

struct FormulaId {
  std::uint32_t v = 0;
  bool operator==(const FormulaId& o) const { return v == o.v; }
  bool operator!=(const FormulaId& o) const { return v != o.v; }
  bool operator<(const FormulaId& o) const { return v < o.v; }
};

using NameId = std::uint32_t;

enum class TermKind : std::uint8_t { Var, Fn, Const };

struct TermNode {
  TermKind kind;
  NameId name;          // variable / function / constant name
  NameId var_sort = 0;  // Var only
  std::vector<TermId> args;
};

enum class FKind : std::uint8_t { Atom, Eq, Not, And, Or, Imp, Forall, Exists, Call };

struct Binding {
  NameId var;
  NameId sort;
  bool operator==(const Binding& o) const { return var == o.var && sort == o.sort; }
};

struct FormulaNode {
  FKind kind;
  NameId name = 0;               // Atom relation / Call definition name
  std::vector<TermId> terms;     // Atom, Eq (2 entries), Call
  std::vector<FormulaId> kids;   // connective / quantifier children
  std::vector<Binding> binds;    // Forall / Exists
};

namespace detail {

struct TermKey {
  TermKind kind;
  NameId name;
  NameId var_sort;
  std::vector<TermId> args;
  bool operator==(const TermKey& o) const {
    return kind == o.kind && name == o.name && var_sort == o.var_sort && args == o.args;
  }
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind);
    hash_mix(h, k.name);
    hash_mix(h, k.var_sort);
    for (TermId t : k.args) hash_mix(h, t.v);
    return h;
  }
};

struct FormulaKey {
  FKind kind;
  NameId name;
  std::vector<TermId> terms;
  std::vector<FormulaId> kids;
  std::vector<Binding> binds;
  bool operator==(const FormulaKey& o) const {
    return kind == o.kind && name == o.name && terms == o.terms && kids == o.kids &&
           binds == o.binds;
  }
};

struct FormulaKeyHash {
  std::size_t operator()(const FormulaKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind);
    hash_mix(h, k.name);
    for (TermId t : k.terms) hash_mix(h, t.v);
    for (FormulaId f : k.kids) hash_mix(h, f.v ^ 0x55555555u);
    for (const Binding& b : k.binds) {
      hash_mix(h, b.var);
      hash_mix(h, b.sort + 0x1234u);
    }
    return h;
  }
};

}  // namespace detail

// Append-only, hash-consed store for terms and formulas.  Nodes are
// immutable after insertion; readers never see partial state, and builders
// go through a single writer.
class Store {
 public:
  NameId intern(const std::string& s) {
    auto it = name_ix_.find(s);
    if (it != name_ix_.end()) return it->second;
    NameId id = static_cast<NameId>(names_.size());
    names_.push_back(s);
    name_ix_.emplace(names_.back(), id);
    return id;
  }
  const std::string& name(NameId id) const { return names_[id]; }

  const TermNode& term(TermId id) const { return terms_[id.v]; }
  const FormulaNode& node(FormulaId id) const { return formulas_[id.v]; }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t formula_count() const { return formulas_.size(); }

  TermId var(const std::string& name, const std::string& sort) {
    return intern_term({TermKind::Var, intern(name), intern(sort), {}});
  }
  TermId fn(const std::string& name, std::vector<TermId> args) {
    return intern_term({TermKind::Fn, intern(name), 0, std::move(args)});
  }
  TermId cst(const std::string& name) {
    return intern_term({TermKind::Const, intern(name), 0, {}});
  }

  FormulaId atom(const std::string& rel, std::vector<TermId> ts) {
    return intern_formula({FKind::Atom, intern(rel), std::move(ts), {}, {}});
  }
  FormulaId eq(TermId a, TermId b) {
    return intern_formula({FKind::Eq, 0, {a, b}, {}, {}});
  }
  FormulaId lnot(FormulaId f) { return intern_formula({FKind::Not, 0, {}, {f}, {}}); }
  FormulaId conj(std::vector<FormulaId> kids) {
    assert(!kids.empty());
    if (kids.size() == 1) return kids[0];
    return intern_formula({FKind::And, 0, {}, std::move(kids), {}});
  }
  FormulaId disj(std::vector<FormulaId> kids) {
    assert(!kids.empty());
    if (kids.size() == 1) return kids[0];
    return intern_formula({FKind::Or, 0, {}, std::move(kids), {}});
  }
  FormulaId imp(FormulaId a, FormulaId b) {
    return intern_formula({FKind::Imp, 0, {}, {a, b}, {}});
  }
  FormulaId quant(FKind k, std::vector<Binding> bs, FormulaId body) {
    assert(k == FKind::Forall || k == FKind::Exists);
    assert(!bs.empty());
    return intern_formula({k, 0, {}, {body}, std::move(bs)});
  }
  FormulaId forall(std::vector<Binding> bs, FormulaId body) {
    return quant(FKind::Forall, std::move(bs), body);
  }
  FormulaId exists(std::vector<Binding> bs, FormulaId body) {
    return quant(FKind::Exists, std::move(bs), body);
  }
  FormulaId call(const std::string& def, std::vector<TermId> ts) {
    return intern_formula({FKind::Call, intern(def), std::move(ts), {}, {}});
  }

  Binding bind(const std::string& var, const std::string& sort) {
    return Binding{intern(var), intern(sort)};
  }

 private:
  TermId intern_term(detail::TermKey key) {
    auto it = term_ix_.find(key);
    if (it != term_ix_.end()) return it->second;
    TermId id{static_cast<std::uint32_t>(terms_.size())};
    terms_.push_back(TermNode{key.kind, key.name, key.var_sort, key.args});
    term_ix_.emplace(std::move(key), id);
    return id;
  }

  FormulaId intern_formula(detail::FormulaKey key) {
    auto it = formula_ix_.find(key);
    if (it != formula_ix_.end()) return it->second;
    FormulaId id{static_cast<std::uint32_t>(formulas_.size())};
    formulas_.push_back(FormulaNode{key.kind, key.name, key.terms, key.kids, key.binds});
    formula_ix_.emplace(std::move(key), id);
    return id;
  }

  std::deque<std::string> names_;
  std::unordered_map<std::string, NameId> name_ix_;
  std::deque<TermNode> terms_;
  std::deque<FormulaNode> formulas_;
  std::unordered_map<detail::TermKey, TermId, detail::TermKeyHash> term_ix_;
  std::unordered_map<detail::FormulaKey, FormulaId, detail::FormulaKeyHash> formula_ix_;
};

}  // namespace agape::folcore

namespace std {
template <>
struct hash<agape::folcore::TermId> {
  size_t operator()(agape::folcore::TermId t) const { return t.v; }
};
template <>
struct hash<agape::folcore::FormulaId> {
  size_t operator()(agape::folcore::FormulaId f) const { return f.v; }
};
}  // namespace std
