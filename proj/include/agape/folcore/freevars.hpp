#pragma once

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "agape/folcore/store.hpp"

namespace agape::folcore {

// (variable, sort) pair as interned names.
struct FV {
  NameId var;
  NameId sort;
  bool operator==(const FV& o) const { return var == o.var && sort == o.sort; }
};

// Free variables in first-occurrence order (preorder, left to right).  The
// result for a node is intrinsic to the node, so the cache is sound across
// shared subterms.
class FreeVarCache {
 public:
  explicit FreeVarCache(const Store& st) : st_(st) {}

  const std::vector<FV>& term_vars(TermId t) {
    auto it = tcache_.find(t);
    if (it != tcache_.end()) return it->second;
    const TermNode& n = st_.term(t);
    std::vector<FV> out;
    switch (n.kind) {
      case TermKind::Var:
        out.push_back({n.name, n.var_sort});
        break;
      case TermKind::Const:
        break;
      case TermKind::Fn:
        for (TermId a : n.args) merge(out, term_vars(a));
        break;
    }
    return tcache_.emplace(t, std::move(out)).first->second;
  }

  const std::vector<FV>& vars(FormulaId f) {
    auto it = fcache_.find(f);
    if (it != fcache_.end()) return it->second;
    const FormulaNode& n = st_.node(f);
    std::vector<FV> out;
    for (TermId t : n.terms) merge(out, term_vars(t));
    for (FormulaId k : n.kids) merge(out, vars(k));
    if (n.kind == FKind::Forall || n.kind == FKind::Exists) {
      for (const Binding& b : n.binds)
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [&](const FV& v) { return v.var == b.var; }),
                  out.end());
    }
    return fcache_.emplace(f, std::move(out)).first->second;
  }

  static void merge(std::vector<FV>& into, const std::vector<FV>& from) {
    for (const FV& v : from) {
      bool seen = false;
      for (const FV& w : into)
        if (w.var == v.var) {
          seen = true;
          break;
        }
      if (!seen) into.push_back(v);
    }
  }

 private:
  const Store& st_;
  std::unordered_map<TermId, std::vector<FV>> tcache_;
  std::unordered_map<FormulaId, std::vector<FV>> fcache_;
};

inline std::vector<FV> free_vars(const Store& st, FormulaId f) {
  FreeVarCache c(st);
  return c.vars(f);
}

inline bool term_mentions_var(const Store& st, TermId t, NameId var) {
  const TermNode& n = st.term(t);
  switch (n.kind) {
    case TermKind::Var: return n.name == var;
    case TermKind::Const: return false;
    case TermKind::Fn:
      for (TermId a : n.args)
        if (term_mentions_var(st, a, var)) return true;
      return false;
  }
  return false;
}

}  // namespace agape::folcore
