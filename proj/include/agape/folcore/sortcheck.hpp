#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "agape/folcore/defs.hpp"
#include "agape/folcore/freevars.hpp"
#include "agape/folcore/signature.hpp"
#include "agape/folcore/store.hpp"
#include "agape/folcore/subst.hpp"

namespace agape::folcore {

struct TypedVar {
  std::string name;
  std::string sort;
  bool operator==(const TypedVar& o) const { return name == o.name && sort == o.sort; }
};

// Sort checker against a fixed signature.  Definition calls are checked
// against the optional table; without one, call arguments are still checked
// as terms but the call arity is taken on faith (it is re-checked at
// expansion time).
class SortChecker {
 public:
  SortChecker(const Store& st, const Signature& sig, const DefTable* defs = nullptr)
      : st_(st), sig_(sig), defs_(defs), fv_(st) {}

  // Returns the free variables with sorts in first-occurrence order; empty
  // result means the formula is a sentence.
  std::vector<TypedVar> check(FormulaId f) {
    check_node(f);
    var_sorts(f);
    std::vector<TypedVar> out;
    for (const FV& v : fv_.vars(f)) out.push_back({st_.name(v.var), st_.name(v.sort)});
    return out;
  }

  const std::string& term_sort(TermId t) {
    auto it = tsort_.find(t);
    if (it != tsort_.end()) return it->second;
    const TermNode& n = st_.term(t);
    std::string sort;
    switch (n.kind) {
      case TermKind::Var: {
        sort = st_.name(n.var_sort);
        if (!sig_.has_sort(sort))
          throw SortError("variable '" + st_.name(n.name) + "' has undeclared sort '" +
                          sort + "'");
        break;
      }
      case TermKind::Const: {
        const SymbolDecl& d = lookup(n.name);
        if (d.kind != SymbolKind::Constant)
          throw SortError("'" + d.name + "' is not a constant");
        sort = d.result_sort;
        break;
      }
      case TermKind::Fn: {
        const SymbolDecl& d = lookup(n.name);
        if (d.kind != SymbolKind::Function)
          throw SortError("'" + d.name + "' is not a function");
        check_args(d, n.args);
        sort = d.result_sort;
        break;
      }
    }
    return tsort_.emplace(t, std::move(sort)).first->second;
  }

 private:
  const SymbolDecl& lookup(NameId name) {
    const SymbolDecl* d = sig_.find_symbol(st_.name(name));
    if (!d)
      throw SortError("symbol '" + st_.name(name) + "' is not in signature " + sig_.name());
    return *d;
  }

  void check_args(const SymbolDecl& d, const std::vector<TermId>& args) {
    if (d.arity() != args.size())
      throw SortError("symbol '" + d.name + "' applied to " + std::to_string(args.size()) +
                      " arguments, expects " + std::to_string(d.arity()));
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& got = term_sort(args[i]);
      if (got != d.arg_sorts[i])
        throw SortError("argument " + std::to_string(i + 1) + " of '" + d.name +
                        "' has sort " + got + ", expects " + d.arg_sorts[i]);
    }
  }

  void check_node(FormulaId f) {
    if (checked_.count(f)) return;
    const FormulaNode& n = st_.node(f);
    switch (n.kind) {
      case FKind::Atom: {
        const SymbolDecl& d = lookup(n.name);
        if (d.kind != SymbolKind::Relation)
          throw SortError("'" + d.name + "' is not a relation");
        check_args(d, n.terms);
        break;
      }
      case FKind::Eq: {
        const std::string& a = term_sort(n.terms[0]);
        const std::string& b = term_sort(n.terms[1]);
        if (a != b) throw SortError("equality between sorts " + a + " and " + b);
        break;
      }
      case FKind::Call: {
        if (defs_) {
          const NamedDef& d = defs_->get(st_.name(n.name));
          if (d.params.size() != n.terms.size())
            throw SortError("definition '" + d.name + "' called with wrong arity");
          for (std::size_t i = 0; i < n.terms.size(); ++i) {
            const std::string& got = term_sort(n.terms[i]);
            if (got != st_.name(d.params[i].sort))
              throw SortError("argument " + std::to_string(i + 1) + " of definition '" +
                              d.name + "' has sort " + got + ", expects " +
                              st_.name(d.params[i].sort));
          }
        } else {
          for (TermId t : n.terms) term_sort(t);
        }
        break;
      }
      case FKind::Forall:
      case FKind::Exists:
        for (const Binding& b : n.binds)
          if (!sig_.has_sort(st_.name(b.sort)))
            throw SortError("quantifier over undeclared sort '" + st_.name(b.sort) + "'");
        break;
      default:
        break;
    }
    for (FormulaId k : n.kids) check_node(k);
    checked_.insert(f);
  }

  // Sort assignment of every variable occurring (free) in the subformula;
  // memoized per node, throws on a name used at two sorts or a bound
  // occurrence disagreeing with its binder.
  const std::map<NameId, NameId>& var_sorts(FormulaId f) {
    auto hit = vsorts_.find(f);
    if (hit != vsorts_.end()) return hit->second;
    const FormulaNode& n = st_.node(f);
    std::map<NameId, NameId> m;
    auto merge_term = [&](auto&& self, TermId t) -> void {
      const TermNode& tn = st_.term(t);
      if (tn.kind == TermKind::Var) {
        auto [it, fresh] = m.emplace(tn.name, tn.var_sort);
        if (!fresh && it->second != tn.var_sort)
          throw SortError("variable '" + st_.name(tn.name) + "' used with sorts " +
                          st_.name(it->second) + " and " + st_.name(tn.var_sort));
      } else {
        for (TermId a : tn.args) self(self, a);
      }
    };
    for (TermId t : n.terms) merge_term(merge_term, t);
    for (FormulaId k : n.kids)
      for (const auto& [var, sort] : var_sorts(k)) {
        auto [it, fresh] = m.emplace(var, sort);
        if (!fresh && it->second != sort)
          throw SortError("variable '" + st_.name(var) + "' used with sorts " +
                          st_.name(it->second) + " and " + st_.name(sort));
      }
    if (n.kind == FKind::Forall || n.kind == FKind::Exists) {
      for (const Binding& b : n.binds) {
        auto it = m.find(b.var);
        if (it != m.end()) {
          if (it->second != b.sort)
            throw SortError("bound variable '" + st_.name(b.var) + "' used with sort " +
                            st_.name(it->second) + ", bound at sort " + st_.name(b.sort));
          m.erase(it);
        }
      }
    }
    return vsorts_.emplace(f, std::move(m)).first->second;
  }

  const Store& st_;
  const Signature& sig_;
  const DefTable* defs_;
  FreeVarCache fv_;
  std::unordered_map<TermId, std::string> tsort_;
  std::unordered_set<FormulaId> checked_;
  std::unordered_map<FormulaId, std::map<NameId, NameId>> vsorts_;
};

inline std::vector<TypedVar> sort_check(const Store& st, const Signature& sig, FormulaId f,
                                        const DefTable* defs = nullptr) {
  SortChecker c(st, sig, defs);
  return c.check(f);
}

inline bool is_sentence(const Store& st, const Signature& sig, FormulaId f,
                        const DefTable* defs = nullptr) {
  return sort_check(st, sig, f, defs).empty();
}

// Substitution with the documented precondition check: each replacement term
// must have the sort of its variable.
inline FormulaId sorted_substitute(Store& st, const Signature& sig, FormulaId f,
                                   const std::vector<std::pair<std::string, TermId>>& m) {
  SortChecker c(st, sig);
  std::map<NameId, std::string> var_sorts;
  for (const FV& v : free_vars(st, f)) var_sorts[v.var] = st.name(v.sort);
  std::map<NameId, TermId> mm;
  for (const auto& [name, t] : m) {
    NameId id = st.intern(name);
    mm[id] = t;
    auto it = var_sorts.find(id);
    if (it != var_sorts.end()) {
      const std::string& got = c.term_sort(t);
      if (got != it->second)
        throw SortError("substitution for '" + name + "' has sort " + got + ", expects " +
                        it->second);
    }
  }
  return substitute(st, f, mm);
}

// Names of every sort, relation, function, constant and definition call
// occurring in a formula; used for signature-containment scans.
struct SymbolScan {
  std::set<std::string> sorts;
  std::set<std::string> relations;
  std::set<std::string> functions;
  std::set<std::string> constants;
  std::set<std::string> calls;

  bool within(const Signature& sig) const {
    for (const auto& s : sorts)
      if (!sig.has_sort(s)) return false;
    for (const auto& r : relations) {
      const SymbolDecl* d = sig.find_symbol(r);
      if (!d || d->kind != SymbolKind::Relation) return false;
    }
    for (const auto& f : functions) {
      const SymbolDecl* d = sig.find_symbol(f);
      if (!d || d->kind != SymbolKind::Function) return false;
    }
    for (const auto& c : constants) {
      const SymbolDecl* d = sig.find_symbol(c);
      if (!d || d->kind != SymbolKind::Constant) return false;
    }
    return calls.empty();
  }
};

class SymbolScanner {
 public:
  explicit SymbolScanner(const Store& st) : st_(st) {}

  void scan(FormulaId f, SymbolScan& out) {
    if (!seen_f_.insert(f.v).second) return;
    const FormulaNode& n = st_.node(f);
    if (n.kind == FKind::Atom) out.relations.insert(st_.name(n.name));
    if (n.kind == FKind::Call) out.calls.insert(st_.name(n.name));
    for (TermId t : n.terms) scan_term(t, out);
    for (const Binding& b : n.binds) out.sorts.insert(st_.name(b.sort));
    for (FormulaId k : n.kids) scan(k, out);
  }

 private:
  void scan_term(TermId t, SymbolScan& out) {
    if (!seen_t_.insert(t.v).second) return;
    const TermNode& n = st_.term(t);
    switch (n.kind) {
      case TermKind::Var:
        out.sorts.insert(st_.name(n.var_sort));
        break;
      case TermKind::Const:
        out.constants.insert(st_.name(n.name));
        break;
      case TermKind::Fn:
        out.functions.insert(st_.name(n.name));
        for (TermId a : n.args) scan_term(a, out);
        break;
    }
  }

  const Store& st_;
  std::unordered_set<std::uint32_t> seen_f_, seen_t_;
};

inline SymbolScan scan_symbols(const Store& st, FormulaId f) {
  SymbolScan s;
  SymbolScanner sc(st);
  sc.scan(f, s);
  return s;
}

}  // namespace agape::folcore
