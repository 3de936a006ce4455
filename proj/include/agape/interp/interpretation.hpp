#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agape/folcore/defs.hpp"
#include "agape/folcore/freevars.hpp"
#include "agape/folcore/signature.hpp"
#include "agape/folcore/sortcheck.hpp"
#include "agape/folcore/store.hpp"
#include "agape/folcore/subst.hpp"

namespace agape::interp {

using folcore::Binding;
using folcore::DefTable;
using folcore::FKind;
using folcore::FormulaId;
using folcore::NamedDef;
using folcore::NameId;
using folcore::Signature;
using folcore::Store;
using folcore::SymbolDecl;
using folcore::SymbolKind;
using folcore::TermId;
using folcore::TermKind;

// How a target sort is coded by source tuples: the carrier sorts (one per
// tuple position), the domain formula over dom_params and the equivalence
// formula over eq_params (lhs tuple then rhs tuple).
struct SortInterp {
  std::vector<std::string> carrier;
  std::vector<Binding> dom_params;
  FormulaId dom{};
  std::vector<Binding> eq_params;
  FormulaId eq{};
  bool inherited = false;  // width-1 identity coding of a shared sort

  std::size_t width() const { return carrier.size(); }
};

// Source formula defining a target symbol on coded tuples.  Relations take
// one parameter block per argument; functions and constants are coded by
// their graphs, so a result block comes last.
struct SymbolInterp {
  std::vector<Binding> params;
  FormulaId formula{};
  bool inherited = false;
};

// Uniform interpretation of the target language in the source language:
// per-sort (dom, eq, width) plus a symbol map, with the formula translation
// and composition.  Every target sort needs an entry and every target
// symbol needs a map before translate will accept a formula using them.
class Interpretation {
 public:
  Interpretation(std::string name, Signature source, Signature target)
      : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)) {}

  const std::string& name() const { return name_; }
  const Signature& source() const { return source_; }
  const Signature& target() const { return target_; }

  // Remark 2.12(2): when the interpretation restricts to the identity on a
  // shared sublanguage, translation may keep that fragment untouched
  // (variable names included).  Off by default.
  bool shrink_inherited = false;

  void set_sort(const std::string& sort, SortInterp si) {
    target_.sort(sort);
    if (si.carrier.empty()) throw InterpError("sort '" + sort + "' needs a nonempty carrier");
    for (const std::string& c : si.carrier) source_.sort(c);
    if (si.dom_params.size() != si.width() || si.eq_params.size() != 2 * si.width())
      throw InterpError("parameter count mismatch for sort '" + sort + "'");
    sorts_[sort] = std::move(si);
  }

  void set_identity_sort(Store& st, const std::string& sort) {
    source_.sort(sort);
    SortInterp si;
    si.carrier = {sort};
    si.dom_params = {st.bind("x", sort)};
    si.dom = st.eq(st.var("x", sort), st.var("x", sort));
    si.eq_params = {st.bind("x", sort), st.bind("y", sort)};
    si.eq = st.eq(st.var("x", sort), st.var("y", sort));
    si.inherited = true;
    set_sort(sort, std::move(si));
  }

  void set_symbol(const std::string& name, SymbolInterp si) {
    target_.symbol(name);
    symbols_[name] = std::move(si);
  }

  // Identity map for a symbol shared with the source signature.
  void set_identity_symbol(Store& st, const std::string& name) {
    const SymbolDecl& d = source_.symbol(name);
    SymbolInterp si;
    si.inherited = true;
    std::vector<TermId> args;
    for (std::size_t i = 0; i < d.arity(); ++i) {
      std::string v = "x" + std::to_string(i + 1);
      si.params.push_back(st.bind(v, d.arg_sorts[i]));
      args.push_back(st.var(v, d.arg_sorts[i]));
    }
    if (d.kind == SymbolKind::Relation) {
      si.formula = st.atom(name, std::move(args));
    } else {
      si.params.push_back(st.bind("y", d.result_sort));
      TermId value = d.kind == SymbolKind::Constant ? st.cst(name) : st.fn(name, std::move(args));
      si.formula = st.eq(st.var("y", d.result_sort), value);
    }
    set_symbol(name, std::move(si));
  }

  static Interpretation identity(Store& st, const Signature& sig, std::string name = "identity") {
    Interpretation i(std::move(name), sig, sig);
    for (const auto& s : sig.sorts()) i.set_identity_sort(st, s.name);
    for (const auto& d : sig.symbols()) i.set_identity_symbol(st, d.name);
    return i;
  }

  const SortInterp& sort(const std::string& s) const {
    auto it = sorts_.find(s);
    if (it == sorts_.end())
      throw InterpError("interpretation " + name_ + " has no domain formula for sort '" + s + "'");
    return it->second;
  }
  const SymbolInterp& symbol(const std::string& s) const {
    auto it = symbols_.find(s);
    if (it == symbols_.end())
      throw InterpError("interpretation " + name_ + " does not map symbol '" + s + "'");
    return it->second;
  }
  const std::map<std::string, SortInterp>& sorts() const { return sorts_; }
  const std::map<std::string, SymbolInterp>& symbols() const { return symbols_; }

  void validate(const Store& st) const {
    for (const auto& s : target_.sorts()) sort(s.name);
    for (const auto& d : target_.symbols()) symbol(d.name);
    // arity bookkeeping: m-ary symbols map to formulas over the summed widths
    for (const auto& d : target_.symbols()) {
      const SymbolInterp& si = symbols_.at(d.name);
      std::size_t want = 0;
      for (const std::string& a : d.arg_sorts) want += sort(a).width();
      if (d.kind != SymbolKind::Relation) want += sort(d.result_sort).width();
      if (si.params.size() != want)
        throw InterpError("symbol map for '" + d.name + "' has " +
                          std::to_string(si.params.size()) + " parameters, expects " +
                          std::to_string(want));
    }
    (void)st;
  }

 private:
  std::string name_;
  Signature source_;
  Signature target_;
  std::map<std::string, SortInterp> sorts_;
  std::map<std::string, SymbolInterp> symbols_;
};

namespace detail {

inline bool is_trivial_guard(const Store& st, FormulaId f) {
  const folcore::FormulaNode& n = st.node(f);
  return n.kind == FKind::Eq && n.terms[0] == n.terms[1];
}

inline bool is_literal_equality(const Store& st, FormulaId f, const std::vector<Binding>& ps) {
  if (ps.size() != 2) return false;
  const folcore::FormulaNode& n = st.node(f);
  if (n.kind != FKind::Eq) return false;
  const folcore::TermNode& a = st.term(n.terms[0]);
  const folcore::TermNode& b = st.term(n.terms[1]);
  return a.kind == TermKind::Var && b.kind == TermKind::Var && a.name == ps[0].var &&
         b.name == ps[1].var;
}

// Does the symbol map formula literally repeat the symbol on its parameters
// (identity map)?
inline bool is_literal_symbol(const Store& st, const std::string& name, const SymbolInterp& si,
                              const SymbolDecl& d) {
  const folcore::FormulaNode& n = st.node(si.formula);
  auto params_match = [&](const std::vector<TermId>& ts, std::size_t count) {
    if (ts.size() != count) return false;
    for (std::size_t i = 0; i < count; ++i) {
      const folcore::TermNode& t = st.term(ts[i]);
      if (t.kind != TermKind::Var || t.name != si.params[i].var) return false;
    }
    return true;
  };
  if (d.kind == SymbolKind::Relation)
    return n.kind == FKind::Atom && st.name(n.name) == name && params_match(n.terms, d.arity());
  if (n.kind != FKind::Eq) return false;
  // y = f(x...) with y the last parameter
  const folcore::TermNode& lhs = st.term(n.terms[0]);
  if (lhs.kind != TermKind::Var || lhs.name != si.params.back().var) return false;
  const folcore::TermNode& rhs = st.term(n.terms[1]);
  if (d.kind == SymbolKind::Constant)
    return rhs.kind == TermKind::Const && st.name(rhs.name) == name;
  if (rhs.kind != TermKind::Fn || st.name(rhs.name) != name) return false;
  return params_match(rhs.args, d.arity());
}

}  // namespace detail

struct TranslationResult {
  FormulaId formula{};
  // free variable of the input -> its coding tuple
  std::vector<std::pair<std::string, std::vector<Binding>>> var_tuples;
};

// The recursive translation alpha: target formulas to source formulas.
// Target variables become carrier tuples relativized to dom, equality
// becomes eq, symbols go through the map, and compound arguments are
// flattened through existentially bound graph tuples.  Literal-identity
// pieces are peepholed so that the identity interpretation returns its
// input up to variable renaming.
class Translator {
 public:
  Translator(Store& st, const Interpretation& i, const DefTable* target_defs = nullptr,
             DefTable* translated_defs = nullptr)
      : st_(st), i_(i), target_defs_(target_defs), translated_defs_(translated_defs) {}

  TranslationResult translate(FormulaId f) {
    used_names_.clear();
    collect_names(f);
    TranslationResult res;
    std::map<NameId, std::vector<Binding>> tuples;
    res.formula = walk(f, tuples);
    for (const folcore::FV& v : folcore::free_vars(st_, f))
      res.var_tuples.push_back({st_.name(v.var), tuples.at(v.var)});
    return res;
  }

 private:
  // --- variable tuple management ---

  void collect_names(FormulaId f) {
    if (!seen_.insert(f.v).second) return;
    const folcore::FormulaNode& n = st_.node(f);
    for (const Binding& b : n.binds) used_names_.insert(st_.name(b.var));
    for (TermId t : n.terms) collect_term_names(t);
    for (FormulaId k : n.kids) collect_names(k);
  }
  void collect_term_names(TermId t) {
    const folcore::TermNode& n = st_.term(t);
    if (n.kind == TermKind::Var) used_names_.insert(st_.name(n.name));
    for (TermId a : n.args) collect_term_names(a);
  }

  std::string fresh(const std::string& base) {
    std::string cand = base;
    while (used_names_.count(cand)) cand += "'";
    used_names_.insert(cand);
    return cand;
  }

  const std::vector<Binding>& tuple_for(NameId var, const std::string& sort,
                                        std::map<NameId, std::vector<Binding>>& tuples) {
    auto it = tuples.find(var);
    if (it != tuples.end()) return it->second;
    const SortInterp& si = i_.sort(sort);
    std::vector<Binding> tup;
    if (si.inherited && (i_.shrink_inherited || si.width() == 1)) {
      // keep the original name when inherited; mangle only on demand
      std::string nm = i_.shrink_inherited ? st_.name(var) : fresh(st_.name(var) + "@1");
      tup.push_back(st_.bind(nm, si.carrier[0]));
    } else {
      for (std::size_t k = 0; k < si.width(); ++k)
        tup.push_back(st_.bind(fresh(st_.name(var) + "@" + std::to_string(k + 1)),
                               si.carrier[k]));
    }
    return tuples.emplace(var, std::move(tup)).first->second;
  }

  // --- instantiation of stored formulas at argument tuples ---

  FormulaId instantiate(FormulaId f, const std::vector<Binding>& params,
                        const std::vector<TermId>& args) {
    if (params.size() != args.size()) throw InterpError("internal: instantiation arity");
    std::map<NameId, TermId> m;
    for (std::size_t k = 0; k < params.size(); ++k) m[params[k].var] = args[k];
    return folcore::substitute(st_, f, m);
  }

  static std::vector<TermId> vars_of(Store& st, const std::vector<Binding>& bs) {
    std::vector<TermId> ts;
    ts.reserve(bs.size());
    for (const Binding& b : bs) ts.push_back(st.var(st.name(b.var), st.name(b.sort)));
    return ts;
  }

  // --- term translation ---

  // Is this term entirely within the inherited fragment (so it can be kept
  // verbatim as a source term)?
  bool term_inherited(TermId t) {
    const folcore::TermNode& n = st_.term(t);
    switch (n.kind) {
      case TermKind::Var: {
        const SortInterp& si = i_.sort(st_.name(n.var_sort));
        return si.inherited;
      }
      case TermKind::Const:
        return i_.symbol(st_.name(n.name)).inherited;
      case TermKind::Fn: {
        if (!i_.symbol(st_.name(n.name)).inherited) return false;
        for (TermId a : n.args)
          if (!term_inherited(a)) return false;
        return true;
      }
    }
    return false;
  }

  const std::string& term_sort(TermId t) {
    const folcore::TermNode& n = st_.term(t);
    if (n.kind == TermKind::Var) return st_.name(n.var_sort);
    return i_.target().symbol(st_.name(n.name)).result_sort;
  }

  struct Flattened {
    std::vector<TermId> tuple;          // source terms coding the value
    std::vector<Binding> aux;           // fresh existential variables
    std::vector<FormulaId> constraints; // graph atoms for compound terms
  };

  void flatten_term(TermId t, std::map<NameId, std::vector<Binding>>& tuples, Flattened& out) {
    const folcore::TermNode& n = st_.term(t);
    if (n.kind == TermKind::Var) {
      for (const Binding& b : tuple_for(n.name, st_.name(n.var_sort), tuples))
        out.tuple.push_back(st_.var(st_.name(b.var), st_.name(b.sort)));
      return;
    }
    if (term_inherited(t)) {
      out.tuple.push_back(rebuild_inherited(t, tuples));
      return;
    }
    // compound: introduce a fresh tuple for the value and constrain by graph
    const std::string& rsort = term_sort(t);
    const SortInterp& si = i_.sort(rsort);
    std::vector<TermId> value;
    for (std::size_t k = 0; k < si.width(); ++k) {
      Binding b = st_.bind(fresh("aux%" + std::to_string(out.aux.size()) + "%" +
                                 std::to_string(k + 1)),
                           si.carrier[k]);
      out.aux.push_back(b);
      value.push_back(st_.var(st_.name(b.var), st_.name(b.sort)));
    }
    std::vector<TermId> args;
    for (TermId a : n.args) flatten_term(a, tuples, out);  // wrong order fixed below
    // NOTE: flatten_term appends arg tuples to out.tuple; collect them
    // properly instead.
    (void)args;
    throw InterpError("internal: flatten_term misuse");
  }

  // Rebuild an inherited term over the source signature, renaming variables
  // to their (width-1) tuple names.
  TermId rebuild_inherited(TermId t, std::map<NameId, std::vector<Binding>>& tuples) {
    const folcore::TermNode& n = st_.term(t);
    switch (n.kind) {
      case TermKind::Var: {
        const Binding& b = tuple_for(n.name, st_.name(n.var_sort), tuples)[0];
        return st_.var(st_.name(b.var), st_.name(b.sort));
      }
      case TermKind::Const:
        return t;
      case TermKind::Fn: {
        std::vector<TermId> args;
        for (TermId a : n.args) args.push_back(rebuild_inherited(a, tuples));
        return st_.fn(st_.name(n.name), std::move(args));
      }
    }
    return t;
  }

  // Translate one term into its coding tuple, collecting auxiliary
  // existentials and graph constraints.
  std::vector<TermId> term_tuple(TermId t, std::map<NameId, std::vector<Binding>>& tuples,
                                 std::vector<Binding>& aux,
                                 std::vector<FormulaId>& constraints) {
    const folcore::TermNode& n = st_.term(t);
    if (n.kind == TermKind::Var) {
      std::vector<TermId> out;
      for (const Binding& b : tuple_for(n.name, st_.name(n.var_sort), tuples))
        out.push_back(st_.var(st_.name(b.var), st_.name(b.sort)));
      return out;
    }
    if (term_inherited(t)) return {rebuild_inherited(t, tuples)};

    const std::string& name = st_.name(n.name);
    const SymbolInterp& si = i_.symbol(name);
    const SymbolDecl& d = i_.target().symbol(name);
    std::vector<TermId> all_args;
    for (TermId a : n.args) {
      std::vector<TermId> at = term_tuple(a, tuples, aux, constraints);
      all_args.insert(all_args.end(), at.begin(), at.end());
    }
    const SortInterp& rsi = i_.sort(d.result_sort);
    std::vector<TermId> value;
    for (std::size_t k = 0; k < rsi.width(); ++k) {
      Binding b = st_.bind(fresh("t%" + std::to_string(aux_counter_++)), rsi.carrier[k]);
      aux.push_back(b);
      value.push_back(st_.var(st_.name(b.var), st_.name(b.sort)));
    }
    std::vector<TermId> inst = all_args;
    inst.insert(inst.end(), value.begin(), value.end());
    constraints.push_back(instantiate(si.formula, si.params, inst));
    // membership of the value tuple in the coded domain
    FormulaId dom = instantiate(rsi.dom, rsi.dom_params, value);
    if (!detail::is_trivial_guard(st_, dom)) constraints.push_back(dom);
    return value;
  }

  FormulaId close_existential(FormulaId base, std::vector<Binding> aux,
                              std::vector<FormulaId> constraints) {
    if (aux.empty() && constraints.empty()) return base;
    constraints.push_back(base);
    FormulaId body = st_.conj(std::move(constraints));
    if (aux.empty()) return body;
    return st_.exists(std::move(aux), body);
  }

  // --- formula translation ---

  FormulaId walk(FormulaId f, std::map<NameId, std::vector<Binding>>& tuples) {
    const folcore::FormulaNode& n = st_.node(f);
    switch (n.kind) {
      case FKind::Atom: {
        const std::string& name = st_.name(n.name);
        const SymbolInterp& si = i_.symbol(name);
        const SymbolDecl& d = i_.target().symbol(name);
        std::vector<Binding> aux;
        std::vector<FormulaId> cs;
        std::vector<TermId> args;
        bool all_inherited = si.inherited;
        for (TermId t : n.terms) all_inherited = all_inherited && term_inherited(t);
        if (all_inherited && detail::is_literal_symbol(st_, name, si, d)) {
          std::vector<TermId> ts;
          for (TermId t : n.terms) ts.push_back(rebuild_inherited(t, tuples));
          return st_.atom(name, std::move(ts));
        }
        for (TermId t : n.terms) {
          std::vector<TermId> tt = term_tuple(t, tuples, aux, cs);
          args.insert(args.end(), tt.begin(), tt.end());
        }
        FormulaId base = instantiate(si.formula, si.params, args);
        return close_existential(base, std::move(aux), std::move(cs));
      }
      case FKind::Eq: {
        const std::string& sort = term_sort(n.terms[0]);
        const SortInterp& si = i_.sort(sort);
        std::vector<Binding> aux;
        std::vector<FormulaId> cs;
        std::vector<TermId> a = term_tuple(n.terms[0], tuples, aux, cs);
        std::vector<TermId> b = term_tuple(n.terms[1], tuples, aux, cs);
        FormulaId base;
        if (detail::is_literal_equality(st_, si.eq, si.eq_params)) {
          std::vector<FormulaId> eqs;
          for (std::size_t k = 0; k < a.size(); ++k) eqs.push_back(st_.eq(a[k], b[k]));
          base = st_.conj(std::move(eqs));
        } else {
          std::vector<TermId> inst = a;
          inst.insert(inst.end(), b.begin(), b.end());
          base = instantiate(si.eq, si.eq_params, inst);
        }
        return close_existential(base, std::move(aux), std::move(cs));
      }
      case FKind::Not:
        return st_.lnot(walk(n.kids[0], tuples));
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaId> ks;
        for (FormulaId k : n.kids) ks.push_back(walk(k, tuples));
        return n.kind == FKind::And ? st_.conj(std::move(ks)) : st_.disj(std::move(ks));
      }
      case FKind::Imp:
        return st_.imp(walk(n.kids[0], tuples), walk(n.kids[1], tuples));
      case FKind::Forall:
      case FKind::Exists: {
        bool is_all = n.kind == FKind::Forall;
        std::vector<Binding> bs;
        std::vector<FormulaId> guards;
        // bindings shadow outer tuples of the same variable name
        std::vector<std::pair<NameId, bool>> saved;  // had previous entry?
        std::vector<std::pair<NameId, std::vector<Binding>>> previous;
        for (const Binding& b : n.binds) {
          auto it = tuples.find(b.var);
          if (it != tuples.end()) {
            previous.push_back({b.var, it->second});
            tuples.erase(it);
          }
          const std::vector<Binding>& tup = tuple_for(b.var, st_.name(b.sort), tuples);
          bs.insert(bs.end(), tup.begin(), tup.end());
          const SortInterp& si = i_.sort(st_.name(b.sort));
          FormulaId dom = instantiate(si.dom, si.dom_params, vars_of(st_, tup));
          if (!detail::is_trivial_guard(st_, dom)) guards.push_back(dom);
        }
        FormulaId body = walk(n.kids[0], tuples);
        for (const Binding& b : n.binds) tuples.erase(b.var);
        for (auto& [var, tup] : previous) tuples[var] = std::move(tup);
        if (!guards.empty()) {
          if (is_all) {
            body = st_.imp(st_.conj(std::move(guards)), body);
          } else {
            guards.push_back(body);
            body = st_.conj(std::move(guards));
          }
        }
        return st_.quant(n.kind, std::move(bs), body);
      }
      case FKind::Call: {
        if (!target_defs_ || !translated_defs_)
          throw InterpError("definition call in translation input; expand first or supply "
                            "definition tables");
        const std::string& dname = st_.name(n.name);
        const std::string tname = translate_def(dname);
        std::vector<Binding> aux;
        std::vector<FormulaId> cs;
        std::vector<TermId> args;
        for (TermId t : n.terms) {
          std::vector<TermId> tt = term_tuple(t, tuples, aux, cs);
          args.insert(args.end(), tt.begin(), tt.end());
        }
        return close_existential(st_.call(tname, std::move(args)), std::move(aux),
                                 std::move(cs));
      }
    }
    throw InterpError("internal: unhandled node");
  }

  // Translate a named definition once and register it under a level-tagged
  // name; calls then stay modular across the translation.
  std::string translate_def(const std::string& dname) {
    auto it = def_names_.find(dname);
    if (it != def_names_.end()) return it->second;
    const NamedDef& d = target_defs_->get(dname);
    std::string tname = dname + "~" + i_.name();
    if (!translated_defs_->has(tname)) {
      Translator sub(st_, i_, target_defs_, translated_defs_);
      sub.used_names_ = used_names_;  // keep fresh-name discipline stable
      sub.collect_names(d.body);
      std::map<NameId, std::vector<Binding>> tuples;
      std::vector<Binding> params;
      std::vector<FormulaId> guards;
      for (const Binding& p : d.params) {
        const std::vector<Binding>& tup = sub.tuple_for(p.var, st_.name(p.sort), tuples);
        params.insert(params.end(), tup.begin(), tup.end());
        const SortInterp& si = i_.sort(st_.name(p.sort));
        FormulaId dom = sub.instantiate(si.dom, si.dom_params, vars_of(st_, tup));
        if (!detail::is_trivial_guard(st_, dom)) guards.push_back(dom);
      }
      FormulaId body = sub.walk(d.body, tuples);
      if (!guards.empty()) {
        guards.push_back(body);
        body = st_.conj(std::move(guards));
      }
      NamedDef nd{tname, std::move(params), body, d.meta};
      nd.meta.intended_semantics =
          "translation of " + dname + " through " + i_.name() + "; " +
          d.meta.intended_semantics;
      translated_defs_->add(st_, std::move(nd));
    }
    def_names_.emplace(dname, tname);
    return tname;
  }

  Store& st_;
  const Interpretation& i_;
  const DefTable* target_defs_;
  DefTable* translated_defs_;
  std::set<std::string> used_names_;
  std::set<std::uint32_t> seen_;
  std::map<std::string, std::string> def_names_;
  int aux_counter_ = 0;
};

inline FormulaId translate(Store& st, const Interpretation& i, FormulaId f,
                           const DefTable* target_defs = nullptr,
                           DefTable* translated_defs = nullptr) {
  Translator t(st, i, target_defs, translated_defs);
  return t.translate(f).formula;
}

// Composition: J interprets L3 in L2, I interprets L2 in L1; the result
// interprets L3 in L1 with per-sort widths the sums over J's carriers of
// I's widths (the product p_I * p_J in the uniform-width case).
inline Interpretation compose(Store& st, const Interpretation& i, const Interpretation& j,
                              const std::string& name = "") {
  if (!j.source().extends(i.target()) || !i.target().extends(j.source()))
    throw InterpError("compose: signature mismatch between " + i.name() + " and " + j.name());
  Interpretation out(name.empty() ? i.name() + "*" + j.name() : name, i.source(), j.target());
  out.shrink_inherited = i.shrink_inherited && j.shrink_inherited;

  for (const auto& s : j.target().sorts()) {
    const SortInterp& sj = j.sort(s.name);
    Translator td(st, i);
    TranslationResult dom = td.translate(sj.dom);
    Translator te(st, i);
    TranslationResult eq = te.translate(sj.eq);

    SortInterp si;
    si.inherited = sj.inherited && i.sort(sj.carrier[0]).inherited && sj.width() == 1 &&
                   i.sort(sj.carrier[0]).width() == 1;
    // carrier and dom parameters come from the translated dom in the order
    // of sj's own parameters
    std::vector<FormulaId> dom_guards;
    for (const Binding& p : sj.dom_params) {
      // find translated tuple of this parameter
      bool found = false;
      for (auto& [var, tup] : dom.var_tuples) {
        if (var == st.name(p.var)) {
          for (const Binding& b : tup) {
            si.carrier.push_back(st.name(b.sort));
            si.dom_params.push_back(b);
          }
          found = true;
          break;
        }
      }
      if (!found) {
        // parameter unused in sj.dom; still needs carrier slots
        const SortInterp& inner = i.sort(st.name(p.sort));
        for (std::size_t k = 0; k < inner.width(); ++k) {
          Binding b = st.bind(st.name(p.var) + "@" + std::to_string(k + 1), inner.carrier[k]);
          si.carrier.push_back(inner.carrier[k]);
          si.dom_params.push_back(b);
        }
      }
      // conjoin the inner dom for each parameter tuple
      const SortInterp& inner = i.sort(st.name(p.sort));
      std::vector<TermId> args;
      for (std::size_t k = si.dom_params.size() - inner.width(); k < si.dom_params.size(); ++k)
        args.push_back(st.var(st.name(si.dom_params[k].var), st.name(si.dom_params[k].sort)));
      std::map<NameId, TermId> m;
      for (std::size_t k = 0; k < inner.dom_params.size(); ++k)
        m[inner.dom_params[k].var] = args[k];
      FormulaId g = folcore::substitute(st, inner.dom, m);
      if (!detail::is_trivial_guard(st, g)) dom_guards.push_back(g);
    }
    dom_guards.push_back(dom.formula);
    si.dom = st.conj(std::move(dom_guards));

    std::vector<FormulaId> eq_guards;
    for (const Binding& p : sj.eq_params) {
      bool found = false;
      for (auto& [var, tup] : eq.var_tuples) {
        if (var == st.name(p.var)) {
          for (const Binding& b : tup) si.eq_params.push_back(b);
          found = true;
          break;
        }
      }
      if (!found) {
        const SortInterp& inner = i.sort(st.name(p.sort));
        for (std::size_t k = 0; k < inner.width(); ++k)
          si.eq_params.push_back(
              st.bind(st.name(p.var) + "@" + std::to_string(k + 1), inner.carrier[k]));
      }
    }
    eq_guards.push_back(eq.formula);
    si.eq = st.conj(std::move(eq_guards));
    out.set_sort(s.name, std::move(si));
  }

  for (const auto& d : j.target().symbols()) {
    const SymbolInterp& sj = j.symbol(d.name);
    Translator tm(st, i);
    TranslationResult m = tm.translate(sj.formula);
    SymbolInterp si;
    si.inherited = sj.inherited;
    for (const Binding& p : sj.params) {
      bool found = false;
      for (auto& [var, tup] : m.var_tuples) {
        if (var == st.name(p.var)) {
          for (const Binding& b : tup) si.params.push_back(b);
          found = true;
          break;
        }
      }
      if (!found) {
        const SortInterp& inner = i.sort(st.name(p.sort));
        for (std::size_t k = 0; k < inner.width(); ++k)
          si.params.push_back(
              st.bind(st.name(p.var) + "@" + std::to_string(k + 1), inner.carrier[k]));
      }
    }
    si.formula = m.formula;
    out.set_symbol(d.name, std::move(si));
  }

  out.validate(st);
  return out;
}

}  // namespace agape::interp
