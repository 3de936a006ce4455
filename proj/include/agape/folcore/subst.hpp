#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agape/folcore/freevars.hpp"
#include "agape/folcore/signature.hpp"
#include "agape/folcore/store.hpp"

namespace agape::folcore {

namespace detail {

struct SubstKeyHash {
  std::size_t operator()(const std::pair<std::uint32_t, std::size_t>& k) const {
    std::size_t h = k.first;
    hash_mix(h, k.second);
    return h;
  }
};

}  // namespace detail

// Capture-avoiding substitution of terms for free variables.  Bound
// variables are renamed (name~1, name~2, ...) when they would capture a free
// variable of a replacement term.  Substituting with an empty effective map
// returns the identical handle.
class Substitution {
 public:
  Substitution(Store& st, std::map<NameId, TermId> map) : st_(st), fv_(st), map_(std::move(map)) {}

  static FormulaId apply(Store& st, FormulaId f, const std::map<NameId, TermId>& m) {
    Substitution s(st, m);
    return s.formula(f, s.map_);
  }

  FormulaId formula(FormulaId f, const std::map<NameId, TermId>& live) {
    // Restrict to variables actually free in f.
    std::map<NameId, TermId> eff;
    for (const FV& v : fv_.vars(f)) {
      auto it = live.find(v.var);
      if (it != live.end()) eff.emplace(it->first, it->second);
    }
    if (eff.empty()) return f;

    std::size_t mh = map_hash(eff);
    auto key = std::make_pair(f.v, mh);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;

    const FormulaNode& n = st_.node(f);
    FormulaId out = f;
    switch (n.kind) {
      case FKind::Atom:
      case FKind::Call: {
        std::vector<TermId> ts;
        ts.reserve(n.terms.size());
        for (TermId t : n.terms) ts.push_back(term(t, eff));
        out = n.kind == FKind::Atom ? st_.atom(st_.name(n.name), std::move(ts))
                                    : st_.call(st_.name(n.name), std::move(ts));
        break;
      }
      case FKind::Eq:
        out = st_.eq(term(n.terms[0], eff), term(n.terms[1], eff));
        break;
      case FKind::Not:
        out = st_.lnot(formula(n.kids[0], eff));
        break;
      case FKind::And:
      case FKind::Or: {
        std::vector<FormulaId> ks;
        ks.reserve(n.kids.size());
        for (FormulaId k : n.kids) ks.push_back(formula(k, eff));
        out = n.kind == FKind::And ? st_.conj(std::move(ks)) : st_.disj(std::move(ks));
        break;
      }
      case FKind::Imp:
        out = st_.imp(formula(n.kids[0], eff), formula(n.kids[1], eff));
        break;
      case FKind::Forall:
      case FKind::Exists: {
        std::map<NameId, TermId> inner = eff;
        for (const Binding& b : n.binds) inner.erase(b.var);
        // Names that must not be captured: free vars of active replacements.
        std::vector<NameId> hot;
        for (const auto& [var, t] : inner) {
          (void)var;
          for (const FV& v : fv_.term_vars(t)) hot.push_back(v.var);
        }
        std::vector<Binding> bs = n.binds;
        FormulaId body = n.kids[0];
        for (Binding& b : bs) {
          bool clash = false;
          for (NameId h : hot)
            if (h == b.var) {
              clash = true;
              break;
            }
          if (!clash) continue;
          NameId fresh = fresh_name(b.var, hot, body, bs);
          inner[b.var] = st_.var(st_.name(fresh), st_.name(b.sort));
          b.var = fresh;
        }
        out = st_.quant(n.kind, std::move(bs), formula(body, inner));
        break;
      }
    }
    cache_.emplace(key, out);
    return out;
  }

  TermId term(TermId t, const std::map<NameId, TermId>& live) {
    const TermNode& n = st_.term(t);
    switch (n.kind) {
      case TermKind::Var: {
        auto it = live.find(n.name);
        return it == live.end() ? t : it->second;
      }
      case TermKind::Const:
        return t;
      case TermKind::Fn: {
        std::vector<TermId> args;
        args.reserve(n.args.size());
        bool changed = false;
        for (TermId a : n.args) {
          TermId a2 = term(a, live);
          changed |= (a2 != a);
          args.push_back(a2);
        }
        return changed ? st_.fn(st_.name(n.name), std::move(args)) : t;
      }
    }
    return t;
  }

 private:
  NameId fresh_name(NameId base, const std::vector<NameId>& hot, FormulaId body,
                    const std::vector<Binding>& siblings) {
    const std::string& b = st_.name(base);
    for (int k = 1;; ++k) {
      std::string cand = b + "~" + std::to_string(k);
      NameId id = st_.intern(cand);
      bool bad = false;
      for (NameId h : hot)
        if (h == id) bad = true;
      for (const Binding& s : siblings)
        if (s.var == id) bad = true;
      if (!bad)
        for (const FV& v : fv_.vars(body))
          if (v.var == id) bad = true;
      if (!bad) return id;
    }
  }

  static std::size_t map_hash(const std::map<NameId, TermId>& m) {
    std::size_t h = m.size();
    for (const auto& [k, v] : m) {
      hash_mix(h, k);
      hash_mix(h, v.v);
    }
    return h;
  }

  Store& st_;
  FreeVarCache fv_;
  std::map<NameId, TermId> map_;
  std::unordered_map<std::pair<std::uint32_t, std::size_t>, FormulaId, detail::SubstKeyHash>
      cache_;
};

// Replacement terms must sort-match their variables; the check needs a
// signature to resolve function result sorts, so it lives in sortcheck.hpp
// (sorted_substitute).  This entry point is the raw syntactic operation.
inline FormulaId substitute(Store& st, FormulaId f,
                            const std::map<NameId, TermId>& m) {
  return Substitution::apply(st, f, m);
}

inline FormulaId substitute(Store& st, FormulaId f,
                            const std::vector<std::pair<std::string, TermId>>& m) {
  std::map<NameId, TermId> mm;
  for (const auto& [name, t] : m) mm[st.intern(name)] = t;
  return Substitution::apply(st, f, mm);
}

}  // namespace agape::folcore
