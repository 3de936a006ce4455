#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "agape/finmodel/structure.hpp"
#include "agape/folcore/defs.hpp"
#include "agape/folcore/freevars.hpp"
#include "agape/folcore/store.hpp"

namespace agape::finmodel {

using folcore::DefTable;
using folcore::FKind;
using folcore::FormulaId;
using folcore::NameId;
using folcore::Store;
using folcore::TermId;
using folcore::TermKind;

// variable name -> element name
using Assignment = std::map<std::string, std::string>;

enum class Strategy { Tree, Memo };

// Tarskian satisfaction by exhaustive quantifier expansion with
// short-circuiting.  Two strategies share this walker: the plain tree walk
// re-evaluates shared subformulas, the memoized one caches results per
// (node, values of its free variables).  Definition calls evaluate the
// definition body under the argument values, so modular formulas run
// without prior expansion.
class Evaluator {
 public:
  Evaluator(const Store& st, const FiniteStructure& s, Strategy strategy,
            const DefTable* defs = nullptr, int memo_max_vars = 3)
      : st_(st), s_(s), strategy_(strategy), defs_(defs), memo_max_vars_(memo_max_vars),
        fv_(st) {}

  bool eval(FormulaId f, const Assignment& a) {
    Env env;
    for (const folcore::FV& v : fv_.vars(f)) {
      auto it = a.find(st_.name(v.var));
      if (it == a.end())
        throw EvalError("assignment does not cover free variable '" + st_.name(v.var) + "'");
      env.push_back({v.var, s_.elem(st_.name(v.sort), it->second)});
    }
    return run(f, env);
  }

  // Satisfying tuples over the free variables not fixed by `params`,
  // enumerated in first-occurrence variable order and domain order.
  std::vector<std::vector<std::string>> definable_set(FormulaId f, const Assignment& params) {
    Env env;
    std::vector<std::pair<NameId, std::size_t>> open;  // var, sort index
    for (const folcore::FV& v : fv_.vars(f)) {
      auto it = params.find(st_.name(v.var));
      if (it != params.end())
        env.push_back({v.var, s_.elem(st_.name(v.sort), it->second)});
      else
        open.push_back({v.var, s_.sort_index(st_.name(v.sort))});
    }
    std::vector<std::vector<std::string>> out;
    std::vector<int> tuple(open.size(), 0);
    enumerate(f, env, open, 0, tuple, out);
    return out;
  }

  std::uint64_t evaluations() const { return evals_; }

 private:
  using Env = std::vector<std::pair<NameId, int>>;

  void enumerate(FormulaId f, Env& env, const std::vector<std::pair<NameId, std::size_t>>& open,
                 std::size_t i, std::vector<int>& tuple,
                 std::vector<std::vector<std::string>>& out) {
    if (i == open.size()) {
      if (run(f, env)) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < open.size(); ++j)
          row.push_back(s_.domain_by_index(open[j].second)[tuple[j]]);
        out.push_back(std::move(row));
      }
      return;
    }
    std::size_t n = s_.domain_size(open[i].second);
    for (std::size_t v = 0; v < n; ++v) {
      tuple[i] = static_cast<int>(v);
      env.push_back({open[i].first, static_cast<int>(v)});
      enumerate(f, env, open, i + 1, tuple, out);
      env.pop_back();
    }
  }

  int lookup(const Env& env, NameId var) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == var) return it->second;
    throw EvalError("free variable '" + st_.name(var) + "' is not covered");
  }

  int eval_term(TermId t, const Env& env) {
    const folcore::TermNode& n = st_.term(t);
    switch (n.kind) {
      case TermKind::Var:
        return lookup(env, n.name);
      case TermKind::Const:
        return s_.const_value(st_.name(n.name));
      case TermKind::Fn: {
        int args[8];
        if (n.args.size() > 8) throw EvalError("function arity beyond evaluator limit");
        for (std::size_t i = 0; i < n.args.size(); ++i) args[i] = eval_term(n.args[i], env);
        return s_.fun_value(st_.name(n.name), args);
      }
    }
    return -1;
  }

  bool run(FormulaId f, Env& env) {
    ++evals_;
    const folcore::FormulaNode& n = st_.node(f);

    bool memoable = false;
    std::vector<std::uint64_t> key;
    if (strategy_ == Strategy::Memo && n.kind != FKind::Atom && n.kind != FKind::Eq) {
      const auto& fvs = fv_.vars(f);
      if (static_cast<int>(fvs.size()) <= memo_max_vars_) {
        memoable = true;
        key.reserve(fvs.size() + 1);
        key.push_back(f.v);
        for (const folcore::FV& v : fvs)
          key.push_back(static_cast<std::uint64_t>(lookup(env, v.var)));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
      }
    }

    bool r = false;
    switch (n.kind) {
      case FKind::Atom: {
        int args[8];
        if (n.terms.size() > 8) throw EvalError("relation arity beyond evaluator limit");
        for (std::size_t i = 0; i < n.terms.size(); ++i) args[i] = eval_term(n.terms[i], env);
        r = s_.rel_holds(st_.name(n.name), args);
        break;
      }
      case FKind::Eq:
        r = eval_term(n.terms[0], env) == eval_term(n.terms[1], env);
        break;
      case FKind::Not:
        r = !run(n.kids[0], env);
        break;
      case FKind::And:
        r = true;
        for (FormulaId k : n.kids)
          if (!run(k, env)) {
            r = false;
            break;
          }
        break;
      case FKind::Or:
        r = false;
        for (FormulaId k : n.kids)
          if (run(k, env)) {
            r = true;
            break;
          }
        break;
      case FKind::Imp:
        r = !run(n.kids[0], env) || run(n.kids[1], env);
        break;
      case FKind::Forall:
      case FKind::Exists: {
        bool is_all = n.kind == FKind::Forall;
        r = quantify(n, env, 0, is_all);
        break;
      }
      case FKind::Call: {
        if (!defs_) throw EvalError("definition call without a definition table");
        const folcore::NamedDef& d = defs_->get(st_.name(n.name));
        if (d.params.size() != n.terms.size())
          throw EvalError("definition '" + d.name + "' called with wrong arity");
        if (++call_depth_ > 4096) throw EvalError("definition recursion too deep");
        Env inner;
        inner.reserve(d.params.size());
        for (std::size_t i = 0; i < d.params.size(); ++i)
          inner.push_back({d.params[i].var, eval_term(n.terms[i], env)});
        r = run(d.body, inner);
        --call_depth_;
        break;
      }
    }

    if (memoable) memo_.emplace(std::move(key), r);
    return r;
  }

  bool quantify(const folcore::FormulaNode& n, Env& env, std::size_t b, bool is_all) {
    if (b == n.binds.size()) return run(n.kids[0], env);
    std::size_t si = s_.sort_index(st_.name(n.binds[b].sort));
    std::size_t dn = s_.domain_size(si);
    env.push_back({n.binds[b].var, 0});
    for (std::size_t v = 0; v < dn; ++v) {
      env.back().second = static_cast<int>(v);
      bool sub = quantify(n, env, b + 1, is_all);
      if (sub != is_all) {
        env.pop_back();
        return sub;
      }
    }
    env.pop_back();
    return is_all;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::size_t h = k.size();
      for (std::uint64_t v : k) hash_mix(h, static_cast<std::size_t>(v));
      return h;
    }
  };

  const Store& st_;
  const FiniteStructure& s_;
  Strategy strategy_;
  const DefTable* defs_;
  int memo_max_vars_;
  folcore::FreeVarCache fv_;
  std::unordered_map<std::vector<std::uint64_t>, bool, KeyHash> memo_;
  std::uint64_t evals_ = 0;
  int call_depth_ = 0;
};

inline bool eval(const Store& st, const FiniteStructure& s, FormulaId f, const Assignment& a,
                 Strategy strategy = Strategy::Tree, const DefTable* defs = nullptr) {
  Evaluator e(st, s, strategy, defs);
  return e.eval(f, a);
}

inline std::vector<std::vector<std::string>> definable_set(const Store& st,
                                                           const FiniteStructure& s, FormulaId f,
                                                           const Assignment& params = {},
                                                           const DefTable* defs = nullptr) {
  Evaluator e(st, s, Strategy::Memo, defs);
  return e.definable_set(f, params);
}

// Runs both strategies and insists they agree; the acceptance suite routes
// its evaluations through this and reports the counters.
struct DualStats {
  std::uint64_t checks = 0;
  std::uint64_t disagreements = 0;
};

class DualEvaluator {
 public:
  DualEvaluator(const Store& st, const FiniteStructure& s, const DefTable* defs = nullptr)
      : tree_(st, s, Strategy::Tree, defs), memo_(st, s, Strategy::Memo, defs) {}

  bool eval(FormulaId f, const Assignment& a, DualStats& stats) {
    bool t = tree_.eval(f, a);
    bool m = memo_.eval(f, a);
    ++stats.checks;
    if (t != m) ++stats.disagreements;
    return m;
  }

 private:
  Evaluator tree_;
  Evaluator memo_;
};

}  // namespace agape::finmodel
