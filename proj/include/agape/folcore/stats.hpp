#pragma once

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "agape/folcore/store.hpp"
#include "agape/support.hpp"

namespace agape::folcore {

struct FormulaStats {
  std::size_t dag_nodes = 0;  // distinct formula nodes reachable
  BigInt tree_size = 0;       // formula nodes of the fully expanded tree
  unsigned quantifier_depth = 0;
  // Number of quantifier blocks along the deepest alternating path, with
  // consecutive same-kind quantifiers collapsed; negation polarity is
  // ignored.  A forall-exists-forall prefix counts 3.
  unsigned alternation_depth = 0;
};

class StatsWalker {
 public:
  explicit StatsWalker(const Store& st) : st_(st) {}

  FormulaStats run(FormulaId f) {
    FormulaStats s;
    count_dag(f, s);
    s.tree_size = tree_size(f);
    s.quantifier_depth = qdepth(f);
    s.alternation_depth = alt(f, 0);
    return s;
  }

 private:
  void count_dag(FormulaId f, FormulaStats& s) {
    if (!seen_.insert(f.v).second) return;
    ++s.dag_nodes;
    for (FormulaId k : st_.node(f).kids) count_dag(k, s);
  }

  BigInt tree_size(FormulaId f) {
    auto it = tsize_.find(f);
    if (it != tsize_.end()) return it->second;
    BigInt n = 1;
    for (FormulaId k : st_.node(f).kids) n += tree_size(k);
    tsize_.emplace(f, n);
    return n;
  }

  unsigned qdepth(FormulaId f) {
    auto it = qd_.find(f);
    if (it != qd_.end()) return it->second;
    const FormulaNode& n = st_.node(f);
    unsigned d = 0;
    for (FormulaId k : n.kids) d = std::max(d, qdepth(k));
    if (n.kind == FKind::Forall || n.kind == FKind::Exists) d += 1;
    qd_.emplace(f, d);
    return d;
  }

  // last: 0 none, 1 forall, 2 exists
  unsigned alt(FormulaId f, int last) {
    auto key = std::make_pair(f.v, last);
    auto it = alt_.find(key);
    if (it != alt_.end()) return it->second;
    const FormulaNode& n = st_.node(f);
    unsigned r = 0;
    if (n.kind == FKind::Forall || n.kind == FKind::Exists) {
      int mine = n.kind == FKind::Forall ? 1 : 2;
      r = alt(n.kids[0], mine) + (mine == last ? 0u : 1u);
    } else {
      for (FormulaId k : n.kids) r = std::max(r, alt(k, last));
    }
    alt_.emplace(key, r);
    return r;
  }

  struct PairHash {
    std::size_t operator()(const std::pair<std::uint32_t, int>& p) const {
      std::size_t h = p.first;
      hash_mix(h, static_cast<std::size_t>(p.second));
      return h;
    }
  };

  const Store& st_;
  std::unordered_set<std::uint32_t> seen_;
  std::unordered_map<FormulaId, BigInt> tsize_;
  std::unordered_map<FormulaId, unsigned> qd_;
  std::unordered_map<std::pair<std::uint32_t, int>, unsigned, PairHash> alt_;
};

inline FormulaStats stats(const Store& st, FormulaId f) {
  StatsWalker w(st);
  return w.run(f);
}

}  // namespace agape::folcore
