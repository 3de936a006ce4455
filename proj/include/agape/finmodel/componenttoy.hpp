#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "agape/finmodel/structure.hpp"
#include "agape/lang/tower.hpp"

namespace agape::finmodel {

// ComponentToy(m): the Boolean algebra of all subsets of {0..m-1} with the
// full symmetric group acting.  conn marks the singletons, cc is atom-of,
// RCB is inclusion; formulas built in modular mode evaluate against these
// primitives.  The manifold semantics itself is uncomputable; this is the
// computable fragment with the same Boolean-algebra-plus-action shape.
//
// Elements: RO subsets are named s<bitmask>; permutations are named
// p<image digits> (identity on m=3 is p012).
class ComponentToy {
 public:
  explicit ComponentToy(int m) : m_(m), structure_(lang::modular_signature(1)) {
    if (m < 1 || m > 6) throw ModelError("ComponentToy expects 1 <= m <= 6");
    build();
  }

  const FiniteStructure& structure() const { return structure_; }
  int m() const { return m_; }

  int subsets() const { return 1 << m_; }
  std::string set_name(unsigned mask) const { return "s" + std::to_string(mask); }
  static int popcount(unsigned mask) { return __builtin_popcount(mask); }

  const std::vector<std::vector<int>>& perms() const { return perms_; }
  std::string perm_name(const std::vector<int>& p) const {
    std::string s = "p";
    for (int v : p) s += static_cast<char>('0' + v);
    return s;
  }

 private:
  void build() {
    std::vector<std::string> sets;
    for (int mask = 0; mask < subsets(); ++mask) sets.push_back(set_name(mask));
    structure_.add_elements("RO", sets);

    std::vector<int> p(m_);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::string> gnames;
    do {
      perms_.push_back(p);
      gnames.push_back(perm_name(p));
    } while (std::next_permutation(p.begin(), p.end()));
    structure_.add_elements("G", gnames);

    structure_.set_constant("empty", set_name(0));
    structure_.set_constant("M", set_name(subsets() - 1));
    std::iota(p.begin(), p.end(), 0);
    structure_.set_constant("1", perm_name(p));

    for (int a = 0; a < subsets(); ++a) {
      std::string an = set_name(a);
      structure_.map_function("perp", {an}, set_name(~a & (subsets() - 1)));
      for (int b = 0; b < subsets(); ++b) {
        structure_.map_function("cap", {an, set_name(b)}, set_name(a & b));
        structure_.map_function("oplus", {an, set_name(b)}, set_name(a | b));
      }
    }

    auto& sub = structure_.table_for("sub", SymbolKind::Relation);
    auto& conn = structure_.table_for("conn", SymbolKind::Relation);
    auto& cc = structure_.table_for("cc", SymbolKind::Relation);
    auto& rcb = structure_.table_for("RCB", SymbolKind::Relation);
    for (int a = 0; a < subsets(); ++a) {
      if (popcount(a) == 1) structure_.add_rel_tuple("conn", conn, {set_name(a)});
      for (int b = 0; b < subsets(); ++b) {
        if ((a & b) == a) {
          structure_.add_rel_tuple("sub", sub, {set_name(a), set_name(b)});
          structure_.add_rel_tuple("RCB", rcb, {set_name(a), set_name(b)});
          if (popcount(a) == 1) structure_.add_rel_tuple("cc", cc, {set_name(a), set_name(b)});
        }
      }
    }

    for (const auto& g : perms_) {
      std::string gn = perm_name(g);
      // suppe: moved points
      unsigned moved = 0;
      for (int i = 0; i < m_; ++i)
        if (g[i] != i) moved |= 1u << i;
      structure_.map_function("suppe", {gn}, set_name(moved));
      // inverse and composition (o(g,h) applies h first)
      std::vector<int> gi(m_);
      for (int i = 0; i < m_; ++i) gi[g[i]] = i;
      structure_.map_function("inv", {gn}, perm_name(gi));
      for (const auto& h : perms_) {
        std::vector<int> gh(m_);
        for (int i = 0; i < m_; ++i) gh[i] = g[h[i]];
        structure_.map_function("o", {gn, perm_name(h)}, perm_name(gh));
      }
      // appl: image of a subset
      for (int a = 0; a < subsets(); ++a) {
        unsigned img = 0;
        for (int i = 0; i < m_; ++i)
          if (a & (1 << i)) img |= 1u << g[i];
        structure_.map_function("appl", {gn, set_name(a)}, set_name(img));
      }
    }
    structure_.validate();
  }

  int m_;
  FiniteStructure structure_;
  std::vector<std::vector<int>> perms_;
};

// Pure group structures over L0 for the dimension-one sentences.

inline FiniteStructure cyclic_group(int n) {
  FiniteStructure s(lang::signature(0));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  s.add_elements("G", names);
  s.set_constant("1", "c0");
  for (int i = 0; i < n; ++i) {
    s.map_function("inv", {names[i]}, names[(n - i) % n]);
    for (int j = 0; j < n; ++j) s.map_function("o", {names[i], names[j]}, names[(i + j) % n]);
  }
  s.validate();
  return s;
}

inline FiniteStructure symmetric_group(int m) {
  FiniteStructure s(lang::signature(0));
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::string> names;
  auto name_of = [](const std::vector<int>& q) {
    std::string n = "p";
    for (int v : q) n += static_cast<char>('0' + v);
    return n;
  };
  do {
    perms.push_back(p);
    names.push_back(name_of(p));
  } while (std::next_permutation(p.begin(), p.end()));
  s.add_elements("G", names);
  std::iota(p.begin(), p.end(), 0);
  s.set_constant("1", name_of(p));
  for (const auto& g : perms) {
    std::vector<int> gi(m);
    for (int i = 0; i < m; ++i) gi[g[i]] = i;
    s.map_function("inv", {name_of(g)}, name_of(gi));
    for (const auto& h : perms) {
      std::vector<int> gh(m);
      for (int i = 0; i < m; ++i) gh[i] = g[h[i]];
      s.map_function("o", {name_of(g), name_of(h)}, name_of(gh));
    }
  }
  s.validate();
  return s;
}

}  // namespace agape::finmodel
