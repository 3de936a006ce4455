#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agape/folcore/signature.hpp"

namespace agape::lang {

using folcore::Signature;
using folcore::Sort;
using folcore::SymbolDecl;
using folcore::SymbolKind;

// Sort names used throughout: G, RO, N, PN, R, M, MDISC, CONT-k-l.
inline std::string cont_sort(unsigned k, unsigned l) {
  return "CONT-" + std::to_string(k) + "-" + std::to_string(l);
}

// The signature tower L0 <= L1 <= L2 <= L3.
//
// Level 0 is the language of groups.  Level 1 adds the Boolean algebra of
// regular open sets with the group action.  Level 2 adds second-order
// arithmetic, the ordered real field and the function sorts; the paper
// overloads names (1, appl, membership) across sorts, which a signature with
// unique symbol names cannot, so arithmetic symbols carry a sort suffix and
// the appl/membership families split into applp/applsd/applc-k-l and
// inp/ind/insd.  nr is the N -> R inclusion the paper reads as a subsort.
// Level 3 adds the point sort and the discrete-subset sort.
//
// The indexed family CONT-k-l is instantiated lazily: pass the index pairs
// the formulas at hand actually use.
inline Signature signature(int level,
                           const std::vector<std::pair<unsigned, unsigned>>& cont = {}) {
  if (level < 0 || level > 3) throw agape::SignatureError("invalid level " + std::to_string(level));
  std::vector<Sort> sorts;
  std::vector<SymbolDecl> syms;

  sorts.push_back({"G", {}});
  syms.push_back({"1", SymbolKind::Constant, {}, "G"});
  syms.push_back({"o", SymbolKind::Function, {"G", "G"}, "G"});
  syms.push_back({"inv", SymbolKind::Function, {"G"}, "G"});

  if (level >= 1) {
    sorts.push_back({"RO", {}});
    syms.push_back({"sub", SymbolKind::Relation, {"RO", "RO"}, ""});
    syms.push_back({"cap", SymbolKind::Function, {"RO", "RO"}, "RO"});
    syms.push_back({"perp", SymbolKind::Function, {"RO"}, "RO"});
    syms.push_back({"oplus", SymbolKind::Function, {"RO", "RO"}, "RO"});
    syms.push_back({"empty", SymbolKind::Constant, {}, "RO"});
    syms.push_back({"M", SymbolKind::Constant, {}, "RO"});
    syms.push_back({"suppe", SymbolKind::Function, {"G"}, "RO"});
    syms.push_back({"appl", SymbolKind::Function, {"G", "RO"}, "RO"});
  }

  if (level >= 2) {
    sorts.push_back({"N", {}});
    sorts.push_back({"PN", {}});
    sorts.push_back({"R", {}});
    syms.push_back({"0n", SymbolKind::Constant, {}, "N"});
    syms.push_back({"1n", SymbolKind::Constant, {}, "N"});
    syms.push_back({"+n", SymbolKind::Function, {"N", "N"}, "N"});
    syms.push_back({"*n", SymbolKind::Function, {"N", "N"}, "N"});
    syms.push_back({"<n", SymbolKind::Relation, {"N", "N"}, ""});
    syms.push_back({"in", SymbolKind::Relation, {"N", "PN"}, ""});
    syms.push_back({"subn", SymbolKind::Relation, {"PN", "PN"}, ""});
    syms.push_back({"0r", SymbolKind::Constant, {}, "R"});
    syms.push_back({"1r", SymbolKind::Constant, {}, "R"});
    syms.push_back({"+r", SymbolKind::Function, {"R", "R"}, "R"});
    syms.push_back({"*r", SymbolKind::Function, {"R", "R"}, "R"});
    syms.push_back({"<r", SymbolKind::Relation, {"R", "R"}, ""});
    syms.push_back({"nr", SymbolKind::Function, {"N"}, "R"});
    syms.push_back({"sqrt2", SymbolKind::Constant, {}, "R"});
    syms.push_back({"ang", SymbolKind::Function, {"R", "R"}, "R"});
    syms.push_back({"#pi0", SymbolKind::Function, {"RO"}, "N"});
    for (auto [k, l] : cont) {
      std::string cs = cont_sort(k, l);
      sorts.push_back({cs, std::make_pair(k, l)});
      syms.push_back({"norm-" + std::to_string(k) + "-" + std::to_string(l),
                      SymbolKind::Function, {cs}, "R"});
      std::vector<std::string> args{cs};
      for (unsigned i = 0; i < k + l; ++i) args.push_back("R");
      syms.push_back({"applc-" + std::to_string(k) + "-" + std::to_string(l),
                      SymbolKind::Relation, std::move(args), ""});
    }
  }

  if (level >= 3) {
    sorts.push_back({"M", {}});
    sorts.push_back({"MDISC", {}});
    syms.push_back({"inp", SymbolKind::Relation, {"M", "RO"}, ""});
    syms.push_back({"ind", SymbolKind::Relation, {"M", "MDISC"}, ""});
    syms.push_back({"insd", SymbolKind::Relation, {"MDISC", "RO"}, ""});
    syms.push_back({"subd", SymbolKind::Relation, {"MDISC", "MDISC"}, ""});
    syms.push_back({"#", SymbolKind::Function, {"MDISC"}, "N"});
    syms.push_back({"applp", SymbolKind::Function, {"G", "M"}, "M"});
    syms.push_back({"applsd", SymbolKind::Function, {"G", "MDISC"}, "MDISC"});
    syms.push_back({"del", SymbolKind::Function, {"MDISC", "M"}, "MDISC"});
  }

  return folcore::declare_signature("L" + std::to_string(level), std::move(sorts),
                                    std::move(syms));
}

// Modular-mode signature: the named predicates that oracle tests treat as
// primitives become relation symbols on top of the tower.
inline Signature modular_signature(int level,
                                   const std::vector<std::pair<unsigned, unsigned>>& cont = {}) {
  if (level < 1) return signature(level, cont);
  Signature base = signature(level, cont);
  std::vector<Sort> sorts = base.sorts();
  std::vector<SymbolDecl> syms = base.symbols();
  syms.push_back({"conn", SymbolKind::Relation, {"RO"}, ""});
  syms.push_back({"cc", SymbolKind::Relation, {"RO", "RO"}, ""});
  syms.push_back({"RCB", SymbolKind::Relation, {"RO", "RO"}, ""});
  return folcore::declare_signature("L" + std::to_string(level) + "TOY", std::move(sorts),
                                    std::move(syms));
}

// The placeholder Rubin kernel turns level-0 output into formulas over the
// group language plus these uninterpreted predicates.
inline Signature placeholder_kernel_signature() {
  Signature base = signature(0);
  std::vector<Sort> sorts = base.sorts();
  std::vector<SymbolDecl> syms = base.symbols();
  syms.push_back({"rubin-sub", SymbolKind::Relation, {"G", "G"}, ""});
  syms.push_back({"rubin-appl", SymbolKind::Relation, {"G", "G", "G"}, ""});
  syms.push_back({"rubin-cap", SymbolKind::Relation, {"G", "G", "G"}, ""});
  syms.push_back({"rubin-oplus", SymbolKind::Relation, {"G", "G", "G"}, ""});
  syms.push_back({"rubin-perp", SymbolKind::Relation, {"G", "G"}, ""});
  return folcore::declare_signature("L0K", std::move(sorts), std::move(syms));
}

}  // namespace agape::lang
