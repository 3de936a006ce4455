#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "agape/folcore/sexpr.hpp"
#include "agape/folcore/signature.hpp"

namespace agape::finmodel {

using folcore::Signature;
using folcore::SymbolDecl;
using folcore::SymbolKind;

// Explicit finite multi-sorted model: element lists per sort, dense relation
// and function tables, constants.  Immutable after validate().
class FiniteStructure {
 public:
  explicit FiniteStructure(Signature sig) : sig_(std::move(sig)) {
    domains_.resize(sig_.sorts().size());
    elem_ix_.resize(sig_.sorts().size());
  }

  const Signature& sig() const { return sig_; }

  void add_elements(const std::string& sort, const std::vector<std::string>& names) {
    std::size_t si = sort_index(sort);
    for (const std::string& n : names) {
      if (elem_ix_[si].count(n))
        throw ModelError("duplicate element '" + n + "' in sort " + sort);
      elem_ix_[si][n] = static_cast<int>(domains_[si].size());
      domains_[si].push_back(n);
    }
  }

  std::size_t sort_index(const std::string& sort) const {
    for (std::size_t i = 0; i < sig_.sorts().size(); ++i)
      if (sig_.sorts()[i].name == sort) return i;
    throw ModelError("unknown sort '" + sort + "'");
  }

  int elem(const std::string& sort, const std::string& name) const {
    std::size_t si = sort_index(sort);
    auto it = elem_ix_[si].find(name);
    if (it == elem_ix_[si].end())
      throw ModelError("unknown element '" + name + "' of sort " + sort);
    return it->second;
  }

  const std::vector<std::string>& domain(const std::string& sort) const {
    return domains_[sort_index(sort)];
  }
  const std::vector<std::string>& domain_by_index(std::size_t si) const { return domains_[si]; }
  std::size_t domain_size(std::size_t si) const { return domains_[si].size(); }

  // --- tables ---

  struct Table {
    std::vector<std::size_t> arg_sorts;  // sort indices
    std::vector<std::size_t> strides;
    std::vector<char> rel;     // relations: 0/1 per packed tuple
    std::vector<int> fun;      // functions: value per packed tuple (-1 unset)
    bool is_relation = true;

    std::size_t pack(const int* args) const {
      std::size_t ix = 0;
      for (std::size_t i = 0; i < strides.size(); ++i)
        ix += strides[i] * static_cast<std::size_t>(args[i]);
      return ix;
    }
  };

  void set_relation(const std::string& name, const std::vector<std::vector<std::string>>& tuples) {
    Table& t = table_for(name, SymbolKind::Relation);
    for (const auto& tup : tuples) add_rel_tuple(name, t, tup);
  }

  void add_rel_tuple(const std::string& name, Table& t, const std::vector<std::string>& tup) {
    const SymbolDecl& d = sig_.symbol(name);
    if (tup.size() != d.arity())
      throw ModelError("tuple arity mismatch for relation " + name);
    std::vector<int> ix(tup.size());
    for (std::size_t i = 0; i < tup.size(); ++i) ix[i] = elem(d.arg_sorts[i], tup[i]);
    t.rel[t.pack(ix.data())] = 1;
  }

  void map_function(const std::string& name, const std::vector<std::string>& args,
                    const std::string& value) {
    Table& t = table_for(name, SymbolKind::Function);
    const SymbolDecl& d = sig_.symbol(name);
    if (args.size() != d.arity())
      throw ModelError("argument arity mismatch for function " + name);
    std::vector<int> ix(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) ix[i] = elem(d.arg_sorts[i], args[i]);
    t.fun[t.pack(ix.data())] = elem(d.result_sort, value);
  }

  void set_constant(const std::string& name, const std::string& value) {
    const SymbolDecl& d = sig_.symbol(name);
    if (d.kind != SymbolKind::Constant) throw ModelError("'" + name + "' is not a constant");
    constants_[name] = elem(d.result_sort, value);
  }

  // All declared function tables must be total; relations default to empty,
  // constants must be assigned.
  void validate() const {
    for (const SymbolDecl& d : sig_.symbols()) {
      if (d.kind == SymbolKind::Constant) {
        if (!constants_.count(d.name))
          throw ModelError("constant '" + d.name + "' has no value");
      } else if (d.kind == SymbolKind::Function) {
        auto it = tables_.find(d.name);
        if (it == tables_.end())
          throw ModelError("function '" + d.name + "' has no table");
        for (int v : it->second.fun)
          if (v < 0) throw ModelError("function '" + d.name + "' table is partial");
      }
    }
  }

  bool rel_holds(const std::string& name, const int* args) const {
    auto it = tables_.find(name);
    if (it == tables_.end()) return false;  // empty relation
    return it->second.rel[it->second.pack(args)] != 0;
  }
  int fun_value(const std::string& name, const int* args) const {
    const Table& t = tables_.at(name);
    return t.fun[t.pack(args)];
  }
  int const_value(const std::string& name) const { return constants_.at(name); }

  const Table* find_table(const std::string& name) const {
    auto it = tables_.find(name);
    return it == tables_.end() ? nullptr : &it->second;
  }

  Table& table_for(const std::string& name, SymbolKind want) {
    const SymbolDecl& d = sig_.symbol(name);
    if (d.kind != want) throw ModelError("symbol '" + name + "' has the wrong kind");
    auto it = tables_.find(name);
    if (it != tables_.end()) return it->second;
    Table t;
    t.is_relation = d.kind == SymbolKind::Relation;
    std::size_t total = 1;
    for (const std::string& s : d.arg_sorts) {
      std::size_t si = sort_index(s);
      t.arg_sorts.push_back(si);
      total *= std::max<std::size_t>(domains_[si].size(), 1);
    }
    t.strides.resize(t.arg_sorts.size());
    std::size_t stride = 1;
    for (std::size_t i = t.arg_sorts.size(); i-- > 0;) {
      t.strides[i] = stride;
      stride *= std::max<std::size_t>(domains_[t.arg_sorts[i]].size(), 1);
    }
    if (t.is_relation)
      t.rel.assign(total, 0);
    else
      t.fun.assign(total, -1);
    return tables_.emplace(name, std::move(t)).first->second;
  }

 private:
  Signature sig_;
  std::vector<std::vector<std::string>> domains_;
  std::vector<std::map<std::string, int>> elem_ix_;
  std::map<std::string, Table> tables_;
  std::map<std::string, int> constants_;
};

// Model file format:
//   (structure NAME (sig NAME)
//     (domain SORT elem ...)*
//     (relation NAME (tuple elem ...)*)*
//     (function NAME (maps (elem ...) elem)*)*
//     (constant NAME elem)*)
inline FiniteStructure load_structure(const std::string& text,
                                      const std::map<std::string, Signature>& registry) {
  folcore::SExpr e = folcore::SExprReader::read_one(text);
  if (!e.headed("structure") || e.size() < 3) e.fail("(structure NAME (sig NAME) ...) expected");
  if (!e[2].headed("sig") || e[2].size() != 2) e[2].fail("(sig NAME) expected");
  auto sit = registry.find(e[2][1].atom("signature name"));
  if (sit == registry.end()) e[2].fail("unknown signature '" + e[2][1].text + "'");
  FiniteStructure s(sit->second);

  // domains first, tables after
  for (std::size_t i = 3; i < e.size(); ++i) {
    const folcore::SExpr& c = e[i];
    if (c.headed("domain")) {
      if (c.size() < 2) c.fail("(domain SORT elem ...) expected");
      std::vector<std::string> names;
      for (std::size_t j = 2; j < c.size(); ++j) names.push_back(c[j].atom("element"));
      s.add_elements(c[1].atom("sort"), names);
    }
  }
  for (std::size_t i = 3; i < e.size(); ++i) {
    const folcore::SExpr& c = e[i];
    if (c.headed("domain")) continue;
    if (c.headed("relation")) {
      if (c.size() < 2) c.fail("(relation NAME (tuple ...)*) expected");
      auto& t = s.table_for(c[1].atom("relation name"), SymbolKind::Relation);
      for (std::size_t j = 2; j < c.size(); ++j) {
        if (!c[j].headed("tuple")) c[j].fail("(tuple elem ...) expected");
        std::vector<std::string> tup;
        for (std::size_t k = 1; k < c[j].size(); ++k) tup.push_back(c[j][k].atom("element"));
        s.add_rel_tuple(c[1].text, t, tup);
      }
    } else if (c.headed("function")) {
      if (c.size() < 2) c.fail("(function NAME (maps (args) value)*) expected");
      for (std::size_t j = 2; j < c.size(); ++j) {
        if (!c[j].headed("maps") || c[j].size() != 3 || !c[j][1].is_list())
          c[j].fail("(maps (elem ...) elem) expected");
        std::vector<std::string> args;
        for (const auto& a : c[j][1].items) args.push_back(a.text);
        s.map_function(c[1].text, args, c[j][2].atom("element"));
      }
    } else if (c.headed("constant")) {
      if (c.size() != 3) c.fail("(constant NAME elem) expected");
      s.set_constant(c[1].atom("constant name"), c[2].atom("element"));
    } else {
      c.fail("unknown structure clause");
    }
  }
  s.validate();
  return s;
}

}  // namespace agape::finmodel
