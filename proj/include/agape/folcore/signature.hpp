#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agape/support.hpp"

namespace agape::folcore {

struct Sort {
  std::string name;
  // Indexed function-sort family, e.g. CONT-2-5 carries (2,5).
  std::optional<std::pair<unsigned, unsigned>> index;

  bool operator==(const Sort& o) const { return name == o.name; }
  bool operator!=(const Sort& o) const { return name != o.name; }
};

enum class SymbolKind { Relation, Function, Constant };

struct SymbolDecl {
  std::string name;
  SymbolKind kind = SymbolKind::Relation;
  std::vector<std::string> arg_sorts;   // empty for constants
  std::string result_sort;              // functions and constants only

  std::size_t arity() const { return arg_sorts.size(); }
};

// Immutable set of sorts and typed symbols.  Declaration order is kept so
// that everything downstream (printing, evaluation, quotients) is
// deterministic.
class Signature {
 public:
  Signature() = default;

  const std::string& name() const { return name_; }
  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<SymbolDecl>& symbols() const { return symbols_; }

  bool has_sort(const std::string& s) const { return sort_ix_.count(s) != 0; }
  const Sort& sort(const std::string& s) const {
    auto it = sort_ix_.find(s);
    if (it == sort_ix_.end()) throw SignatureError("unknown sort '" + s + "' in signature " + name_);
    return sorts_[it->second];
  }

  bool has_symbol(const std::string& s) const { return sym_ix_.count(s) != 0; }
  const SymbolDecl& symbol(const std::string& s) const {
    auto it = sym_ix_.find(s);
    if (it == sym_ix_.end())
      throw SignatureError("symbol '" + s + "' is not in signature " + name_);
    return symbols_[it->second];
  }
  const SymbolDecl* find_symbol(const std::string& s) const {
    auto it = sym_ix_.find(s);
    return it == sym_ix_.end() ? nullptr : &symbols_[it->second];
  }

  // Subset check on sorts and symbols; witnesses the tower inclusions.
  bool extends(const Signature& smaller) const {
    for (const Sort& s : smaller.sorts_)
      if (!has_sort(s.name)) return false;
    for (const SymbolDecl& d : smaller.symbols_) {
      const SymbolDecl* mine = find_symbol(d.name);
      if (!mine || mine->kind != d.kind || mine->arg_sorts != d.arg_sorts ||
          mine->result_sort != d.result_sort)
        return false;
    }
    return true;
  }

  friend Signature declare_signature(std::string name, std::vector<Sort> sorts,
                                     std::vector<SymbolDecl> symbols);

 private:
  std::string name_;
  std::vector<Sort> sorts_;
  std::vector<SymbolDecl> symbols_;
  std::map<std::string, std::size_t> sort_ix_;
  std::map<std::string, std::size_t> sym_ix_;
};

inline Signature declare_signature(std::string name, std::vector<Sort> sorts,
                                   std::vector<SymbolDecl> symbols) {
  Signature sig;
  sig.name_ = std::move(name);
  for (Sort& s : sorts) {
    if (sig.sort_ix_.count(s.name))
      throw SignatureError("duplicate sort '" + s.name + "' in signature " + sig.name_);
    sig.sort_ix_[s.name] = sig.sorts_.size();
    sig.sorts_.push_back(std::move(s));
  }
  for (SymbolDecl& d : symbols) {
    if (sig.sym_ix_.count(d.name))
      throw SignatureError("duplicate symbol '" + d.name + "' in signature " + sig.name_);
    for (const std::string& a : d.arg_sorts)
      if (!sig.sort_ix_.count(a))
        throw SignatureError("symbol '" + d.name + "' references undeclared sort '" + a + "'");
    if (d.kind == SymbolKind::Relation) {
      if (!d.result_sort.empty())
        throw SignatureError("relation '" + d.name + "' must not carry a result sort");
    } else {
      if (d.result_sort.empty())
        throw SignatureError("symbol '" + d.name + "' needs a result sort");
      if (!sig.sort_ix_.count(d.result_sort))
        throw SignatureError("symbol '" + d.name + "' references undeclared sort '" +
                             d.result_sort + "'");
      if (d.kind == SymbolKind::Constant && !d.arg_sorts.empty())
        throw SignatureError("constant '" + d.name + "' must not take arguments");
    }
    sig.sym_ix_[d.name] = sig.symbols_.size();
    sig.symbols_.push_back(std::move(d));
  }
  return sig;
}

}  // namespace agape::folcore
