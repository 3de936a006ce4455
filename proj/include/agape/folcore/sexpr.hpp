#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agape/support.hpp"

namespace agape::folcore {

// Shared s-expression reader for every text format in the project.
// Lexical rules: whitespace-insensitive, `;` starts a comment until end of
// line, `"..."` is a quoted string (used only by (meta ...) clauses), and an
// atom is any other run of bytes free of whitespace, parentheses, quotes and
// semicolons.  UTF-8 passes through untouched.
struct SExpr {
  enum class Kind { Atom, Str, List };
  Kind kind = Kind::List;
  std::string text;          // Atom / Str payload
  std::vector<SExpr> items;  // List payload
  int line = 0, col = 0;

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_str() const { return kind == Kind::Str; }
  bool is_list() const { return kind == Kind::List; }
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items[i]; }

  std::string where() const {
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at " + where());
  }
  const std::string& atom(const char* what) const {
    if (!is_atom()) fail(std::string("expected ") + what);
    return text;
  }
  // Lists with a fixed head keyword, e.g. (domain RO a b c).
  bool headed(std::string_view head) const {
    return is_list() && !items.empty() && items[0].is_atom() && items[0].text == head;
  }
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view src) : src_(src) {}

  // Reads a single expression; trailing garbage is an error.
  static SExpr read_one(std::string_view src) {
    SExprReader r(src);
    r.skip_ws();
    SExpr e = r.read();
    r.skip_ws();
    if (!r.eof()) r.error("trailing input after expression");
    return e;
  }

  // Reads a top-level sequence of expressions.
  static std::vector<SExpr> read_all(std::string_view src) {
    SExprReader r(src);
    std::vector<SExpr> out;
    r.skip_ws();
    while (!r.eof()) {
      out.push_back(r.read());
      r.skip_ws();
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void error(const std::string& msg) const {
    throw ParseError(msg + " at line " + std::to_string(line_) + ", column " +
                     std::to_string(col_));
  }

  static bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  }
  static bool is_delim(char c) {
    return is_ws(c) || c == '(' || c == ')' || c == ';' || c == '"';
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (is_ws(c)) {
        advance();
      } else if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    if (eof()) error("unexpected end of input");
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      skip_ws();
      while (true) {
        if (eof()) error("unterminated list");
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
        skip_ws();
      }
      return e;
    }
    if (c == ')') error("unmatched ')'");
    if (c == '"') {
      advance();
      e.kind = SExpr::Kind::Str;
      while (true) {
        if (eof()) error("unterminated string");
        char d = advance();
        if (d == '"') break;
        if (d == '\\') {
          if (eof()) error("unterminated escape");
          char x = advance();
          e.text.push_back(x == 'n' ? '\n' : x);
        } else {
          e.text.push_back(d);
        }
      }
      return e;
    }
    e.kind = SExpr::Kind::Atom;
    while (!eof() && !is_delim(peek())) e.text.push_back(advance());
    return e;
  }
};

// Rational literal `p`, `-p`, `p/q` used by the geometry and cover formats.
inline Rational parse_rational(const SExpr& e) {
  const std::string& s = e.atom("rational");
  auto bad = [&] { e.fail("malformed rational '" + s + "'"); };
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den <= 0) bad();
    return Rational(num, den);
  } catch (const std::exception&) {
    bad();
  }
}

inline std::string rational_str(const Rational& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

inline long parse_long(const SExpr& e) {
  const std::string& s = e.atom("integer");
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) e.fail("malformed integer '" + s + "'");
    return v;
  } catch (const std::exception&) {
    e.fail("malformed integer '" + s + "'");
  }
}

}  // namespace agape::folcore
