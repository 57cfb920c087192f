#pragma once

// Minimal positioned s-expression reader shared by the signature, term and
// rules formats.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strat/error.hpp"

namespace strat::sexpr {

struct Node {
  enum class Kind { Symbol, Int, String, List };

  Kind kind = Kind::Symbol;
  std::string text; // symbol name or decoded string
  std::int64_t integer = 0;
  std::vector<Node> items;
  std::size_t line = 1;
  std::size_t col = 1;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_list() const { return kind == Kind::List; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line, col); }
};

inline bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == '"' || c == ';' || c == ' ' || c == '\t' ||
         c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  /// Reads every top-level datum.
  std::vector<Node> read_all() {
    std::vector<Node> out;
    skip_space();
    while (!at_end()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

  /// Reads exactly one datum; trailing non-space input is an error.
  Node read_one() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", line_, col_);
    Node n = read();
    skip_space();
    if (!at_end()) throw ParseError("unexpected trailing input", line_, col_);
    return n;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else {
        break;
      }
    }
  }

  Node read() {
    Node n;
    n.line = line_;
    n.col = col_;
    char c = peek();
    if (c == '(') {
      advance();
      n.kind = Node::Kind::List;
      for (;;) {
        skip_space();
        if (at_end()) throw ParseError("unterminated list", n.line, n.col);
        if (peek() == ')') {
          advance();
          return n;
        }
        n.items.push_back(read());
      }
    }
    if (c == ')') throw ParseError("unexpected `)`", line_, col_);
    if (c == '"') {
      advance();
      n.kind = Node::Kind::String;
      for (;;) {
        if (at_end()) throw ParseError("unterminated string", n.line, n.col);
        char d = advance();
        if (d == '"') return n;
        if (d == '\\') {
          if (at_end()) throw ParseError("unterminated string", n.line, n.col);
          std::size_t el = line_, ec = col_;
          char e = advance();
          if (e != '"' && e != '\\') throw ParseError("unknown escape sequence", el, ec - 1);
          n.text.push_back(e);
        } else {
          n.text.push_back(d);
        }
      }
    }
    std::size_t start = pos_;
    while (!at_end() && !is_delimiter(peek())) advance();
    std::string_view tok = text_.substr(start, pos_ - start);
    if (looks_numeric(tok)) {
      n.kind = Node::Kind::Int;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n.integer);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("integer literal out of range", n.line, n.col);
      n.text = std::to_string(n.integer);
      return n;
    }
    n.kind = Node::Kind::Symbol;
    n.text = std::string(tok);
    return n;
  }

  static bool looks_numeric(std::string_view tok) {
    std::size_t i = (!tok.empty() && tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i)
      if (tok[i] < '0' || tok[i] > '9') return false;
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline std::vector<Node> read_all(std::string_view text) { return Reader(text).read_all(); }
inline Node read_one(std::string_view text) { return Reader(text).read_one(); }

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

/// Canonical text of a datum: single spaces, no comments.
inline std::string print(const Node& n) {
  switch (n.kind) {
  case Node::Kind::Symbol:
  case Node::Kind::Int: return n.text;
  case Node::Kind::String: return quote(n.text);
  case Node::Kind::List: {
    std::string out = "(";
    for (std::size_t i = 0; i < n.items.size(); ++i) {
      if (i != 0) out += ' ';
      out += print(n.items[i]);
    }
    return out + ")";
  }
  }
  return {};
}

} // namespace strat::sexpr
