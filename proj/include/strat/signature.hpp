#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "strat/error.hpp"
#include "strat/sexpr.hpp"

namespace strat {

namespace builtin {
inline const std::string Int = "Int";
inline const std::string Bool = "Bool";
inline const std::string Str = "Str";
inline const std::string Unit = "Unit";
} // namespace builtin

inline bool is_builtin_sort(std::string_view name) {
  return name == builtin::Int || name == builtin::Bool || name == builtin::Str ||
         name == builtin::Unit;
}

inline bool is_identifier(std::string_view s) {
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (s.empty() || !alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

struct Unit {
  friend bool operator==(Unit, Unit) { return true; }
};

/// Payload of a leaf term: one value of a builtin sort.
using PrimValue = std::variant<std::int64_t, bool, std::string, Unit>;

inline const std::string& prim_sort(const PrimValue& v) {
  switch (v.index()) {
  case 0: return builtin::Int;
  case 1: return builtin::Bool;
  case 2: return builtin::Str;
  default: return builtin::Unit;
  }
}

inline std::string print_prim(const PrimValue& v) {
  switch (v.index()) {
  case 0: return std::to_string(std::get<std::int64_t>(v));
  case 1: return std::get<bool>(v) ? "true" : "false";
  case 2: return sexpr::quote(std::get<std::string>(v));
  default: return "unit";
  }
}

struct ConstructorDecl {
  std::string name;
  std::string result;
  std::vector<std::string> args;

  std::size_t arity() const { return args.size(); }
  friend bool operator==(const ConstructorDecl&, const ConstructorDecl&) = default;
};

using DeclPtr = std::shared_ptr<const ConstructorDecl>;

/// Closed registry of sorts and constructors.  Immutable once loaded.
class Signature {
public:
  Signature() = default;

  /// Builds a validated signature; throws SignatureError.
  static Signature make(std::vector<std::string> sorts, std::vector<ConstructorDecl> cons) {
    Signature sig;
    for (auto& s : sorts) {
      if (!is_identifier(s)) throw SignatureError("invalid sort name", s);
      if (is_builtin_sort(s)) throw SignatureError("cannot redeclare builtin sort", s);
      if (!sig.sorts_.insert(s).second) throw SignatureError("duplicate sort", s);
    }
    for (auto& c : cons) {
      if (!is_identifier(c.name) || c.name == "true" || c.name == "false" || c.name == "unit")
        throw SignatureError("invalid constructor name", c.name);
      if (sig.by_name_.count(c.name)) throw SignatureError("duplicate constructor", c.name);
      if (!sig.sorts_.count(c.result)) {
        if (is_builtin_sort(c.result))
          throw SignatureError("constructor result must be a declared sort, not builtin", c.result);
        throw SignatureError("undeclared sort", c.result);
      }
      for (auto& a : c.args)
        if (!sig.sorts_.count(a) && !is_builtin_sort(a)) throw SignatureError("undeclared sort", a);
      auto decl = std::make_shared<const ConstructorDecl>(std::move(c));
      sig.by_name_.emplace(decl->name, decl);
      sig.order_.push_back(decl);
    }
    return sig;
  }

  const std::set<std::string>& sorts() const { return sorts_; }
  const std::vector<DeclPtr>& constructors() const { return order_; }

  bool has_sort(std::string_view s) const {
    return is_builtin_sort(s) || sorts_.count(std::string(s)) != 0;
  }

  DeclPtr find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : it->second;
  }

  /// Constructors of `sort` in declaration order.
  std::vector<DeclPtr> constructors_of(std::string_view sort) const {
    std::vector<DeclPtr> out;
    for (auto& d : order_)
      if (d->result == sort) out.push_back(d);
    return out;
  }

private:
  std::set<std::string> sorts_;
  std::map<std::string, DeclPtr> by_name_;
  std::vector<DeclPtr> order_;
};

inline const ConstructorDecl& constructor_lookup(const Signature& sig, std::string_view name) {
  auto d = sig.find(name);
  if (!d) throw UnknownConstructor(std::string(name));
  return *d;
}

/// Parses the signature file format:
///   (sort NAME)
///   (con NAME RESULT (ARG ...))
inline Signature load_signature(std::string_view text) {
  std::vector<std::string> sorts;
  std::vector<ConstructorDecl> cons;
  std::map<std::string, const sexpr::Node*> where;

  auto forms = sexpr::read_all(text);
  auto ident = [](const sexpr::Node& n, const char* what) {
    if (!n.is_symbol() || !is_identifier(n.text)) n.fail(std::string("expected ") + what);
    return n.text;
  };
  for (auto& f : forms) {
    if (!f.is_list() || f.items.empty() || !f.items[0].is_symbol())
      f.fail("expected (sort ...) or (con ...)");
    const auto& head = f.items[0].text;
    if (head == "sort") {
      if (f.items.size() != 2) f.fail("expected (sort NAME)");
      sorts.push_back(ident(f.items[1], "sort name"));
    } else if (head == "con") {
      if (f.items.size() != 4 || !f.items[3].is_list())
        f.fail("expected (con NAME RESULT (ARG ...))");
      ConstructorDecl d;
      d.name = ident(f.items[1], "constructor name");
      d.result = ident(f.items[2], "result sort");
      for (auto& a : f.items[3].items) d.args.push_back(ident(a, "argument sort"));
      cons.push_back(std::move(d));
    } else {
      f.items[0].fail("unknown form `" + head + "`");
    }
  }
  return Signature::make(std::move(sorts), std::move(cons));
}

/// Unchecked term tree: the shape of a term before its sorts are verified.
struct RawTerm {
  std::string con;                // empty for leaves
  std::optional<PrimValue> prim;  // set for leaves
  std::vector<RawTerm> kids;
};

namespace detail {

inline std::optional<std::string> check_raw(const Signature& sig, const RawTerm& t, Path& path,
                                            std::optional<SortError>& err) {
  if (t.prim) return prim_sort(*t.prim);
  auto decl = sig.find(t.con);
  if (!decl) {
    err.emplace(SortError::Kind::UnknownConstructor, path, "`" + t.con + "`");
    return std::nullopt;
  }
  if (t.kids.size() != decl->arity()) {
    err.emplace(SortError::Kind::ArityMismatch, path,
                "`" + t.con + "` expects " + std::to_string(decl->arity()) + " children, got " +
                    std::to_string(t.kids.size()));
    return std::nullopt;
  }
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    path.push_back(i);
    auto s = check_raw(sig, t.kids[i], path, err);
    if (!s) return std::nullopt;
    if (*s != decl->args[i]) {
      err.emplace(SortError::Kind::SortMismatch, path, "expected " + decl->args[i] + " got " + *s);
      return std::nullopt;
    }
    path.pop_back();
  }
  return decl->result;
}

} // namespace detail

/// Returns the first sort error in preorder, or nothing if `t` is well-sorted.
inline std::optional<SortError> check_term(const Signature& sig, const RawTerm& t) {
  Path path;
  std::optional<SortError> err;
  detail::check_raw(sig, t, path, err);
  return err;
}

} // namespace strat
