#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "strat/error.hpp"
#include "strat/term.hpp"

namespace strat {

/// Dynamic result of a type-unifying strategy in the command-line setting:
/// unit, a primitive, a constructor term, or a list of values.  Leaf terms
/// are always normalized to the matching scalar.
class Value {
public:
  using List = std::vector<Value>;
  using Variant = std::variant<Unit, std::int64_t, bool, std::string, Term, List>;

  Value() = default;
  Value(Unit u) : v_(u) {}
  Value(std::int64_t i) : v_(i) {}
  Value(int i) : v_(std::int64_t{i}) {}
  Value(bool b) : v_(b) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(List l) : v_(std::move(l)) {}
  Value(const Term& t) : v_(normalize(t)) {}

  const Variant& get() const { return v_; }

  bool is_unit() const { return std::holds_alternative<Unit>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_str() const { return std::holds_alternative<std::string>(v_); }
  bool is_term() const { return std::holds_alternative<Term>(v_); }
  bool is_list() const { return std::holds_alternative<List>(v_); }

  std::int64_t as_int() const { return expect<std::int64_t>("Int"); }
  bool as_bool() const { return expect<bool>("Bool"); }
  const std::string& as_str() const { return expect<std::string>("Str"); }
  const Term& as_term() const { return expect<Term>("term"); }
  const List& as_list() const { return expect<List>("list"); }

  /// Sort name for scalars and terms; "List" for lists.
  std::string type_name() const {
    switch (v_.index()) {
    case 0: return builtin::Unit;
    case 1: return builtin::Int;
    case 2: return builtin::Bool;
    case 3: return builtin::Str;
    case 4: return std::get<Term>(v_).sort();
    default: return "List";
    }
  }

  /// Leaf or application term for this value; lists have none.
  Term to_term() const {
    switch (v_.index()) {
    case 0: return Term::unit();
    case 1: return Term::integer(std::get<std::int64_t>(v_));
    case 2: return Term::boolean(std::get<bool>(v_));
    case 3: return Term::string(std::get<std::string>(v_));
    case 4: return std::get<Term>(v_);
    default: throw ValueError("a list value cannot be used as a term");
    }
  }

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }

private:
  static Variant normalize(const Term& t) {
    if (!t.is_prim()) return t;
    return std::visit([](const auto& x) -> Variant { return x; }, t.value());
  }

  template <class T>
  const T& expect(const char* what) const {
    if (auto p = std::get_if<T>(&v_)) return *p;
    throw ValueError(std::string("expected ") + what + " value, got " + type_name());
  }

  Variant v_;
};

inline std::string print_value(const Value& v) {
  switch (v.get().index()) {
  case 0: return "unit";
  case 1: return std::to_string(v.as_int());
  case 2: return v.as_bool() ? "true" : "false";
  case 3: return sexpr::quote(v.as_str());
  case 4: return print_term(v.as_term());
  default: {
    std::string out = "[";
    const auto& l = v.as_list();
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i != 0) out += ", ";
      out += print_value(l[i]);
    }
    return out + "]";
  }
  }
}

} // namespace strat
