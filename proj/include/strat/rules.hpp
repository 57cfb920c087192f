#pragma once

// Pattern -> template rewrite rules, compiled into monomorphic updates for
// adhoc dispatch.
//
// Rules file format:
//   (rule NAME SORT (lhs PATTERN) (rhs TEMPLATE) [(guard EXPR)] (kind K))
// with K one of transform | extract | predicate.  Patterns: ?var, _, literals,
// (Con p ...).  Templates: ?var, ?env, literals, (Con t ...), (neg e),
// (+ a b), (- a b), (= a b), (< a b), (list e ...).

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "strat/effects.hpp"
#include "strat/sexpr.hpp"
#include "strat/strategy.hpp"
#include "strat/term.hpp"
#include "strat/value.hpp"

namespace strat {

struct Pattern {
  enum class Kind { Var, Wildcard, Literal, Con };

  Kind kind = Kind::Wildcard;
  std::string sort;
  std::string var;   // Var
  PrimValue literal; // Literal
  DeclPtr decl;      // Con
  std::vector<Pattern> subs;
};

using Bindings = std::map<std::string, Term>;

inline constexpr std::string_view env_var = "env";

struct Template {
  enum class Kind { Var, Env, Literal, Con, Op };

  Kind kind = Kind::Literal;
  std::string name; // variable name or operator
  PrimValue literal;
  DeclPtr decl;
  std::vector<Template> args;
};

enum class RuleKind { Transform, Extract, Predicate };

inline std::string_view to_string(RuleKind k) {
  switch (k) {
  case RuleKind::Transform: return "transform";
  case RuleKind::Extract: return "extract";
  case RuleKind::Predicate: return "predicate";
  }
  return "?";
}

struct RuleDef {
  std::string name;
  std::string sort;
  Pattern lhs;
  Template rhs;
  std::optional<Template> guard;
  RuleKind kind = RuleKind::Transform;
  bool uses_env = false;
};

// ------------------------------------------------------------------ match

namespace detail {

inline bool match_into(const Pattern& p, const Term& t, Bindings& b) {
  switch (p.kind) {
  case Pattern::Kind::Wildcard: return true;
  case Pattern::Kind::Var: b.insert_or_assign(p.var, t); return true;
  case Pattern::Kind::Literal: return t.is_prim() && t.value() == p.literal;
  case Pattern::Kind::Con: {
    if (t.is_prim() || t.constructor() != p.decl->name) return false;
    auto ks = t.children();
    for (std::size_t i = 0; i < p.subs.size(); ++i)
      if (!match_into(p.subs[i], ks[i], b)) return false;
    return true;
  }
  }
  return false;
}

} // namespace detail

/// Most general match of a linear pattern; nullopt on mismatch.
inline std::optional<Bindings> match(const Pattern& p, const Term& t) {
  Bindings b;
  if (!detail::match_into(p, t, b)) return std::nullopt;
  return b;
}

// ------------------------------------------------------------ instantiate

/// Evaluates a template under bindings (and the propagated environment, if
/// any).  Constructor applications are sort-checked on construction.
inline Value instantiate(const Template& tm, const Bindings& b, const std::optional<Value>& env = {}) {
  switch (tm.kind) {
  case Template::Kind::Var: {
    auto it = b.find(tm.name);
    if (it == b.end()) throw RuleError("unbound template variable ?" + tm.name);
    return Value(it->second);
  }
  case Template::Kind::Env:
    if (!env) throw RuleError("?env used outside an environment-carrying context");
    return *env;
  case Template::Kind::Literal: return Value(Term::prim(tm.literal));
  case Template::Kind::Con: {
    std::vector<Term> kids;
    kids.reserve(tm.args.size());
    for (auto& a : tm.args) kids.push_back(instantiate(a, b, env).to_term());
    return Value(Term::app(tm.decl, std::move(kids)));
  }
  case Template::Kind::Op: {
    std::vector<Value> xs;
    for (auto& a : tm.args) xs.push_back(instantiate(a, b, env));
    const auto& op = tm.name;
    if (op == "list") return Value(Value::List(std::move(xs)));
    if (op == "neg") {
      if (xs[0].is_bool()) return Value(!xs[0].as_bool());
      return Value(-xs[0].as_int());
    }
    if (op == "+") return Value(xs[0].as_int() + xs[1].as_int());
    if (op == "-") return Value(xs[0].as_int() - xs[1].as_int());
    if (op == "<") return Value(xs[0].as_int() < xs[1].as_int());
    if (op == "=") return Value(xs[0] == xs[1]);
    throw RuleError("unknown operator `" + op + "`");
  }
  }
  throw RuleError("malformed template");
}

/// The pattern read back as a template; wildcards have no template form.
inline Template template_from_pattern(const Pattern& p) {
  Template t;
  switch (p.kind) {
  case Pattern::Kind::Wildcard: throw RuleError("wildcard has no template form");
  case Pattern::Kind::Var: t.kind = Template::Kind::Var; t.name = p.var; return t;
  case Pattern::Kind::Literal: t.kind = Template::Kind::Literal; t.literal = p.literal; return t;
  case Pattern::Kind::Con:
    t.kind = Template::Kind::Con;
    t.decl = p.decl;
    for (auto& s : p.subs) t.args.push_back(template_from_pattern(s));
    return t;
  }
  return t;
}

// ------------------------------------------------------------------ parsing

namespace detail {

inline std::optional<PrimValue> literal_of(const sexpr::Node& n) {
  using K = sexpr::Node::Kind;
  if (n.kind == K::Int) return PrimValue{n.integer};
  if (n.kind == K::String) return PrimValue{n.text};
  if (n.is_symbol("true")) return PrimValue{true};
  if (n.is_symbol("false")) return PrimValue{false};
  if (n.is_symbol("unit")) return PrimValue{Unit{}};
  return std::nullopt;
}

class RuleParser {
public:
  RuleParser(const Signature& sig, std::string rule) : sig_(sig), rule_(std::move(rule)) {}

  [[noreturn]] void fail(const sexpr::Node& at, const std::string& what) const {
    throw RuleError(std::to_string(at.line) + ":" + std::to_string(at.col) + ": rule " + rule_ +
                    ": " + what);
  }

  Pattern pattern(const sexpr::Node& n, const std::string& sort) {
    Pattern p;
    p.sort = sort;
    if (auto lit = literal_of(n)) {
      if (prim_sort(*lit) != sort)
        fail(n, "literal of sort " + prim_sort(*lit) + " where " + sort + " is expected");
      p.kind = Pattern::Kind::Literal;
      p.literal = *lit;
      return p;
    }
    if (n.is_symbol("_")) {
      p.kind = Pattern::Kind::Wildcard;
      return p;
    }
    if (n.is_symbol() && n.text.size() > 1 && n.text[0] == '?') {
      p.kind = Pattern::Kind::Var;
      p.var = n.text.substr(1);
      if (p.var == env_var) fail(n, "?env is reserved and cannot be bound by a pattern");
      if (!vars_.emplace(p.var, sort).second) fail(n, "non-linear pattern variable ?" + p.var);
      return p;
    }
    const sexpr::Node* head = &n;
    std::size_t nargs = 0;
    if (n.is_list()) {
      if (n.items.empty()) fail(n, "empty pattern");
      head = &n.items[0];
      nargs = n.items.size() - 1;
    }
    if (!head->is_symbol()) fail(*head, "expected constructor pattern");
    auto decl = sig_.find(head->text);
    if (!decl) fail(*head, "unknown constructor `" + head->text + "`");
    if (decl->result != sort)
      fail(*head, "constructor `" + decl->name + "` has sort " + decl->result + ", expected " + sort);
    if (nargs != decl->arity()) fail(n, "arity mismatch for `" + decl->name + "`");
    p.kind = Pattern::Kind::Con;
    p.decl = decl;
    for (std::size_t i = 0; i < nargs; ++i) p.subs.push_back(pattern(n.items[i + 1], decl->args[i]));
    return p;
  }

  /// Parses a template and infers its static type: a sort name, "List", or
  /// nullopt when only known at run time (?env).
  Template templ(const sexpr::Node& n, std::optional<std::string>& type) {
    Template t;
    if (auto lit = literal_of(n)) {
      t.kind = Template::Kind::Literal;
      t.literal = *lit;
      type = prim_sort(*lit);
      return t;
    }
    if (n.is_symbol() && n.text.size() > 1 && n.text[0] == '?') {
      t.name = n.text.substr(1);
      if (t.name == env_var) {
        t.kind = Template::Kind::Env;
        uses_env_ = true;
        type.reset();
        return t;
      }
      auto it = vars_.find(t.name);
      if (it == vars_.end()) fail(n, "template variable ?" + t.name + " is not bound by the pattern");
      t.kind = Template::Kind::Var;
      type = it->second;
      return t;
    }
    const sexpr::Node* head = &n;
    std::vector<const sexpr::Node*> rest;
    if (n.is_list()) {
      if (n.items.empty()) fail(n, "empty template");
      head = &n.items[0];
      for (std::size_t i = 1; i < n.items.size(); ++i) rest.push_back(&n.items[i]);
    }
    if (!head->is_symbol()) fail(*head, "expected constructor or operator");
    const std::string& h = head->text;
    if (n.is_list() && (h == "neg" || h == "+" || h == "-" || h == "=" || h == "<" || h == "list"))
      return op(n, h, rest, type);
    auto decl = sig_.find(h);
    if (!decl) fail(*head, "unknown constructor `" + h + "`");
    if (rest.size() != decl->arity()) fail(n, "arity mismatch for `" + h + "`");
    t.kind = Template::Kind::Con;
    t.decl = decl;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      std::optional<std::string> at;
      t.args.push_back(templ(*rest[i], at));
      if (at && *at != decl->args[i])
        fail(*rest[i], "argument " + std::to_string(i) + " of `" + h + "` has type " + *at +
                           ", expected " + decl->args[i]);
    }
    type = decl->result;
    return t;
  }

  bool uses_env() const { return uses_env_; }

private:
  Template op(const sexpr::Node& n, const std::string& h, const std::vector<const sexpr::Node*>& rest,
              std::optional<std::string>& type) {
    Template t;
    t.kind = Template::Kind::Op;
    t.name = h;
    std::vector<std::optional<std::string>> types(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) t.args.push_back(templ(*rest[i], types[i]));
    auto want = [&](std::size_t count) {
      if (rest.size() != count) fail(n, "`" + h + "` takes " + std::to_string(count) + " operands");
    };
    auto want_type = [&](std::size_t i, const std::string& ty) {
      if (types[i] && *types[i] != ty) fail(*rest[i], "`" + h + "` expects " + ty + ", got " + *types[i]);
    };
    if (h == "list") {
      type = "List";
    } else if (h == "neg") {
      want(1);
      if (types[0] && *types[0] != builtin::Bool && *types[0] != builtin::Int)
        fail(*rest[0], "`neg` expects Bool or Int, got " + *types[0]);
      type = types[0];
    } else if (h == "+" || h == "-") {
      want(2);
      want_type(0, builtin::Int);
      want_type(1, builtin::Int);
      type = builtin::Int;
    } else if (h == "<") {
      want(2);
      want_type(0, builtin::Int);
      want_type(1, builtin::Int);
      type = builtin::Bool;
    } else { // "="
      want(2);
      if (types[0] && types[1] && *types[0] != *types[1])
        fail(n, "`=` compares " + *types[0] + " with " + *types[1]);
      type = builtin::Bool;
    }
    return t;
  }

  const Signature& sig_;
  std::string rule_;
  std::map<std::string, std::string> vars_;
  bool uses_env_ = false;
};

} // namespace detail

/// Rules in file order, addressable by name.
class RuleBase {
public:
  void add(RuleDef r) {
    if (index_.count(r.name)) throw RuleError("duplicate rule `" + r.name + "`");
    index_.emplace(r.name, rules_.size());
    rules_.push_back(std::make_shared<const RuleDef>(std::move(r)));
  }

  void merge(const RuleBase& other) {
    for (auto& r : other.rules_) add(*r);
  }

  const RuleDef* find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? nullptr : rules_[it->second].get();
  }

  std::shared_ptr<const RuleDef> get(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw RuleError("unknown rule `" + std::string(name) + "`");
    return rules_[it->second];
  }

  std::size_t size() const { return rules_.size(); }

private:
  std::vector<std::shared_ptr<const RuleDef>> rules_;
  std::map<std::string, std::size_t> index_;
};

/// Parses and statically validates one `(rule ...)` form.
inline RuleDef parse_rule(const sexpr::Node& f, const Signature& sig) {
  if (!f.is_list() || f.items.size() < 2 || !f.items[0].is_symbol("rule"))
    f.fail("expected (rule NAME SORT (lhs ...) (rhs ...) [(guard ...)] (kind ...))");
  if (f.items.size() < 6 || !f.items[1].is_symbol() || !is_identifier(f.items[1].text))
    f.fail("expected (rule NAME SORT (lhs ...) (rhs ...) [(guard ...)] (kind ...))");
  RuleDef r;
  r.name = f.items[1].text;
  detail::RuleParser rp(sig, r.name);
  const auto& sort_node = f.items[2];
  if (!sort_node.is_symbol() || !sig.has_sort(sort_node.text)) rp.fail(sort_node, "unknown sort");
  r.sort = sort_node.text;

  const sexpr::Node *lhs = nullptr, *rhs = nullptr, *guard = nullptr, *kind = nullptr;
  for (std::size_t i = 3; i < f.items.size(); ++i) {
    const auto& c = f.items[i];
    if (!c.is_list() || c.items.size() != 2 || !c.items[0].is_symbol())
      rp.fail(c, "expected (lhs ...), (rhs ...), (guard ...) or (kind ...)");
    const std::string& key = c.items[0].text;
    const sexpr::Node** slot = key == "lhs"     ? &lhs
                               : key == "rhs"   ? &rhs
                               : key == "guard" ? &guard
                               : key == "kind"  ? &kind
                                                : nullptr;
    if (!slot) rp.fail(c, "unknown clause `" + key + "`");
    if (*slot) rp.fail(c, "duplicate clause `" + key + "`");
    *slot = &c.items[1];
  }
  if (!lhs || !rhs || !kind) rp.fail(f, "rule needs lhs, rhs and kind clauses");

  if (kind->is_symbol("transform")) r.kind = RuleKind::Transform;
  else if (kind->is_symbol("extract")) r.kind = RuleKind::Extract;
  else if (kind->is_symbol("predicate")) r.kind = RuleKind::Predicate;
  else rp.fail(*kind, "kind must be transform, extract or predicate");

  r.lhs = rp.pattern(*lhs, r.sort);
  std::optional<std::string> rhs_type;
  r.rhs = rp.templ(*rhs, rhs_type);
  if (guard) {
    std::optional<std::string> gt;
    r.guard = rp.templ(*guard, gt);
    if (gt && *gt != builtin::Bool) rp.fail(*guard, "guard must be Bool, got " + *gt);
  }
  if (r.kind == RuleKind::Transform && rhs_type && *rhs_type != r.sort)
    rp.fail(*rhs, "transform must preserve sort " + r.sort + ", rhs has type " + *rhs_type);
  if (r.kind == RuleKind::Predicate && rhs_type && *rhs_type != builtin::Bool)
    rp.fail(*rhs, "predicate rhs must be Bool, got " + *rhs_type);
  r.uses_env = rp.uses_env();
  return r;
}

inline RuleBase load_rules(std::string_view text, const Signature& sig) {
  RuleBase base;
  for (auto& f : sexpr::read_all(text)) {
    RuleDef r = parse_rule(f, sig);
    if (base.find(r.name)) f.fail("duplicate rule `" + r.name + "`");
    base.add(std::move(r));
  }
  return base;
}

// ------------------------------------------------------------------ compile

namespace detail {

/// Runs the rule on a term of its sort: nullopt when the pattern or guard
/// rejects it.
inline std::optional<Value> fire(const RuleDef& r, const Term& t, const std::optional<Value>& env) {
  auto b = match(r.lhs, t);
  if (!b) return std::nullopt;
  if (r.guard && !instantiate(*r.guard, *b, env).as_bool()) return std::nullopt;
  return instantiate(r.rhs, *b, env);
}

template <class A>
Eff<A> no_match(const RuleDef& r, EffectKind k) {
  if (k == EffectKind::Total)
    throw RuleError("rule " + r.name + " did not match a term of sort " + r.sort +
                    " under total effect");
  return eff_zero<A>(k);
}

inline void require_kind(const RuleDef& r, bool ok, std::string_view position) {
  if (!ok)
    throw RuleError("rule " + r.name + " of kind " + std::string(to_string(r.kind)) +
                    " cannot be used as " + std::string(position));
}

} // namespace detail

/// Transform rule as a type-preserving update.
inline MonoTP compile_transform(std::shared_ptr<const RuleDef> r, EffectKind k,
                                std::optional<Value> env = {}) {
  detail::require_kind(*r, r->kind == RuleKind::Transform, "a type-preserving update");
  TypeTag tag{r->sort};
  return {tag, [r, k, env](const Term& t) {
            auto v = detail::fire(*r, t, env);
            if (!v) return detail::no_match<Term>(*r, k);
            return eff_pure(k, v->to_term());
          }};
}

/// Extract (or predicate) rule as a value-producing update; predicates yield
/// unit.
inline MonoTU<Value> compile_extract(std::shared_ptr<const RuleDef> r, EffectKind k,
                                     std::optional<Value> env = {}) {
  detail::require_kind(*r, r->kind != RuleKind::Transform, "a type-unifying update");
  TypeTag tag{r->sort};
  return {tag, [r, k, env](const Term& t) {
            auto v = detail::fire(*r, t, env);
            if (r->kind == RuleKind::Predicate) {
              if (!v || !v->as_bool()) return detail::no_match<Value>(*r, k);
              return eff_pure(k, Value(Unit{}));
            }
            if (!v) return detail::no_match<Value>(*r, k);
            return eff_pure(k, *v);
          }};
}

inline MonoTU<Unit> compile_predicate(std::shared_ptr<const RuleDef> r, EffectKind k,
                                      std::optional<Value> env = {}) {
  detail::require_kind(*r, r->kind == RuleKind::Predicate, "a predicate");
  TypeTag tag{r->sort};
  return {tag, [r, k, env](const Term& t) {
            auto v = detail::fire(*r, t, env);
            if (!v || !v->as_bool()) return detail::no_match<Unit>(*r, k);
            return eff_pure(k, Unit{});
          }};
}

} // namespace strat

namespace strat {

/// Compiles a rule for the update flavor `Out`: Term (transform rules),
/// Value (extract or predicate rules) or Unit (predicate rules).
template <class Out>
MonoUpdate<Out> compile_rule(std::shared_ptr<const RuleDef> r, EffectKind k, std::optional<Value> env = {}) {
  if constexpr (std::is_same_v<Out, Term>)
    return compile_transform(std::move(r), k, std::move(env));
  else if constexpr (std::is_same_v<Out, Value>)
    return compile_extract(std::move(r), k, std::move(env));
  else
    return compile_predicate(std::move(r), k, std::move(env));
}

} // namespace strat
