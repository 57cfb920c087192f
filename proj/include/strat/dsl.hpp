#pragma once

// Textual strategy language.  See docs/strategy-language.md for the grammar.
//
// The language is first-order: every combinator and scheme of the library
// has a surface form, but strategies cannot be abstracted over.  Values
// produced by `pass` and the environment threaded by `full_tdpe`/`once_tdpe`
// are visible as `env` (and `?env` inside rule and value templates).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "strat/effects.hpp"
#include "strat/error.hpp"
#include "strat/rules.hpp"
#include "strat/schemes.hpp"
#include "strat/sexpr.hpp"
#include "strat/strategy.hpp"
#include "strat/value.hpp"

namespace strat::dsl {

enum class Op {
  Id, Fail, Skip, Env, Value, Rule, Adhoc,
  Seq, Pass, Choice, Comb,
  All, One,
  FullTd, FullBu, OnceTd, OnceBu, StopTd, StopBu,
  FullTdpe, OnceTdpe,
  Beloweq, Below, Aboveeq, Above,
  Belowlist, Abovelist, Prepost,
};

enum class Shape { Leaf, RuleRef, Raw, Adhoc, Unary, Binary, Ternary, ListThenExpr, ExprListList };

struct OpInfo {
  Op op;
  std::string_view name;
  Shape shape;
};

inline constexpr OpInfo op_table[] = {
    {Op::Id, "id", Shape::Leaf},
    {Op::Fail, "fail", Shape::Leaf},
    {Op::Skip, "skip", Shape::Leaf},
    {Op::Env, "env", Shape::Leaf},
    {Op::Value, "value", Shape::Raw},
    {Op::Rule, "rule", Shape::RuleRef},
    {Op::Adhoc, "adhoc", Shape::Adhoc},
    {Op::Seq, "seq", Shape::Binary},
    {Op::Pass, "pass", Shape::Binary},
    {Op::Choice, "choice", Shape::Binary},
    {Op::Comb, "comb", Shape::Binary},
    {Op::All, "all", Shape::Unary},
    {Op::One, "one", Shape::Unary},
    {Op::FullTd, "full_td", Shape::Unary},
    {Op::FullBu, "full_bu", Shape::Unary},
    {Op::OnceTd, "once_td", Shape::Unary},
    {Op::OnceBu, "once_bu", Shape::Unary},
    {Op::StopTd, "stop_td", Shape::Unary},
    {Op::StopBu, "stop_bu", Shape::Unary},
    {Op::FullTdpe, "full_tdpe", Shape::Ternary},
    {Op::OnceTdpe, "once_tdpe", Shape::Ternary},
    {Op::Beloweq, "beloweq", Shape::Binary},
    {Op::Below, "below", Shape::Binary},
    {Op::Aboveeq, "aboveeq", Shape::Binary},
    {Op::Above, "above", Shape::Binary},
    {Op::Belowlist, "belowlist", Shape::ListThenExpr},
    {Op::Abovelist, "abovelist", Shape::ListThenExpr},
    {Op::Prepost, "prepost", Shape::ExprListList},
};

inline const OpInfo& info(Op op) {
  for (auto& i : op_table)
    if (i.op == op) return i;
  throw Error("unknown strategy operator");
}

inline const OpInfo* find_op(std::string_view name) {
  for (auto& i : op_table)
    if (i.name == name) return &i;
  return nullptr;
}

/// Strategy syntax tree.  `text` holds the rule name (Rule) or the canonical
/// template text (Value); `names` the rule names of Adhoc; `pre`/`post` the
/// predicate lists of the list schemes.
struct Expr {
  Op op = Op::Id;
  std::string text;
  std::vector<std::string> names;
  std::vector<Expr> args;
  std::vector<Expr> pre;
  std::vector<Expr> post;
  std::size_t line = 1;
  std::size_t col = 1;

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.op == b.op && a.text == b.text && a.names == b.names && a.args == b.args &&
           a.pre == b.pre && a.post == b.post;
  }
};

// ------------------------------------------------------------------ parser

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    space();
    if (!at_end()) error("unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void error(const std::string& what) const { throw ParseError(what, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_++] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
  }

  void space() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    space();
    if (peek() != c) {
      if (at_end()) error(std::string("expected `") + c + "`, got end of input");
      error(std::string("expected `") + c + "`");
    }
    advance();
  }

  static bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

  std::string ident() {
    space();
    if (!ident_start(peek())) error(at_end() ? "expected identifier, got end of input" : "expected identifier");
    std::size_t start = pos_;
    while (!at_end() && ident_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string rule_name() {
    std::size_t l = line_, c = col_;
    std::string n = ident();
    if (!is_identifier(n)) throw ParseError("invalid rule name `" + n + "`", l, c);
    return n;
  }

  /// Source text of one balanced s-expression datum, up to the closing `)`
  /// of the enclosing value(...).
  std::string raw_datum() {
    space();
    std::size_t start = pos_, l = line_, c = col_;
    int depth = 0;
    while (!at_end()) {
      char ch = peek();
      if (ch == '"') {
        advance();
        while (!at_end() && peek() != '"') {
          if (peek() == '\\') advance();
          if (!at_end()) advance();
        }
        if (at_end()) break;
        advance();
        continue;
      }
      if (ch == '(') ++depth;
      if (ch == ')') {
        if (depth == 0) break;
        --depth;
      }
      advance();
    }
    std::string_view inner = text_.substr(start, pos_ - start);
    try {
      return sexpr::print(sexpr::read_one(inner));
    } catch (const ParseError& e) {
      throw ParseError(std::string("in value template: ") + e.what(), l, c);
    }
  }

  std::vector<Expr> list() {
    expect('[');
    std::vector<Expr> out;
    space();
    if (peek() == ']') {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(expr());
      space();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']');
      return out;
    }
  }

  Expr literal(std::size_t l, std::size_t c) {
    Expr e;
    e.op = Op::Value;
    e.line = l;
    e.col = c;
    std::size_t start = pos_;
    if (peek() == '"') {
      advance();
      while (!at_end() && peek() != '"') {
        if (peek() == '\\') advance();
        if (!at_end()) advance();
      }
      if (at_end()) throw ParseError("unterminated string", l, c);
      advance();
    } else {
      if (peek() == '-') advance();
      while (!at_end() && peek() >= '0' && peek() <= '9') advance();
    }
    try {
      e.text = sexpr::print(sexpr::read_one(text_.substr(start, pos_ - start)));
    } catch (const ParseError& err) {
      throw ParseError(err.what(), l, c);
    }
    return e;
  }

  Expr expr() {
    space();
    std::size_t l = line_, c = col_;
    if (at_end()) error("expected strategy expression, got end of input");
    char ch = peek();
    if (ch == '"' || ch == '-' || (ch >= '0' && ch <= '9')) return literal(l, c);
    if (!ident_start(ch)) error("expected strategy expression");
    std::string name = ident();
    Expr e;
    e.line = l;
    e.col = c;
    if (name == "true" || name == "false" || name == "unit") {
      e.op = Op::Value;
      e.text = name;
      return e;
    }
    const OpInfo* op = find_op(name);
    if (!op) throw ParseError("unknown combinator `" + name + "`", l, c);
    e.op = op->op;
    switch (op->shape) {
    case Shape::Leaf: return e;
    case Shape::RuleRef: e.text = rule_name(); return e;
    case Shape::Raw:
      expect('(');
      e.text = raw_datum();
      expect(')');
      return e;
    case Shape::Adhoc:
      expect('(');
      e.args.push_back(expr());
      do {
        expect(',');
        e.names.push_back(rule_name());
        space();
      } while (peek() == ',');
      expect(')');
      return e;
    case Shape::Unary:
      expect('(');
      e.args.push_back(expr());
      expect(')');
      return e;
    case Shape::Binary:
    case Shape::Ternary: {
      std::size_t n = op->shape == Shape::Binary ? 2 : 3;
      expect('(');
      for (std::size_t i = 0; i < n; ++i) {
        if (i != 0) expect(',');
        e.args.push_back(expr());
      }
      expect(')');
      return e;
    }
    case Shape::ListThenExpr:
      expect('(');
      e.pre = list();
      expect(',');
      e.args.push_back(expr());
      expect(')');
      return e;
    case Shape::ExprListList:
      expect('(');
      e.args.push_back(expr());
      expect(',');
      e.pre = list();
      expect(',');
      e.post = list();
      expect(')');
      return e;
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline Expr parse_strategy(std::string_view text) { return Parser(text).parse(); }

inline std::string print_strategy(const Expr& e) {
  const OpInfo& i = info(e.op);
  std::string out(i.name);
  auto join = [](const std::vector<Expr>& xs) {
    std::string s = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k != 0) s += ", ";
      s += print_strategy(xs[k]);
    }
    return s + "]";
  };
  switch (i.shape) {
  case Shape::Leaf: return out;
  case Shape::RuleRef: return out + " " + e.text;
  case Shape::Raw: {
    const std::string& x = e.text;
    bool literal = !x.empty() && (x[0] == '"' || x[0] == '-' || (x[0] >= '0' && x[0] <= '9') ||
                                  x == "true" || x == "false" || x == "unit");
    return literal ? x : out + "(" + x + ")";
  }
  case Shape::Adhoc: {
    out += "(" + print_strategy(e.args[0]);
    for (auto& n : e.names) out += ", " + n;
    return out + ")";
  }
  case Shape::Unary:
  case Shape::Binary:
  case Shape::Ternary: {
    out += "(";
    for (std::size_t k = 0; k < e.args.size(); ++k) {
      if (k != 0) out += ", ";
      out += print_strategy(e.args[k]);
    }
    return out + ")";
  }
  case Shape::ListThenExpr: return out + "(" + join(e.pre) + ", " + print_strategy(e.args[0]) + ")";
  case Shape::ExprListList:
    return out + "(" + print_strategy(e.args[0]) + ", " + join(e.pre) + ", " + join(e.post) + ")";
  }
  return out;
}

// ------------------------------------------------------------- elaboration

enum class Flavor { TP, TU };

using Executable = std::variant<TP, TU<Value>>;

struct Context {
  std::shared_ptr<const Signature> sig;
  std::shared_ptr<const RuleBase> rules;
  EffectKind effect = EffectKind::Partial;
  Monoid<Value> monoid = monoid_registry("list_concat");
  std::optional<Value> env;

  Context with_env(Value v) const {
    Context c = *this;
    c.env = std::move(v);
    return c;
  }
};

namespace detail {

[[noreturn]] inline void fail_at(const Expr& e, const std::string& what) {
  throw DslError(std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + what);
}

template <class S>
constexpr const char* position_name() {
  if constexpr (std::is_same_v<S, TP>)
    return "a type-preserving";
  else if constexpr (std::is_same_v<S, TU<Value>>)
    return "a type-unifying";
  else
    return "a predicate";
}

template <class S>
auto flavor_for(const Context& c) {
  if constexpr (std::is_same_v<S, TP>)
    return TPF{};
  else if constexpr (std::is_same_v<S, TU<Value>>)
    return TUF<Value>{c.monoid};
  else
    return predicate_flavor();
}

inline void need_zero(const Expr& e, const Context& c) {
  if (!has_zero(c.effect))
    throw UnsupportedEffect(std::to_string(e.line) + ":" + std::to_string(e.col) + ": `" +
                            std::string(info(e.op).name) +
                            "` needs failure, which the total effect does not provide");
}

inline Template value_template(const Expr& e, const Context& c) {
  strat::detail::RuleParser rp(*c.sig, "value");
  std::optional<std::string> type;
  Template t = rp.templ(sexpr::read_one(e.text), type);
  if (rp.uses_env() && !c.env) fail_at(e, "?env used outside pass or environment propagation");
  return t;
}

template <class S>
std::shared_ptr<const RuleDef> rule_for(const Expr& e, const std::string& name, const Context& c) {
  const RuleDef* r = c.rules->find(name);
  if (!r) fail_at(e, "unknown rule `" + name + "`");
  bool ok = std::is_same_v<S, TP>          ? r->kind == RuleKind::Transform
            : std::is_same_v<S, TU<Value>> ? r->kind != RuleKind::Transform
                                           : r->kind == RuleKind::Predicate;
  if (!ok)
    fail_at(e, "flavor mismatch: " + std::string(to_string(r->kind)) + " rule `" + name + "` in " +
                   position_name<S>() + " position");
  if (r->uses_env && !c.env) fail_at(e, "rule `" + name + "` uses ?env outside pass or propagation");
  return c.rules->get(name);
}

template <class S>
MonoUpdate<typename S::result_type> mono_for(std::shared_ptr<const RuleDef> r, const Context& c) {
  using Out = typename S::result_type;
  return compile_rule<Out>(std::move(r), c.effect, c.env);
}

template <class S>
S elab(const Expr& e, const Context& c);

inline std::vector<Predicate> preds(const std::vector<Expr>& xs, const Context& c) {
  std::vector<Predicate> out;
  for (auto& x : xs) out.push_back(elab<Predicate>(x, c));
  return out;
}

template <class S>
S elab_propagate(const Expr& e, const Context& c) {
  using F = decltype(flavor_for<S>(c));
  if (e.args[0].op != Op::Value) fail_at(e.args[0], "initial environment must be a value");
  Context probe = c.with_env(Value(Unit{}));
  Template init = value_template(e.args[0], c);
  // Static checks of update and body with a placeholder environment.
  elab<TU<Value>>(e.args[1], probe);
  elab<S>(e.args[2], probe);
  if (c.effect == EffectKind::Nondet)
    throw UnsupportedEffect(std::to_string(e.line) + ":" + std::to_string(e.col) + ": `" +
                            std::string(info(e.op).name) + "` supports total and partial effects only");
  Value e0 = instantiate(init, {}, c.env);
  Expr update = e.args[1];
  Expr body = e.args[2];
  EnvStrategy<S, Value> f = [body, c](const Value& env) { return elab<S>(body, c.with_env(env)); };
  EnvUpdate<Value> u = [update, c](const Value& env, const Term& t) {
    return elab<TU<Value>>(update, c.with_env(env))(t);
  };
  F fl = flavor_for<S>(c);
  if (e.op == Op::FullTdpe) return full_tdpe<F, Value>(fl, c.effect, f, u, e0);
  need_zero(e, c);
  return once_tdpe<F, Value>(fl, c.effect, f, u, e0);
}

template <class S>
S elab(const Expr& e, const Context& c) {
  const EffectKind k = c.effect;
  const auto fl = flavor_for<S>(c);
  auto sub = [&](std::size_t i) { return elab<S>(e.args[i], c); };
  switch (e.op) {
  case Op::Id:
    if constexpr (std::is_same_v<S, TP>)
      return id_tp(k);
    else
      fail_at(e, std::string("`id` is type-preserving; not allowed in ") + position_name<S>() + " position");
  case Op::Fail: need_zero(e, c); return fail_s<S>(k);
  case Op::Skip: return skip(fl, k);
  case Op::Env:
    if constexpr (std::is_same_v<S, TU<Value>>) {
      if (!c.env) fail_at(e, "`env` used outside pass or environment propagation");
      return const_tu(k, *c.env);
    } else {
      fail_at(e, std::string("`env` is a value; not allowed in ") + position_name<S>() + " position");
    }
  case Op::Value:
    if constexpr (std::is_same_v<S, TU<Value>>) {
      Template t = value_template(e, c);
      std::optional<Value> env = c.env;
      return TU<Value>(k, [t, env, k](const Term&) { return eff_pure(k, instantiate(t, {}, env)); });
    } else {
      fail_at(e, std::string("a value is not allowed in ") + position_name<S>() + " position");
    }
  case Op::Rule: {
    auto r = rule_for<S>(e, e.text, c);
    if constexpr (std::is_same_v<S, TP>) {
      return adhoc(id_tp(k), mono_for<S>(r, c));
    } else {
      need_zero(e, c);
      return adhoc(fail_s<S>(k), mono_for<S>(r, c));
    }
  }
  case Op::Adhoc: {
    S s = sub(0);
    // Same-sort rules are tried in listed order.
    std::vector<std::string> sorts;
    std::map<std::string, std::vector<std::shared_ptr<const RuleDef>>> by_sort;
    for (auto& n : e.names) {
      auto r = rule_for<S>(e, n, c);
      if (!by_sort.count(r->sort)) sorts.push_back(r->sort);
      by_sort[r->sort].push_back(r);
    }
    using Out = typename S::result_type;
    for (auto& sort : sorts) {
      std::vector<MonoUpdate<Out>> monos;
      for (auto& r : by_sort[sort]) monos.push_back(mono_for<S>(r, c));
      if (monos.size() == 1) {
        s = adhoc(s, monos[0]);
        continue;
      }
      need_zero(e, c);
      MonoUpdate<Out> joined{TypeTag{sort}, [monos](const Term& t) {
                               Eff<Out> acc = monos[0].fn(t);
                               for (std::size_t i = 1; i < monos.size(); ++i)
                                 acc = eff_plus_lazy(std::move(acc), [&] { return monos[i].fn(t); });
                               return acc;
                             }};
      s = adhoc(s, joined);
    }
    return s;
  }
  case Op::Seq: return seq(elab<TP>(e.args[0], c), sub(1));
  case Op::Pass: {
    TU<Value> first = elab<TU<Value>>(e.args[0], c);
    elab<S>(e.args[1], c.with_env(Value(Unit{})));
    Expr second = e.args[1];
    return pass(first, [second, c](const Value& v) { return elab<S>(second, c.with_env(v)); });
  }
  case Op::Choice: need_zero(e, c); return choice(sub(0), sub(1));
  case Op::Comb: return comb(fl, sub(0), sub(1));
  case Op::All: return all(fl, sub(0));
  case Op::One: need_zero(e, c); return one(fl, sub(0));
  case Op::FullTd: return full_td(fl, sub(0));
  case Op::FullBu: return full_bu(fl, sub(0));
  case Op::OnceTd: need_zero(e, c); return once_td(fl, sub(0));
  case Op::OnceBu: need_zero(e, c); return once_bu(fl, sub(0));
  case Op::StopTd: need_zero(e, c); return stop_td(fl, sub(0));
  case Op::StopBu: need_zero(e, c); return stop_bu(fl, sub(0));
  case Op::FullTdpe:
  case Op::OnceTdpe: return elab_propagate<S>(e, c);
  case Op::Beloweq:
  case Op::Below:
  case Op::Aboveeq:
  case Op::Above: {
    need_zero(e, c);
    Predicate p = elab<Predicate>(e.args[0], c);
    S f = sub(1);
    if (e.op == Op::Beloweq) return beloweq(fl, p, f);
    if (e.op == Op::Below) return below(fl, p, f);
    if (e.op == Op::Aboveeq) return aboveeq(fl, p, f);
    return above(fl, p, f);
  }
  case Op::Belowlist:
  case Op::Abovelist: {
    need_zero(e, c);
    auto ps = preds(e.pre, c);
    S f = sub(0);
    return e.op == Op::Belowlist ? belowlist(fl, ps, f) : abovelist(fl, ps, f);
  }
  case Op::Prepost: {
    need_zero(e, c);
    auto pre = preds(e.pre, c);
    auto post = preds(e.post, c);
    return prepost(fl, sub(0), pre, post);
  }
  }
  fail_at(e, "unhandled strategy form");
}

} // namespace detail

/// Turns a syntax tree into an executable strategy of the requested flavor.
/// Throws DslError (unknown rule, flavor mismatch) or UnsupportedEffect.
/// The result keeps its own copies of `rules` and `sig`.
inline Executable elaborate(const Expr& e, const RuleBase& rules, const Signature& sig, Flavor flavor,
                            EffectKind effect, std::optional<Monoid<Value>> monoid = std::nullopt) {
  Context c;
  c.sig = std::make_shared<const Signature>(sig);
  c.rules = std::make_shared<const RuleBase>(rules);
  c.effect = effect;
  if (monoid) c.monoid = std::move(*monoid);
  if (flavor == Flavor::TP) return detail::elab<TP>(e, c);
  return detail::elab<TU<Value>>(e, c);
}

} // namespace strat::dsl
