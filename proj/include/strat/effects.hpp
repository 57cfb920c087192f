#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strat/error.hpp"
#include "strat/value.hpp"

namespace strat {

/// Effect discipline of a computation.
///   Total   - exactly one result (identity monad)
///   Partial - zero or one result; failure is a value (Maybe)
///   Nondet  - ordered list of results (List)
enum class EffectKind { Total, Partial, Nondet };

inline std::string_view to_string(EffectKind k) {
  switch (k) {
  case EffectKind::Total: return "total";
  case EffectKind::Partial: return "partial";
  case EffectKind::Nondet: return "nondet";
  }
  return "?";
}

inline bool has_zero(EffectKind k) { return k != EffectKind::Total; }

inline void require_zero(EffectKind k, std::string_view who) {
  if (!has_zero(k))
    throw UnsupportedEffect(std::string(who) + " needs failure, unavailable under total effect");
}

inline void require_same_kind(EffectKind a, EffectKind b, std::string_view who) {
  if (a != b)
    throw EffectMismatch(std::string(who) + ": mixing " + std::string(to_string(a)) + " and " +
                         std::string(to_string(b)) + " strategies");
}

/// Effectful result.  Results are materialized eagerly; the vector holds
/// exactly one element for Total, at most one for Partial.
template <class A>
class Eff {
public:
  using value_type = A;

  static Eff pure(EffectKind k, A a) {
    Eff e(k);
    e.results_.push_back(std::move(a));
    return e;
  }

  static Eff zero(EffectKind k) {
    require_zero(k, "zero");
    return Eff(k);
  }

  static Eff many(EffectKind k, std::vector<A> xs) {
    if ((k == EffectKind::Total && xs.size() != 1) || (k == EffectKind::Partial && xs.size() > 1))
      throw EffectMismatch("result count does not fit effect kind " + std::string(to_string(k)));
    Eff e(k);
    e.results_ = std::move(xs);
    return e;
  }

  EffectKind kind() const { return kind_; }
  bool failed() const { return results_.empty(); }
  bool succeeded() const { return !results_.empty(); }
  const std::vector<A>& results() const& { return results_; }
  std::vector<A> results() && { return std::move(results_); }

  /// First result; precondition: succeeded().
  const A& value() const& {
    if (results_.empty()) throw Error("Eff::value on failed computation");
    return results_.front();
  }

  friend bool operator==(const Eff& a, const Eff& b) {
    return a.kind_ == b.kind_ && a.results_ == b.results_;
  }

private:
  explicit Eff(EffectKind k) : kind_(k) {}

  EffectKind kind_;
  std::vector<A> results_;
};

template <class A>
Eff<A> eff_pure(EffectKind k, A a) {
  return Eff<A>::pure(k, std::move(a));
}

template <class A>
Eff<A> eff_zero(EffectKind k) {
  return Eff<A>::zero(k);
}

/// Monadic bind.  Nondet concatenates the continuation's results in order.
template <class A, class K>
auto eff_bind(const Eff<A>& e, K&& k) -> decltype(k(std::declval<const A&>())) {
  using R = decltype(k(std::declval<const A&>()));
  using B = typename R::value_type;
  const EffectKind kind = e.kind();
  if (kind != EffectKind::Nondet) {
    if (e.failed()) return R::zero(kind);
    R r = k(e.value());
    require_same_kind(kind, r.kind(), "bind");
    return r;
  }
  std::vector<B> out;
  for (const auto& a : e.results()) {
    R r = k(a);
    require_same_kind(kind, r.kind(), "bind");
    for (auto& b : std::move(r).results()) out.push_back(std::move(b));
  }
  return R::many(kind, std::move(out));
}

/// Functor map, a bind into pure.
template <class A, class F>
auto eff_map(const Eff<A>& e, F&& f) {
  using B = std::decay_t<decltype(f(std::declval<const A&>()))>;
  return eff_bind(e, [&](const A& a) { return Eff<B>::pure(e.kind(), f(a)); });
}

/// Plus with a lazily computed right operand.  Partial is left-biased and
/// never evaluates `r` after a success; Nondet concatenates.
template <class A, class Thunk>
Eff<A> eff_plus_lazy(Eff<A> l, Thunk&& r) {
  require_zero(l.kind(), "plus");
  if (l.kind() == EffectKind::Partial && l.succeeded()) return l;
  Eff<A> rv = r();
  require_same_kind(l.kind(), rv.kind(), "plus");
  if (l.kind() == EffectKind::Partial) return rv;
  std::vector<A> out = std::move(l).results();
  for (auto& x : std::move(rv).results()) out.push_back(std::move(x));
  return Eff<A>::many(EffectKind::Nondet, std::move(out));
}

template <class A>
Eff<A> eff_plus(Eff<A> l, Eff<A> r) {
  return eff_plus_lazy(std::move(l), [&] { return std::move(r); });
}

// ------------------------------------------------------------------ monoids

template <class A>
struct Monoid {
  A empty;
  std::function<A(const A&, const A&)> combine;
};

/// Named monoids over dynamic values: unit, int_sum, list_concat, str_concat.
inline Monoid<Value> monoid_registry(std::string_view name) {
  if (name == "unit") return {Value(Unit{}), [](const Value&, const Value&) { return Value(Unit{}); }};
  if (name == "int_sum")
    return {Value(std::int64_t{0}),
            [](const Value& a, const Value& b) { return Value(a.as_int() + b.as_int()); }};
  if (name == "list_concat")
    return {Value(Value::List{}), [](const Value& a, const Value& b) {
              Value::List out = a.as_list();
              const auto& r = b.as_list();
              out.insert(out.end(), r.begin(), r.end());
              return Value(std::move(out));
            }};
  if (name == "str_concat")
    return {Value(std::string{}),
            [](const Value& a, const Value& b) { return Value(a.as_str() + b.as_str()); }};
  throw Error("unknown monoid `" + std::string(name) + "`");
}

inline const std::vector<std::string>& monoid_names() {
  static const std::vector<std::string> names{"unit", "int_sum", "list_concat", "str_concat"};
  return names;
}

} // namespace strat
