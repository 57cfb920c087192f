#pragma once

// First-class strategies and their parametric combinators plus type-based
// dispatch (adhoc).
//
// A strategy is a function from any term to an effectful result.  Its effect
// kind is fixed when the strategy is built; combining strategies of different
// kinds throws EffectMismatch at construction time.

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "strat/effects.hpp"
#include "strat/term.hpp"

namespace strat {

/// Type-preserving strategy: every successful result has the input's sort.
class TP {
public:
  using Fn = std::function<Eff<Term>(const Term&)>;
  using result_type = Term;

  TP(EffectKind kind, Fn fn) : kind_(kind), fn_(std::move(fn)) {}

  EffectKind kind() const { return kind_; }

  /// Applies the strategy, then certifies sort preservation of each result.
  Eff<Term> operator()(const Term& t) const {
    Eff<Term> r = fn_(t);
    require_same_kind(kind_, r.kind(), "TP application");
    for (const auto& out : r.results())
      if (out.sort() != t.sort()) throw SortViolation(t.sort(), t.sort(), out.sort());
    return r;
  }

private:
  EffectKind kind_;
  Fn fn_;
};

/// Type-unifying strategy: maps terms of every sort to a fixed type A.
template <class A>
class TU {
public:
  using Fn = std::function<Eff<A>(const Term&)>;
  using result_type = A;

  TU(EffectKind kind, Fn fn) : kind_(kind), fn_(std::move(fn)) {}

  EffectKind kind() const { return kind_; }

  Eff<A> operator()(const Term& t) const {
    Eff<A> r = fn_(t);
    require_same_kind(kind_, r.kind(), "TU application");
    return r;
  }

private:
  EffectKind kind_;
  Fn fn_;
};

template <class S>
struct is_tu : std::false_type {};
template <class A>
struct is_tu<TU<A>> : std::true_type {};

template <class S>
concept Strategy = std::same_as<S, TP> || is_tu<S>::value;

/// Monomorphic update for one sort.  `fn` only ever sees terms of that sort.
template <class Out>
struct MonoUpdate {
  TypeTag tag;
  std::function<Eff<Out>(const Term&)> fn;
};

using MonoTP = MonoUpdate<Term>;
template <class A>
using MonoTU = MonoUpdate<A>;

// ------------------------------------------------------------- nullary

inline TP id_tp(EffectKind k) {
  return TP(k, [k](const Term& t) { return eff_pure(k, t); });
}

template <class A>
TU<A> const_tu(EffectKind k, A a) {
  return TU<A>(k, [k, a = std::move(a)](const Term&) { return eff_pure(k, a); });
}

/// Always-failing strategy of either flavor.
template <Strategy S>
S fail_s(EffectKind k) {
  require_zero(k, "fail");
  using R = typename S::result_type;
  return S(k, [k](const Term&) { return eff_zero<R>(k); });
}

inline TP fail_tp(EffectKind k) { return fail_s<TP>(k); }
template <class A>
TU<A> fail_tu(EffectKind k) {
  return fail_s<TU<A>>(k);
}

/// Strategy that builds its body on each application.  Used to tie
/// recursive knots without constructing an infinite combinator tree.
template <Strategy S, class Thunk>
S delay(EffectKind k, Thunk thunk) {
  return S(k, [thunk = std::move(thunk)](const Term& t) { return thunk()(t); });
}

// ------------------------------------------------------------- binary

/// Sequential composition: `second` receives the term `first` produced.
template <Strategy S>
S seq(const TP& first, const S& second) {
  require_same_kind(first.kind(), second.kind(), "seq");
  return S(first.kind(), [first, second](const Term& t) {
    return eff_bind(first(t), [&](const Term& u) { return second(u); });
  });
}

/// Both strategies see the same term; `second` is chosen by the value the
/// first one produced.
template <class A, class K>
auto pass(const TU<A>& first, K second) -> decltype(second(std::declval<const A&>())) {
  using S = decltype(second(std::declval<const A&>()));
  const EffectKind k = first.kind();
  return S(k, [first, second = std::move(second), k](const Term& t) {
    return eff_bind(first(t), [&](const A& a) {
      S s = second(a);
      require_same_kind(k, s.kind(), "pass");
      return s(t);
    });
  });
}

/// Alternative composition via plus.  Under Partial, `r` runs only when `l`
/// fails.
template <Strategy S>
S choice(const S& l, const S& r) {
  require_same_kind(l.kind(), r.kind(), "choice");
  require_zero(l.kind(), "choice");
  return S(l.kind(), [l, r](const Term& t) { return eff_plus_lazy(l(t), [&] { return r(t); }); });
}

// ------------------------------------------------------------- adhoc

/// Type-based dispatch: `mono` on terms of its sort, `poly` elsewhere.
/// A result of another sort raises SortViolation naming the tag.
inline TP adhoc_tp(const TP& poly, MonoTP mono) {
  const EffectKind k = poly.kind();
  return TP(k, [poly, mono = std::move(mono), k](const Term& t) {
    if (t.sort() != mono.tag.sort) return poly(t);
    Eff<Term> r = mono.fn(t);
    require_same_kind(k, r.kind(), "adhoc");
    for (const auto& out : r.results())
      if (out.sort() != mono.tag.sort) throw SortViolation(mono.tag.sort, mono.tag.sort, out.sort());
    return r;
  });
}

template <class A>
TU<A> adhoc_tu(const TU<A>& poly, MonoTU<A> mono) {
  const EffectKind k = poly.kind();
  return TU<A>(k, [poly, mono = std::move(mono), k](const Term& t) {
    if (t.sort() != mono.tag.sort) return poly(t);
    Eff<A> r = mono.fn(t);
    require_same_kind(k, r.kind(), "adhoc");
    return r;
  });
}

template <Strategy S>
S adhoc(const S& poly, MonoUpdate<typename S::result_type> mono) {
  if constexpr (std::is_same_v<S, TP>)
    return adhoc_tp(poly, std::move(mono));
  else
    return adhoc_tu(poly, std::move(mono));
}

} // namespace strat
