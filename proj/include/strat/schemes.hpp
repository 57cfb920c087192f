#pragma once

// Recursive traversal schemes.  Every scheme is written once against a
// flavor: TPF (type-preserving) or TUF<A> (type-unifying, carrying the monoid
// that combines results).

#include <functional>
#include <utility>
#include <vector>

#include "strat/effects.hpp"
#include "strat/onelayer.hpp"
#include "strat/strategy.hpp"

namespace strat {

struct TPF {};

template <class A>
struct TUF {
  Monoid<A> monoid;
};

template <class F>
struct flavor_traits;

template <>
struct flavor_traits<TPF> {
  using strategy = TP;
};

template <class A>
struct flavor_traits<TUF<A>> {
  using strategy = TU<A>;
};

template <class F>
using strategy_t = typename flavor_traits<F>::strategy;

/// Predicates: success means true.
using Predicate = TU<Unit>;

inline Monoid<Unit> unit_monoid() {
  return {Unit{}, [](const Unit&, const Unit&) { return Unit{}; }};
}

inline TUF<Unit> predicate_flavor() { return {unit_monoid()}; }

// ---------------------------------------------------- overloaded one-layer

inline TP comb(const TPF&, const TP& l, const TP& r) { return seq(l, r); }

/// Runs both on the same term and combines, left result first.
template <class A>
TU<A> comb(const TUF<A>& fl, const TU<A>& l, const TU<A>& r) {
  require_same_kind(l.kind(), r.kind(), "comb");
  const Monoid<A>& m = fl.monoid;
  const EffectKind k = l.kind();
  return pass(l, [m, r, k](const A& a) {
    return pass(r, [m, a, k](const A& b) { return const_tu(k, m.combine(a, b)); });
  });
}

inline TP skip(const TPF&, EffectKind k) { return id_tp(k); }

template <class A>
TU<A> skip(const TUF<A>& fl, EffectKind k) {
  return const_tu(k, fl.monoid.empty);
}

inline TP all(const TPF&, const TP& s) { return all_tp(s); }

template <class A>
TU<A> all(const TUF<A>& fl, const TU<A>& s) {
  return all_tu(fl.monoid, s);
}

inline TP one(const TPF&, const TP& s) { return one_tp(s); }

template <class A>
TU<A> one(const TUF<A>&, const TU<A>& s) {
  return one_tu(s);
}

// ---------------------------------------------------- traverse

/// The general scheme: traverse(op, d, f) = op(f, d(traverse(op, d, f))).
/// `op` composes node processing with descent, `d` descends one layer.
template <Strategy S, class Op, class Descend>
S traverse(Op op, Descend d, S f) {
  const EffectKind k = f.kind();
  return op(f, d(delay<S>(k, [op, d, f] { return traverse(op, d, f); })));
}

namespace detail {

template <class F>
auto comb_op(F fl) {
  using S = strategy_t<F>;
  return [fl](const S& l, const S& r) { return comb(fl, l, r); };
}

template <class F>
auto comb_flip(F fl) {
  using S = strategy_t<F>;
  return [fl](const S& l, const S& r) { return comb(fl, r, l); };
}

template <class F>
auto choice_op(F) {
  using S = strategy_t<F>;
  return [](const S& l, const S& r) { return choice(l, r); };
}

template <class F>
auto choice_flip(F) {
  using S = strategy_t<F>;
  return [](const S& l, const S& r) { return choice(r, l); };
}

template <class F>
auto all_op(F fl) {
  using S = strategy_t<F>;
  return [fl](const S& s) { return all(fl, s); };
}

template <class F>
auto one_op(F fl) {
  using S = strategy_t<F>;
  return [fl](const S& s) { return one(fl, s); };
}

} // namespace detail

/// Every node, node before children.
template <class F>
strategy_t<F> full_td(const F& fl, const strategy_t<F>& f) {
  return traverse(detail::comb_op(fl), detail::all_op(fl), f);
}

/// Every node, children before node.
template <class F>
strategy_t<F> full_bu(const F& fl, const strategy_t<F>& f) {
  return traverse(detail::comb_flip(fl), detail::all_op(fl), f);
}

/// First preorder node where `f` succeeds (Partial).
template <class F>
strategy_t<F> once_td(const F& fl, const strategy_t<F>& f) {
  require_zero(f.kind(), "once_td");
  return traverse(detail::choice_op(fl), detail::one_op(fl), f);
}

/// First postorder node where `f` succeeds (Partial).
template <class F>
strategy_t<F> once_bu(const F& fl, const strategy_t<F>& f) {
  require_zero(f.kind(), "once_bu");
  return traverse(detail::choice_flip(fl), detail::one_op(fl), f);
}

/// Applies `f` top-down and does not descend below nodes where it succeeds.
template <class F>
strategy_t<F> stop_td(const F& fl, const strategy_t<F>& f) {
  require_zero(f.kind(), "stop_td");
  return traverse(detail::choice_op(fl), detail::all_op(fl), f);
}

/// Bottom-up dual of stop_td: all children first, `f` only if that fails.
template <class F>
strategy_t<F> stop_bu(const F& fl, const strategy_t<F>& f) {
  require_zero(f.kind(), "stop_bu");
  return traverse(detail::choice_flip(fl), detail::all_op(fl), f);
}

// ---------------------------------------------------- propagation

template <Strategy S, class Env>
using EnvStrategy = std::function<S(const Env&)>;

template <class Env>
using EnvUpdate = std::function<Eff<Env>(const Env&, const Term&)>;

/// Like traverse, but threads an environment downwards.  At a node reached
/// with environment e, node processing uses f(e) and the children are
/// visited with u(e, node), computed from the incoming node.
template <Strategy S, class Env, class Op, class Descend>
S propagate(EffectKind k, Op op, Descend d, EnvStrategy<S, Env> f, EnvUpdate<Env> u, Env e) {
  if (k == EffectKind::Nondet)
    throw UnsupportedEffect("environment propagation supports total and partial effects only");
  return S(k, [=](const Term& t) {
    return eff_bind(u(e, t), [&](const Env& inner) {
      S below = delay<S>(k, [=] { return propagate<S, Env>(k, op, d, f, u, inner); });
      S here = f(e);
      require_same_kind(k, here.kind(), "propagate");
      return op(here, d(below))(t);
    });
  });
}

template <class F, class Env>
strategy_t<F> full_tdpe(const F& fl, EffectKind k, EnvStrategy<strategy_t<F>, Env> f, EnvUpdate<Env> u,
                        Env e0) {
  return propagate<strategy_t<F>, Env>(k, detail::comb_op(fl), detail::all_op(fl), std::move(f),
                                       std::move(u), std::move(e0));
}

template <class F, class Env>
strategy_t<F> once_tdpe(const F& fl, EffectKind k, EnvStrategy<strategy_t<F>, Env> f, EnvUpdate<Env> u,
                        Env e0) {
  require_zero(k, "once_tdpe");
  return propagate<strategy_t<F>, Env>(k, detail::choice_op(fl), detail::one_op(fl), std::move(f),
                                       std::move(u), std::move(e0));
}

// ---------------------------------------------------- path schemes

/// `s` applied to the same term after predicate `p` succeeded on it.
template <Strategy S>
S guarded(const Predicate& p, const S& s) {
  require_same_kind(p.kind(), s.kind(), "guarded");
  return pass(p, [s](const Unit&) { return s; });
}

/// f-hit inside (or at) the first preorder node satisfying p.
template <class F>
strategy_t<F> beloweq(const F& fl, const Predicate& p, const strategy_t<F>& f) {
  return once_td(fl, guarded(p, once_td(fl, f)));
}

/// First node where f succeeds and p holds somewhere in its subtree.
template <class F>
strategy_t<F> aboveeq(const F& fl, const Predicate& p, const strategy_t<F>& f) {
  return once_td(fl, guarded(once_td(predicate_flavor(), p), f));
}

/// f-hit strictly inside a p-node.
template <class F>
strategy_t<F> below(const F& fl, const Predicate& p, const strategy_t<F>& f) {
  return once_td(fl, guarded(p, one(fl, once_td(fl, f))));
}

/// f-node with a p-witness strictly inside.
template <class F>
strategy_t<F> above(const F& fl, const Predicate& p, const strategy_t<F>& f) {
  const auto pf = predicate_flavor();
  return once_td(fl, guarded(one(pf, once_td(pf, p)), f));
}

/// f-hit below a strictly nested chain of nodes satisfying ps in order,
/// outermost first.
template <class F>
strategy_t<F> belowlist(const F& fl, const std::vector<Predicate>& ps, const strategy_t<F>& f,
                        std::size_t from = 0) {
  if (from == ps.size()) return once_td(fl, f);
  return once_td(fl, guarded(ps[from], one(fl, belowlist(fl, ps, f, from + 1))));
}

/// Succeeds at a node below which ps hold along a strictly descending chain.
inline Predicate below_chain(EffectKind k, const std::vector<Predicate>& ps, std::size_t from = 0) {
  if (from == ps.size()) return const_tu(k, Unit{});
  const auto pf = predicate_flavor();
  return one(pf, once_td(pf, guarded(ps[from], below_chain(k, ps, from + 1))));
}

/// First preorder f-node that has a descending ps chain beneath it.
template <class F>
strategy_t<F> abovelist(const F& fl, const std::vector<Predicate>& ps, const strategy_t<F>& f) {
  return once_td(fl, guarded(below_chain(f.kind(), ps), f));
}

/// belowlist over `pre`, with the hit additionally required to sit above a
/// `post` chain.
template <class F>
strategy_t<F> prepost(const F& fl, const strategy_t<F>& f, const std::vector<Predicate>& pre,
                      const std::vector<Predicate>& post) {
  return belowlist(fl, pre, guarded(below_chain(f.kind(), post), f));
}

} // namespace strat
