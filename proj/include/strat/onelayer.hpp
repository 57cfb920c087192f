#pragma once

// hfoldr, the fold over the immediate children of a constructor application,
// and the one-layer traversal combinators defined on top of it.

#include <functional>
#include <utility>
#include <vector>

#include "strat/effects.hpp"
#include "strat/strategy.hpp"
#include "strat/term.hpp"

namespace strat {

/// The bare head of a node: a constructor without its children, or a leaf.
struct NodeHead {
  DeclPtr decl; // null for leaves
  PrimValue value;

  static NodeHead of(const Term& t) {
    if (t.is_prim()) return {nullptr, t.value()};
    return {t.decl(), Unit{}};
  }

  bool is_leaf() const { return decl == nullptr; }
};

/// Applies a head to children.  Sort-checked like rebuild.
inline Term apply_head(const NodeHead& h, std::vector<Term> kids) {
  if (h.is_leaf()) {
    if (!kids.empty())
      throw SortError(SortError::Kind::ArityMismatch, {}, "leaf takes no children");
    return Term::prim(h.value);
  }
  return Term::app(h.decl, std::move(kids));
}

/// Fold ingredients: `step` for one child against the accumulated tail,
/// `base` for the empty constructor application.
template <class R>
struct FoldAlgebra {
  std::function<Eff<R>(const Term& child, const R& acc)> step;
  std::function<Eff<R>(const NodeHead& head)> base;
};

/// Right-associative fold over the children c_0..c_{k-1}:
///   step(c_{k-1}, step(c_{k-2}, ... step(c_0, base(head)) ...))
/// Effects run innermost first, so the leftmost child is processed first.
template <class R>
Eff<R> hfoldr(const FoldAlgebra<R>& alg, const Term& t) {
  Eff<R> acc = alg.base(NodeHead::of(t));
  for (const Term& c : t.children())
    acc = eff_bind(acc, [&](const R& r) { return alg.step(c, r); });
  return acc;
}

namespace detail {

template <class T>
std::vector<T> snoc(std::vector<T> xs, T x) {
  xs.push_back(std::move(x));
  return xs;
}

} // namespace detail

/// Processes every child with `s` and keeps the constructor.  Fails if `s`
/// fails on any child; leaves succeed unchanged.
inline TP all_tp(const TP& s) {
  const EffectKind k = s.kind();
  return TP(k, [s, k](const Term& t) {
    FoldAlgebra<std::vector<Term>> alg{
        [&](const Term& c, const std::vector<Term>& done) {
          return eff_map(s(c), [&](const Term& c2) { return detail::snoc(done, c2); });
        },
        [k](const NodeHead&) { return eff_pure(k, std::vector<Term>{}); }};
    NodeHead head = NodeHead::of(t);
    return eff_map(hfoldr(alg, t), [&](const std::vector<Term>& kids) { return apply_head(head, kids); });
  });
}

/// Replaces the leftmost child on which `s` succeeds (Partial), or yields one
/// variant per child result in child order (Nondet).  Fails on leaves.
///
/// The fold is paramorphic: the accumulator pairs the untouched prefix with
/// the prefix in which one child has already been processed.
inline TP one_tp(const TP& s) {
  const EffectKind k = s.kind();
  require_zero(k, "one");
  struct Acc {
    std::vector<Term> original;
    Eff<std::vector<Term>> changed;
  };
  return TP(k, [s, k](const Term& t) {
    FoldAlgebra<Acc> alg{
        [&](const Term& c, const Acc& acc) {
          auto changed = eff_plus_lazy(
              eff_map(acc.changed, [&](const std::vector<Term>& pre) { return detail::snoc(pre, c); }),
              [&] {
                return eff_map(s(c), [&](const Term& c2) { return detail::snoc(acc.original, c2); });
              });
          return eff_pure(k, Acc{detail::snoc(acc.original, c), std::move(changed)});
        },
        [k](const NodeHead&) { return eff_pure(k, Acc{{}, eff_zero<std::vector<Term>>(k)}); }};
    NodeHead head = NodeHead::of(t);
    return eff_bind(hfoldr(alg, t), [&](const Acc& acc) {
      return eff_map(acc.changed, [&](const std::vector<Term>& kids) { return apply_head(head, kids); });
    });
  });
}

/// Combines the results of `s` on all children left to right; `m.empty` on
/// leaves.  Fails if `s` fails on any child.
template <class A>
TU<A> all_tu(const Monoid<A>& m, const TU<A>& s) {
  const EffectKind k = s.kind();
  return TU<A>(k, [m, s, k](const Term& t) {
    FoldAlgebra<A> alg{
        [&](const Term& c, const A& acc) {
          return eff_map(s(c), [&](const A& a) { return m.combine(acc, a); });
        },
        [&](const NodeHead&) { return eff_pure(k, m.empty); }};
    return hfoldr(alg, t);
  });
}

/// Result of `s` on the leftmost child where it succeeds (Partial), or all
/// children's results concatenated (Nondet).  Fails on leaves.
template <class A>
TU<A> one_tu(const TU<A>& s) {
  const EffectKind k = s.kind();
  require_zero(k, "one");
  struct Acc {
    Eff<A> found;
  };
  return TU<A>(k, [s, k](const Term& t) {
    FoldAlgebra<Acc> alg{
        [&](const Term& c, const Acc& acc) {
          return eff_pure(k, Acc{eff_plus_lazy(acc.found, [&] { return s(c); })});
        },
        [k](const NodeHead&) { return eff_pure(k, Acc{eff_zero<A>(k)}); }};
    return eff_bind(hfoldr(alg, t), [](const Acc& acc) { return acc.found; });
  });
}

} // namespace strat
