#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strat/error.hpp"
#include "strat/sexpr.hpp"
#include "strat/signature.hpp"

namespace strat {

/// Nominal type of a term: its sort name.
struct TypeTag {
  std::string sort;
  friend bool operator==(const TypeTag&, const TypeTag&) = default;
};

namespace detail {
struct TermNode;
}

/// Immutable, well-sorted term.  Either a leaf carrying a primitive value or
/// a constructor application with children in declared argument order.
/// Copies share structure.
class Term {
public:
  Term() = delete;

  static Term prim(PrimValue v);
  static Term integer(std::int64_t v) { return prim(PrimValue{v}); }
  static Term boolean(bool v) { return prim(PrimValue{v}); }
  static Term string(std::string v) { return prim(PrimValue{std::move(v)}); }
  static Term unit() { return prim(PrimValue{Unit{}}); }

  /// Checked construction: throws SortError on arity or sort mismatch.
  static Term app(DeclPtr decl, std::vector<Term> kids);

  bool is_prim() const;
  bool is_app() const { return !is_prim(); }
  const std::string& sort() const;

  const PrimValue& value() const;
  /// Constructor of an application; null for leaves.
  const DeclPtr& decl() const;
  const std::string& constructor() const { return decl()->name; }
  std::span<const Term> children() const;

  bool same_node(const Term& o) const { return node_ == o.node_; }

  friend bool operator==(const Term& a, const Term& b);

private:
  friend struct detail::TermNode;
  explicit Term(std::shared_ptr<detail::TermNode> n) : node_(std::move(n)) {}
  static Term unchecked_app(DeclPtr decl, std::vector<Term> kids);
  friend Term from_checked_raw(const Signature&, const RawTerm&);

  std::shared_ptr<detail::TermNode> node_;
};

namespace detail {

struct TermNode {
  DeclPtr decl; // null for leaves
  PrimValue value;
  std::vector<Term> kids;

  TermNode(DeclPtr d, PrimValue v, std::vector<Term> k)
      : decl(std::move(d)), value(std::move(v)), kids(std::move(k)) {}

  TermNode(const TermNode&) = delete;
  TermNode& operator=(const TermNode&) = delete;

  // Releases uniquely owned descendants iteratively.
  ~TermNode() {
    if (kids.empty()) return;
    std::vector<std::shared_ptr<TermNode>> pending;
    auto steal = [&](std::vector<Term>& ks) {
      for (auto& k : ks)
        if (k.node_ && k.node_.use_count() == 1) pending.push_back(std::move(k.node_));
      ks.clear();
    };
    steal(kids);
    while (!pending.empty()) {
      auto n = std::move(pending.back());
      pending.pop_back();
      steal(n->kids);
    }
  }
};

} // namespace detail

inline Term Term::prim(PrimValue v) {
  return Term(std::make_shared<detail::TermNode>(nullptr, std::move(v), std::vector<Term>{}));
}

inline Term Term::unchecked_app(DeclPtr decl, std::vector<Term> kids) {
  return Term(std::make_shared<detail::TermNode>(std::move(decl), PrimValue{Unit{}}, std::move(kids)));
}

inline Term Term::app(DeclPtr decl, std::vector<Term> kids) {
  if (!decl) throw Error("Term::app: null constructor");
  if (kids.size() != decl->arity())
    throw SortError(SortError::Kind::ArityMismatch, {},
                    "`" + decl->name + "` expects " + std::to_string(decl->arity()) +
                        " children, got " + std::to_string(kids.size()));
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (kids[i].sort() != decl->args[i])
      throw SortError(SortError::Kind::SortMismatch, {i},
                      "expected " + decl->args[i] + " got " + kids[i].sort());
  return unchecked_app(std::move(decl), std::move(kids));
}

inline bool Term::is_prim() const { return node_->decl == nullptr; }

inline const std::string& Term::sort() const {
  return node_->decl ? node_->decl->result : prim_sort(node_->value);
}

inline const PrimValue& Term::value() const {
  if (!is_prim()) throw Error("Term::value on constructor application");
  return node_->value;
}

inline const DeclPtr& Term::decl() const { return node_->decl; }

inline std::span<const Term> Term::children() const { return node_->kids; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (!x.decl || !y.decl) return !x.decl && !y.decl && x.value == y.value;
  if (x.decl != y.decl && *x.decl != *y.decl) return false;
  if (x.kids.size() != y.kids.size()) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!(x.kids[i] == y.kids[i])) return false;
  return true;
}

inline TypeTag sort_of(const Term& t) { return TypeTag{t.sort()}; }

/// Immediate children, leftmost first.  Empty for leaves and nullary nodes.
inline std::vector<Term> children(const Term& t) {
  auto ks = t.children();
  return {ks.begin(), ks.end()};
}

/// Same head as `t` over new children.  The result exists only if it is
/// well-sorted; otherwise SortError (path = offending child index).
inline Term rebuild(const Term& t, std::vector<Term> kids) {
  if (t.is_prim()) {
    if (!kids.empty())
      throw SortError(SortError::Kind::ArityMismatch, {},
                      "leaf of sort " + t.sort() + " takes no children");
    return t;
  }
  return Term::app(t.decl(), std::move(kids));
}

// ---------------------------------------------------------------- text format

inline RawTerm to_raw(const Term& t) {
  RawTerm r;
  if (t.is_prim()) {
    r.prim = t.value();
    return r;
  }
  r.con = t.constructor();
  for (auto& k : t.children()) r.kids.push_back(to_raw(k));
  return r;
}

/// Re-verifies `t` against `sig` (terms built for another signature may not
/// conform).
inline std::optional<SortError> check_term(const Signature& sig, const Term& t) {
  return check_term(sig, to_raw(t));
}

inline RawTerm raw_from_sexpr(const sexpr::Node& n) {
  using K = sexpr::Node::Kind;
  RawTerm r;
  switch (n.kind) {
  case K::Int: r.prim = PrimValue{n.integer}; return r;
  case K::String: r.prim = PrimValue{n.text}; return r;
  case K::Symbol:
    if (n.text == "true") r.prim = PrimValue{true};
    else if (n.text == "false") r.prim = PrimValue{false};
    else if (n.text == "unit") r.prim = PrimValue{Unit{}};
    else if (is_identifier(n.text)) r.con = n.text; // nullary shorthand
    else n.fail("expected a term, got `" + n.text + "`");
    return r;
  case K::List:
    if (n.items.empty() || !n.items[0].is_symbol() || !is_identifier(n.items[0].text) ||
        n.items[0].text == "true" || n.items[0].text == "false" || n.items[0].text == "unit")
      n.fail("expected (Constructor child ...)");
    r.con = n.items[0].text;
    for (std::size_t i = 1; i < n.items.size(); ++i) r.kids.push_back(raw_from_sexpr(n.items[i]));
    return r;
  }
  return r;
}

/// Converts a raw term that already passed check_term.
inline Term from_checked_raw(const Signature& sig, const RawTerm& r) {
  if (r.prim) return Term::prim(*r.prim);
  std::vector<Term> kids;
  kids.reserve(r.kids.size());
  for (auto& k : r.kids) kids.push_back(from_checked_raw(sig, k));
  return Term::unchecked_app(sig.find(r.con), std::move(kids));
}

inline Term term_from_sexpr(const sexpr::Node& n, const Signature& sig) {
  RawTerm raw = raw_from_sexpr(n);
  if (auto err = check_term(sig, raw)) throw *err;
  return from_checked_raw(sig, raw);
}

inline Term parse_term(std::string_view text, const Signature& sig) {
  return term_from_sexpr(sexpr::read_one(text), sig);
}

namespace detail {
inline void print_to(std::string& out, const Term& t) {
  if (t.is_prim()) {
    out += print_prim(t.value());
    return;
  }
  out += '(';
  out += t.constructor();
  for (auto& k : t.children()) {
    out += ' ';
    print_to(out, k);
  }
  out += ')';
}
} // namespace detail

/// Canonical s-expression: single spaces, nullary applications as `(C)`.
inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_to(out, t);
  return out;
}

} // namespace strat
