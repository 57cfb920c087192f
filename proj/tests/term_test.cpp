#include <gtest/gtest.h>

#include "strat_fixtures.hpp"
#include "support/random_terms.hpp"

using namespace strat;
using namespace testing_support;

namespace {

const Signature& sig() { return test_signature(); }

Term lit(std::int64_t n) { return Term::app(decl("Lit"), {Term::integer(n)}); }
Term add(Term a, Term b) { return Term::app(decl("Add"), {std::move(a), std::move(b)}); }

SortError sort_error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SortError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a SortError";
  return SortError(SortError::Kind::SortMismatch, {}, "none");
}

} // namespace

TEST(Term, ParsesConstructorApplications) {
  Term t = parse_term("(Add (Lit 1) (Lit 2))", sig());
  EXPECT_EQ(t, add(lit(1), lit(2)));
  EXPECT_EQ(t.constructor(), "Add");
  EXPECT_EQ(t.children().size(), 2u);
}

TEST(Term, ParseRejectsIllSortedTerms) {
  auto e = sort_error_of([] { parse_term("(Lit true)", sig()); });
  EXPECT_EQ(e.kind(), SortError::Kind::SortMismatch);
  EXPECT_EQ(e.path(), Path{0});
  EXPECT_THROW(parse_term("(Add (Lit 1)", sig()), ParseError);
  EXPECT_THROW(parse_term("(Lit 1) (Lit 2)", sig()), ParseError);
  EXPECT_EQ(sort_error_of([] { parse_term("(Mul)", sig()); }).kind(), SortError::Kind::UnknownConstructor);
}

TEST(Term, PrintsCanonicalText) {
  EXPECT_EQ(print_term(lit(1)), "(Lit 1)");
  EXPECT_EQ(print_term(Term::unit()), "unit");
  EXPECT_EQ(print_term(Term::boolean(false)), "false");
  EXPECT_EQ(print_term(Term::string("a\"b\\c")), "\"a\\\"b\\\\c\"");
  EXPECT_EQ(print_term(Term::app(decl("Skip"), {})), "(Skip)");
  EXPECT_EQ(print_term(parse_term("(Seq   Skip\n (Skip))", sig())), "(Seq (Skip) (Skip))");
  EXPECT_EQ(print_term(parse_term("(Var \"x\\\"y\")", sig())), "(Var \"x\\\"y\")");
}

TEST(Term, RunningExampleFixtureParses) {
  Signature running = load_signature(strat::fixtures::running_sig);
  Term t1 = parse_term(strat::fixtures::term1_term, running);
  EXPECT_EQ(t1.sort(), "SortA");
  EXPECT_EQ(print_term(t1),
            "(A2 (A1 (B 7 (A0))) (A1 (B 1 (A2 (A1 (B 5 (A0))) (A1 (B 3 (A1 (B 42 (A0)))))))))");
  Term b = t1.children()[0].children()[0];
  EXPECT_EQ(sort_of(b).sort, "SortB");
}

TEST(Term, ChildrenInDeclaredOrder) {
  Term t = add(lit(1), lit(2));
  auto kids = children(t);
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids[0], lit(1));
  EXPECT_EQ(kids[1], lit(2));
  EXPECT_EQ(children(lit(7)), std::vector<Term>{Term::integer(7)});
  EXPECT_TRUE(children(Term::boolean(true)).empty());
  EXPECT_TRUE(children(Term::app(decl("Skip"), {})).empty());
}

TEST(Term, RebuildChecksArityAndSorts) {
  Term t = add(lit(1), lit(2));
  EXPECT_EQ(rebuild(t, {lit(3), lit(4)}), add(lit(3), lit(4)));

  auto arity = sort_error_of([&] { rebuild(t, {lit(3)}); });
  EXPECT_EQ(arity.kind(), SortError::Kind::ArityMismatch);

  auto mismatch = sort_error_of([&] { rebuild(t, {lit(3), Term::boolean(true)}); });
  EXPECT_EQ(mismatch.kind(), SortError::Kind::SortMismatch);
  EXPECT_EQ(mismatch.path(), Path{1});
}

TEST(Term, SortOf) {
  EXPECT_EQ(sort_of(lit(1)).sort, "Expr");
  EXPECT_EQ(sort_of(Term::integer(42)).sort, "Int");
  EXPECT_EQ(sort_of(Term::string("s")).sort, "Str");
  EXPECT_EQ(sort_of(Term::unit()).sort, "Unit");
  EXPECT_EQ(TypeTag{"Expr"}, TypeTag{"Expr"});
}

TEST(Term, StructuralEquality) {
  EXPECT_EQ(add(lit(1), lit(2)), parse_term("(Add (Lit 1) (Lit 2))", sig()));
  EXPECT_NE(add(lit(1), lit(2)), add(lit(2), lit(1)));
  EXPECT_NE(Term::integer(1), Term::boolean(true));
  EXPECT_NE(Term::string("1"), Term::integer(1));
}

TEST(TermProperty, PrintParseRoundTripOnRandomTerms) {
  TermGen g(1);
  for (int i = 0; i < 1000; ++i) {
    Term t = g.any();
    std::string text = print_term(t);
    Term back = parse_term(text, sig());
    ASSERT_EQ(back, t) << text;
    ASSERT_EQ(print_term(back), text);
  }
}

TEST(TermProperty, RebuildWithOwnChildrenIsIdentity) {
  TermGen g(2);
  for (int i = 0; i < 1000; ++i) {
    Term t = g.any();
    for (const auto& p : preorder_positions(t)) {
      Term u = subterm_at(t, p);
      Term r = rebuild(u, children(u));
      ASSERT_EQ(r, u);
      ASSERT_FALSE(check_term(sig(), r).has_value());
    }
  }
}

TEST(TermProperty, GeneratorRespectsLimits) {
  TermGen g(3);
  for (int i = 0; i < 1000; ++i) {
    Term t = g.any();
    ASSERT_LE(depth_of(t), 6u);
    ASSERT_LE(size_of(t), 200u);
    ASSERT_FALSE(check_term(sig(), t).has_value());
  }
}

TEST(Term, DeepTermsBuildPrintAndDestroy) {
  // 200k nested negations: construction, printing, parsing and destruction
  // must not exhaust the stack.
  const int depth = 200000;
  Term t = lit(0);
  for (int i = 0; i < depth; ++i) t = Term::app(decl("Neg"), {t});
  std::string text = with_stack(default_stack_bytes, [&] { return print_term(t); });
  EXPECT_EQ(text.size(), depth * std::string("(Neg ").size() + std::string("(Lit 0)").size() + depth);
  Term back = with_stack(default_stack_bytes, [&] { return parse_term(text, sig()); });
  EXPECT_TRUE(with_stack(default_stack_bytes, [&] { return back == t; }));
}
