#include <gtest/gtest.h>

#include "strat_fixtures.hpp"
#include "support/random_terms.hpp"

using namespace strat;
using namespace testing_support;

namespace {

constexpr auto P = EffectKind::Partial;
constexpr auto T = EffectKind::Total;

const Signature& sig() { return test_signature(); }

Term lit(std::int64_t n) { return Term::app(decl("Lit"), {Term::integer(n)}); }
Term add(Term a, Term b) { return Term::app(decl("Add"), {std::move(a), std::move(b)}); }

RuleDef rule(const std::string& text) { return parse_rule(sexpr::read_one(text), sig()); }

std::string load_error(const std::string& text) {
  try {
    load_rules(text, sig());
  } catch (const Error& e) {
    return e.what();
  }
  return "no error";
}

Pattern pattern_of(const std::string& sort, const std::string& text) {
  return rule("(rule r " + sort + " (lhs " + text + ") (rhs 0) (kind extract))").lhs;
}

Template template_of(const std::string& sort, const std::string& lhs, const std::string& rhs) {
  return rule("(rule r " + sort + " (lhs " + lhs + ") (rhs " + rhs + ") (kind extract))").rhs;
}

} // namespace

TEST(Rules, MatchExamples) {
  auto b = match(pattern_of("Expr", "(Add ?x ?y)"), add(lit(1), lit(2)));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->at("x"), lit(1));
  EXPECT_EQ(b->at("y"), lit(2));
  EXPECT_FALSE(match(pattern_of("Expr", "(Lit 1)"), lit(2)));
  EXPECT_TRUE(match(pattern_of("Expr", "(Lit 1)"), lit(1)));
  auto w = match(pattern_of("Expr", "_"), add(lit(1), lit(2)));
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->empty());
  EXPECT_FALSE(match(pattern_of("Expr", "(Add (Lit 1) _)"), add(lit(2), lit(2))));
}

TEST(Rules, InstantiateExamples) {
  Bindings b{{"x", lit(1)}, {"y", lit(2)}};
  EXPECT_EQ(instantiate(template_of("Expr", "(Add ?x ?y)", "(Add ?y ?x)"), b), Value(add(lit(2), lit(1))));
  Template neg = rule("(rule r Bool (lhs ?x) (rhs (neg ?x)) (kind transform))").rhs;
  EXPECT_EQ(instantiate(neg, {{"x", Term::boolean(true)}}), Value(false));
  Template inc = rule("(rule r Int (lhs ?x) (rhs (+ ?x 1)) (kind transform))").rhs;
  EXPECT_EQ(instantiate(inc, {{"x", Term::integer(41)}}), Value(42));
  Template ops = template_of("Expr", "(Lit ?n)", "(list (- ?n 1) (< ?n 3) (= ?n 2) (neg ?n))");
  EXPECT_EQ(print_value(instantiate(ops, {{"n", Term::integer(2)}})), "[1, true, true, -2]");
  Template env = template_of("Expr", "_", "(list ?env)");
  EXPECT_EQ(instantiate(env, {}, Value(3)), int_list({3}));
  EXPECT_THROW(instantiate(env, {}), RuleError);
}

TEST(Rules, LoadValidatesStatically) {
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?n)) (rhs ?n) (kind transform))").find("transform must preserve sort"),
            std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?n)) (rhs ?m) (kind extract))").find("not bound"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Add ?x ?x)) (rhs 0) (kind extract))").find("non-linear"),
            std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Skip)) (rhs 0) (kind extract))").find("has sort Stmt"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Add ?x)) (rhs 0) (kind extract))").find("arity"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?n)) (rhs (= ?n 1)) (kind predicate)) "
                       "(rule r Expr (lhs _) (rhs true) (kind predicate))")
                .find("duplicate rule"),
            std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?n)) (rhs ?n) (kind predicate))").find("must be Bool"),
            std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?n)) (rhs ?n) (guard ?n) (kind extract))").find("guard must be Bool"),
            std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?n)) (rhs (+ ?n true)) (kind extract))").find("expects Int"),
            std::string::npos);
  EXPECT_NE(load_error("(rule r Nope (lhs _) (rhs 0) (kind extract))").find("unknown sort"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs _) (rhs 0) (kind rewrite))").find("kind must be"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs _) (rhs 0) (guard true))").find("needs lhs, rhs and kind"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit ?env)) (rhs 0) (kind extract))").find("reserved"), std::string::npos);
  EXPECT_NE(load_error("(rule r Expr (lhs (Lit true)) (rhs 0) (kind extract))").find("literal of sort Bool"),
            std::string::npos);
}

TEST(Rules, ClausesInAnyOrderAndGuards) {
  RuleDef r = rule("(rule small Expr (kind transform) (guard (< ?n 3)) (rhs (Lit 0)) (lhs (Lit ?n)))");
  auto shared = std::make_shared<const RuleDef>(r);
  TP s = adhoc_tp(fail_tp(P), compile_transform(shared, P));
  EXPECT_EQ(s(lit(2)).value(), lit(0));
  EXPECT_TRUE(s(lit(5)).failed());
  EXPECT_TRUE(s(add(lit(1), lit(1))).failed());
}

TEST(Rules, CompiledRunningExampleRules) {
  Signature running = load_signature(strat::fixtures::running_sig);
  RuleBase rules = load_rules(strat::fixtures::running_rules, running);
  EXPECT_EQ(rules.size(), 4u);
  Term b42 = parse_term("(B 42 (A0))", running);
  Term b1 = parse_term("(B 1 (A0))", running);
  Term b2 = parse_term("(B 2 (A0))", running);

  auto sortb2int = compile_extract(rules.get("sortb2int"), P);
  EXPECT_EQ(sortb2int.tag.sort, "SortB");
  EXPECT_EQ(sortb2int.fn(b42).value(), Value(42));

  auto p1 = compile_predicate(rules.get("p1"), P);
  EXPECT_EQ(p1.fn(b1).value(), Unit{});
  EXPECT_TRUE(p1.fn(b2).failed());
  EXPECT_EQ(compile_extract(rules.get("p1"), P).fn(b1).value(), Value(Unit{}));
  EXPECT_THROW(compile_transform(rules.get("p1"), P), RuleError);
  EXPECT_THROW(compile_predicate(rules.get("sortb2int"), P), RuleError);
  EXPECT_THROW(rules.get("nope"), Error);
}

TEST(Rules, NegateBoolRule) {
  Signature mixed = load_signature(strat::fixtures::mixed_sig);
  RuleBase rules = load_rules(strat::fixtures::mixed_rules, mixed);
  auto negate_bool = compile_transform(rules.get("negate_bool"), T);
  EXPECT_EQ(negate_bool.fn(Term::boolean(true)).value(), Term::boolean(false));
}

TEST(Rules, TotalNoMatchIsAnError) {
  auto r = std::make_shared<const RuleDef>(rule("(rule one Expr (lhs (Lit 1)) (rhs (Lit 2)) (kind transform))"));
  auto m = compile_transform(r, T);
  EXPECT_EQ(m.fn(lit(1)).value(), lit(2));
  EXPECT_THROW(m.fn(lit(3)), RuleError);
}

TEST(Rules, SortViolatingTransformIsCaughtAtAdhocBoundary) {
  // Bypass the static check: a transform whose right-hand side is an Int.
  RuleDef bad = rule("(rule leak Expr (lhs (Lit ?n)) (rhs (Lit ?n)) (kind transform))");
  bad.rhs = template_of("Expr", "(Lit ?n)", "?n");
  TP s = choice(adhoc_tp(fail_tp(P), compile_transform(std::make_shared<const RuleDef>(bad), P)), id_tp(P));
  Term subject = add(lit(1), lit(2));
  Term before = subject;
  EXPECT_THROW(full_td(TPF{}, s)(subject), SortViolation);
  EXPECT_EQ(subject, before);
}

TEST(RulesProperty, MatchInstantiateRoundTrip) {
  TermGen g(51);
  const std::vector<std::string> patterns = {"?t", "(Add ?a ?b)", "(Add (Lit ?n) ?b)", "(Lit ?n)", "(Neg ?e)",
                                             "(Cond ?c ?a ?b)", "(Cond true (Lit 1) ?b)", "(Var ?s)"};
  int matched = 0;
  for (int i = 0; i < 1000; ++i) {
    Term t = g.term("Expr");
    for (const auto& text : patterns) {
      Pattern p = pattern_of("Expr", text);
      if (auto b = match(p, t)) {
        ++matched;
        ASSERT_EQ(instantiate(template_from_pattern(p), *b).to_term(), t) << text;
      }
    }
  }
  EXPECT_GT(matched, 1000);
}

TEST(RulesProperty, TransformRulesPreserveSort) {
  const char* text = R"(
    (rule swap Expr (lhs (Add ?a ?b)) (rhs (Add ?b ?a)) (kind transform))
    (rule fold Expr (lhs (Neg (Neg ?e))) (rhs ?e) (kind transform))
    (rule bump Int (lhs ?n) (guard (< ?n 5)) (rhs (+ ?n 1)) (kind transform))
    (rule flip Bool (lhs ?b) (rhs (neg ?b)) (kind transform))
    (rule drop Stmt (lhs (Seq (Skip) ?s)) (rhs ?s) (kind transform)))";
  RuleBase rules = load_rules(text, sig());
  TermGen g(52);
  for (int i = 0; i < 500; ++i) {
    Term t = g.any();
    for (const char* name : {"swap", "fold", "bump", "flip", "drop"}) {
      TP s = full_td(TPF{}, adhoc_tp(id_tp(P), compile_transform(rules.get(name), P)));
      auto r = s(t);
      if (r.succeeded()) {
        ASSERT_EQ(r.value().sort(), t.sort());
        ASSERT_FALSE(check_term(sig(), r.value()).has_value());
      }
    }
  }
}
