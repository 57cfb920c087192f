#include <gtest/gtest.h>

#include <sstream>

#include "demo_catalog.hpp"
#include "strat/driver.hpp"

using namespace strat;
using namespace strat::driver;

namespace {

Sources running(std::string_view term, std::string strategy) {
  return demo::running(term, std::move(strategy));
}

Options tu_partial() { return demo::opts(dsl::Flavor::TU, EffectKind::Partial); }

struct Run {
  Outcome outcome;
  std::string err;
};

Run run(const Sources& s, const Options& o) {
  std::ostringstream err;
  Outcome out = run_sources(s, o, err);
  return {out, err.str()};
}

} // namespace

TEST(Driver, Test42) {
  auto r = run(running(fixtures::term1_term, "belowlist([rule p1, rule p2], rule sortb2int)"), tu_partial());
  EXPECT_EQ(r.outcome.output, "Just 42\n");
  EXPECT_EQ(r.outcome.status, 0);
  EXPECT_EQ(r.err, "");
}

TEST(Driver, PartialFailurePrintsNothing) {
  auto r = run(running(fixtures::term2_term, "belowlist([rule p1, rule p2], rule sortb2int)"), tu_partial());
  EXPECT_EQ(r.outcome.output, "Nothing\n");
  EXPECT_EQ(r.outcome.status, 1);
}

TEST(Driver, TotalAndNondetOutput) {
  auto total = run(demo::mixed(fixtures::props_term, "full_td(rule negate_bool)"),
                   demo::opts(dsl::Flavor::TP, EffectKind::Total));
  EXPECT_EQ(total.outcome.output, "(Or (And false true) (Not (Lit false)))\n");
  auto none = run(demo::mixed(fixtures::props_term, "one(adhoc(fail, incr_int))"),
                  demo::opts(dsl::Flavor::TP, EffectKind::Nondet));
  EXPECT_EQ(none.outcome.output, "");
  EXPECT_EQ(none.outcome.status, 0);
}

TEST(Driver, ErrorsExitTwoWithDiagnostics) {
  auto ill = running("(A1 (A0))", "id");
  auto r = run(ill, demo::opts(dsl::Flavor::TP, EffectKind::Partial));
  EXPECT_EQ(r.outcome.status, 2);
  EXPECT_NE(r.err.find("sort mismatch at path [0]"), std::string::npos);

  auto unknown = run(running(fixtures::term1_term, "once_td(rule nope)"), tu_partial());
  EXPECT_EQ(unknown.outcome.status, 2);
  EXPECT_NE(unknown.err.find("unknown rule `nope`"), std::string::npos);

  Options bad_format = tu_partial();
  bad_format.format = "term";
  EXPECT_EQ(run(running(fixtures::term1_term, "skip"), bad_format).outcome.status, 2);

  Options nondet_value = demo::opts(dsl::Flavor::TU, EffectKind::Nondet);
  nondet_value.format = "value";
  EXPECT_EQ(run(running(fixtures::term1_term, "skip"), nondet_value).outcome.status, 2);

  Options tp_monoid = demo::opts(dsl::Flavor::TP, EffectKind::Partial, "int_sum");
  EXPECT_EQ(run(running(fixtures::term1_term, "id"), tp_monoid).outcome.status, 2);

  Options bad_monoid = demo::opts(dsl::Flavor::TU, EffectKind::Partial, "max");
  EXPECT_EQ(run(running(fixtures::term1_term, "skip"), bad_monoid).outcome.status, 2);

  // A total run on which a rule does not match.
  auto total_miss = run(demo::mixed("(Pair 1 2)", "full_td(adhoc(skip, return_int))"),
                        demo::opts(dsl::Flavor::TU, EffectKind::Total, "int_sum"));
  EXPECT_EQ(total_miss.outcome.status, 0);
  EXPECT_EQ(total_miss.outcome.output, "3\n");
}

TEST(Driver, ListFormatForPartial) {
  Options o = tu_partial();
  o.format = "list";
  auto hit = run(running(fixtures::term1_term, "once_td(rule sortb2int)"), o);
  EXPECT_EQ(hit.outcome.output, "7\n");
  auto miss = run(running(fixtures::term1_term, "once_td(rule p1)"), o);
  EXPECT_EQ(miss.outcome.output, "unit\n");
}

TEST(Driver, Deterministic) {
  auto s = demo::mixed(fixtures::tree_term, "once_td(rule incr_int)");
  auto o = demo::opts(dsl::Flavor::TP, EffectKind::Nondet);
  EXPECT_EQ(run(s, o).outcome.output, run(s, o).outcome.output);
}

TEST(Driver, DemoSuitePasses) {
  std::ostringstream out, err;
  EXPECT_EQ(demo::run_suite("", out, err), 0) << out.str() << err.str();
  std::ostringstream out2, err2;
  EXPECT_EQ(demo::run_suite("no-such-demo", out2, err2), 2);
}

TEST(Driver, ReadsFilesAndWritesOut) {
  RunConfig cfg;
  cfg.sig_path = STRAT_DEMO_DIR "/running.sig";
  cfg.term_path = STRAT_DEMO_DIR "/term1.term";
  cfg.rules_paths = {STRAT_DEMO_DIR "/running.rules"};
  cfg.strategy_path = STRAT_DEMO_DIR "/test42.strategy";
  cfg.options = tu_partial();
  std::ostringstream out, err;
  EXPECT_EQ(driver::run(cfg, out, err), 0) << err.str();
  EXPECT_EQ(out.str(), "Just 42\n");
  EXPECT_EQ(check(cfg, err), 0);

  cfg.strategy = "id";
  EXPECT_EQ(check(cfg, err), 2);
  cfg.strategy.reset();
  cfg.term_path = "/nonexistent/term";
  std::ostringstream err2;
  EXPECT_EQ(check(cfg, err2), 2);
  EXPECT_NE(err2.str().find("cannot read"), std::string::npos);
}
