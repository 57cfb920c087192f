#pragma once

// The bundled demo suite.  Each case carries its inputs and the exact
// expected output, so `strat demo` can check itself.

#include <ostream>
#include <string>
#include <vector>

#include "strat/driver.hpp"
#include "strat_fixtures.hpp"

namespace strat::demo {

struct Case {
  std::string name;
  std::string summary;
  driver::Sources sources;
  driver::Options options;
  std::string expected;
  int expected_status = 0;
};

inline driver::Sources running(std::string_view term, std::string strategy) {
  driver::Sources s;
  s.signature = std::string(fixtures::running_sig);
  s.signature_label = "demo/running.sig";
  s.term = std::string(term);
  s.term_label = "demo term";
  s.rules = {std::string(fixtures::running_rules)};
  s.rules_labels = {"demo/running.rules"};
  s.strategy = std::move(strategy);
  return s;
}

inline driver::Sources mixed(std::string_view term, std::string strategy) {
  driver::Sources s;
  s.signature = std::string(fixtures::mixed_sig);
  s.signature_label = "demo/mixed.sig";
  s.term = std::string(term);
  s.term_label = "demo term";
  s.rules = {std::string(fixtures::mixed_rules)};
  s.rules_labels = {"demo/mixed.rules"};
  s.strategy = std::move(strategy);
  return s;
}

inline driver::Options opts(dsl::Flavor f, EffectKind k, std::optional<std::string> monoid = {}) {
  driver::Options o;
  o.flavor = f;
  o.effect = k;
  o.monoid = std::move(monoid);
  return o;
}

inline std::vector<Case> catalog() {
  using dsl::Flavor;
  const std::string test42(fixtures::test42_strategy);
  std::vector<Case> cs;
  cs.push_back({"test42", "first component below a 3-node below a 1-node",
                running(fixtures::term1_term, test42), opts(Flavor::TU, EffectKind::Partial), "Just 42\n", 0});
  cs.push_back({"test42-miss", "same query on a term without the chain",
                running(fixtures::term2_term, test42), opts(Flavor::TU, EffectKind::Partial), "Nothing\n", 1});
  cs.push_back({"negate", "negate every Bool leaf", mixed(fixtures::props_term, "full_td(rule negate_bool)"),
                opts(Flavor::TP, EffectKind::Total), "(Or (And false true) (Not (Lit false)))\n", 0});
  cs.push_back({"collect-ints", "all Int leaves in preorder",
                mixed(fixtures::tree_term, "full_td(adhoc(skip, collect_int))"),
                opts(Flavor::TU, EffectKind::Total, "list_concat"), "[1, 2, 3, 4, 5]\n", 0});
  cs.push_back({"full-td", "every SortB component", running(fixtures::term1_term, "full_td(adhoc(skip, sortb_list))"),
                opts(Flavor::TU, EffectKind::Partial, "list_concat"), "Just [7, 1, 5, 3, 42]\n", 0});
  cs.push_back({"stop-td", "outermost SortB components only", running(fixtures::term1_term, "stop_td(rule sortb_list)"),
                opts(Flavor::TU, EffectKind::Partial, "list_concat"), "Just [7, 1]\n", 0});
  cs.push_back({"depth", "depth of each Int leaf, threaded top-down",
                mixed(fixtures::nest_term, "full_tdpe(0, value((+ ?env 1)), adhoc(skip, depth_at_int))"),
                opts(Flavor::TU, EffectKind::Total, "list_concat"), "[1, 2, 2]\n", 0});
  cs.push_back({"one-nondet", "every way of incrementing one Int child",
                mixed(fixtures::pair_term, "one(rule incr_int)"), opts(Flavor::TP, EffectKind::Nondet),
                "(Pair 2 2)\n(Pair 1 3)\n", 0});
  return cs;
}

/// Runs every case (or only `only`, when non-empty).  Returns 0 when all
/// selected cases match, 1 on a mismatch, 2 when `only` names no case.
inline int run_suite(const std::string& only, std::ostream& out, std::ostream& err) {
  int failures = 0, ran = 0;
  for (const auto& c : catalog()) {
    if (!only.empty() && c.name != only) continue;
    ++ran;
    std::ostringstream diag;
    auto got = driver::run_sources(c.sources, c.options, diag);
    bool ok = got.output == c.expected && got.status == c.expected_status;
    out << (ok ? "ok    " : "FAIL  ") << c.name << "  (" << c.summary << ")\n";
    if (!ok) {
      ++failures;
      out << "      strategy: " << c.sources.strategy << "\n"
          << "      expected (status " << c.expected_status << "): " << c.expected
          << "      got (status " << got.status << "): " << got.output << diag.str();
    }
  }
  if (ran == 0) {
    err << "strat: error: no demo named `" << only << "`\n";
    return 2;
  }
  out << (ran - failures) << "/" << ran << " demos passed\n";
  return failures == 0 ? 0 : 1;
}

} // namespace strat::demo
