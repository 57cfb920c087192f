#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "demo_catalog.hpp"
#include "strat/driver.hpp"

namespace {

struct Flags {
  std::string sig, term, strategy, strategy_file, out, format, monoid;
  std::string flavor = "tp";
  std::string effect = "partial";
  std::vector<std::string> rules;
};

void add_run_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--sig", f.sig, "signature file")->required();
  cmd.add_option("--term", f.term, "term file")->required();
  cmd.add_option("--rules", f.rules, "rules file (repeatable)");
  auto* s = cmd.add_option("--strategy", f.strategy, "strategy expression");
  auto* sf = cmd.add_option("--strategy-file", f.strategy_file, "file holding the strategy expression");
  s->excludes(sf);
  cmd.add_option("--flavor", f.flavor, "tp or tu")->check(CLI::IsMember({"tp", "tu"}));
  cmd.add_option("--effect", f.effect, "total, partial or nondet")->check(CLI::IsMember({"total", "partial", "nondet"}));
  cmd.add_option("--monoid", f.monoid, "TU result monoid (default list_concat)");
  cmd.add_option("--format", f.format, "term, value or list")->check(CLI::IsMember({"term", "value", "list"}));
}

strat::driver::RunConfig to_config(const CLI::App& cmd, const Flags& f) {
  strat::driver::RunConfig cfg;
  cfg.sig_path = f.sig;
  cfg.term_path = f.term;
  cfg.rules_paths = f.rules;
  if (cmd.count("--strategy")) cfg.strategy = f.strategy;
  if (cmd.count("--strategy-file")) cfg.strategy_path = f.strategy_file;
  if (cmd.get_option_no_throw("--out") && cmd.count("--out")) cfg.out_path = f.out;
  cfg.options.flavor = strat::driver::parse_flavor(f.flavor);
  cfg.options.effect = strat::driver::parse_effect(f.effect);
  if (cmd.count("--monoid")) cfg.options.monoid = f.monoid;
  if (cmd.count("--format")) cfg.options.format = f.format;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategic term rewriting over sorted terms."};
  app.require_subcommand(1);

  Flags apply_flags, check_flags;
  auto* apply = app.add_subcommand("apply", "apply a strategy to a term and print the result");
  add_run_flags(*apply, apply_flags);
  apply->add_option("--out", apply_flags.out, "write the result here instead of stdout");

  auto* check = app.add_subcommand("check", "validate all inputs without running the strategy");
  add_run_flags(*check, check_flags);

  std::string only;
  auto* demo = app.add_subcommand("demo", "run the bundled demo suite and check its outputs");
  demo->add_option("name", only, "run only this demo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (apply->parsed()) return strat::driver::run(to_config(*apply, apply_flags), std::cout, std::cerr);
    if (check->parsed()) return strat::driver::check(to_config(*check, check_flags), std::cerr);
    return strat::demo::run_suite(only, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "strat: error: " << e.what() << "\n";
    return 2;
  }
}
