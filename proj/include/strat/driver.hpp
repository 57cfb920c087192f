#pragma once

// Command-line driver: binds a signature, a term, rule files and a strategy
// expression into one run.  Exit codes: 0 success, 1 strategy failure
// (Partial `Nothing`), 2 usage or validation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "strat/dsl.hpp"
#include "strat/effects.hpp"
#include "strat/error.hpp"
#include "strat/rules.hpp"
#include "strat/signature.hpp"
#include "strat/stack.hpp"
#include "strat/term.hpp"

namespace strat::driver {

enum class Format { Term, Value, List };

struct Options {
  dsl::Flavor flavor = dsl::Flavor::TP;
  EffectKind effect = EffectKind::Partial;
  std::optional<std::string> monoid;
  std::optional<std::string> format;
};

/// In-memory inputs of a run.  `label`s name the origin in diagnostics.
struct Sources {
  std::string signature;
  std::string term;
  std::vector<std::string> rules;
  std::string strategy;
  std::string signature_label = "signature";
  std::string term_label = "term";
  std::vector<std::string> rules_labels;
};

struct RunConfig {
  std::string sig_path;
  std::string term_path;
  std::vector<std::string> rules_paths;
  std::optional<std::string> strategy;
  std::optional<std::string> strategy_path;
  std::optional<std::string> out_path;
  Options options;
};

struct Outcome {
  int status = 0;
  std::string output;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline EffectKind parse_effect(std::string_view s) {
  if (s == "total") return EffectKind::Total;
  if (s == "partial") return EffectKind::Partial;
  if (s == "nondet") return EffectKind::Nondet;
  throw Error("unknown effect `" + std::string(s) + "` (expected total, partial or nondet)");
}

inline dsl::Flavor parse_flavor(std::string_view s) {
  if (s == "tp") return dsl::Flavor::TP;
  if (s == "tu") return dsl::Flavor::TU;
  throw Error("unknown flavor `" + std::string(s) + "` (expected tp or tu)");
}

/// Resolves the output format and checks it against flavor and effect.
inline Format resolve_format(const Options& o) {
  Format f = o.effect == EffectKind::Nondet ? Format::List
             : o.flavor == dsl::Flavor::TP  ? Format::Term
                                            : Format::Value;
  if (!o.format) return f;
  if (*o.format == "term") f = Format::Term;
  else if (*o.format == "value") f = Format::Value;
  else if (*o.format == "list") f = Format::List;
  else throw Error("unknown format `" + *o.format + "` (expected term, value or list)");
  if (o.effect == EffectKind::Nondet && f != Format::List)
    throw Error("nondet runs print a result list; use --format list");
  if (f == Format::Term && o.flavor != dsl::Flavor::TP) throw Error("--format term requires --flavor tp");
  if (f == Format::Value && o.flavor != dsl::Flavor::TU) throw Error("--format value requires --flavor tu");
  return f;
}

struct Prepared {
  Signature sig;
  Term term;
  RuleBase rules;
  dsl::Expr expr;
  dsl::Executable exe;
  Format format;
};

namespace detail {

template <class F>
auto stage(const std::string& label, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(label + ": " + e.what());
  }
}

} // namespace detail

/// Loads and validates every input and elaborates the strategy, without
/// applying it.
inline Prepared prepare(const Sources& src, const Options& opts) {
  Format format = resolve_format(opts);
  if (opts.monoid && opts.flavor != dsl::Flavor::TU) throw Error("--monoid applies to --flavor tu only");
  std::optional<Monoid<Value>> monoid;
  if (opts.monoid) monoid = monoid_registry(*opts.monoid);

  Signature sig = detail::stage(src.signature_label, [&] { return load_signature(src.signature); });
  Term term = detail::stage(src.term_label, [&] { return parse_term(src.term, sig); });
  RuleBase rules;
  for (std::size_t i = 0; i < src.rules.size(); ++i) {
    std::string label = i < src.rules_labels.size() ? src.rules_labels[i] : "rules";
    detail::stage(label, [&] {
      rules.merge(load_rules(src.rules[i], sig));
      return 0;
    });
  }
  dsl::Expr expr = detail::stage("strategy", [&] { return dsl::parse_strategy(src.strategy); });
  dsl::Executable exe = detail::stage("strategy", [&] {
    return dsl::elaborate(expr, rules, sig, opts.flavor, opts.effect, monoid);
  });
  return Prepared{std::move(sig), std::move(term), std::move(rules), std::move(expr), std::move(exe), format};
}

/// Applies the prepared strategy and renders the result.
inline Outcome execute(const Prepared& p, EffectKind effect) {
  std::vector<std::string> shown;
  std::visit(
      [&](const auto& s) {
        auto r = s(p.term);
        for (const auto& x : r.results()) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Term>)
            shown.push_back(print_term(x));
          else
            shown.push_back(print_value(x));
        }
      },
      p.exe);

  Outcome o;
  if (p.format == Format::List) {
    for (auto& s : shown) o.output += s + "\n";
    o.status = (effect == EffectKind::Partial && shown.empty()) ? 1 : 0;
    return o;
  }
  if (effect == EffectKind::Total) {
    o.output = shown.at(0) + "\n";
    return o;
  }
  if (shown.empty()) {
    o.output = "Nothing\n";
    o.status = 1;
  } else {
    o.output = "Just " + shown.front() + "\n";
  }
  return o;
}

/// Prepare and execute on a large-stack thread.  Errors become status 2.
inline Outcome run_sources(const Sources& src, const Options& opts, std::ostream& err) {
  try {
    return with_stack(default_stack_bytes, [&] {
      Prepared p = prepare(src, opts);
      return execute(p, opts.effect);
    });
  } catch (const std::exception& e) {
    err << "strat: error: " << e.what() << "\n";
    return Outcome{2, {}};
  }
}

inline Sources load_sources(const RunConfig& cfg) {
  if (cfg.strategy && cfg.strategy_path) throw Error("give either --strategy or --strategy-file, not both");
  if (!cfg.strategy && !cfg.strategy_path) throw Error("missing --strategy or --strategy-file");
  Sources s;
  s.signature = read_file(cfg.sig_path);
  s.signature_label = cfg.sig_path;
  s.term = read_file(cfg.term_path);
  s.term_label = cfg.term_path;
  for (auto& r : cfg.rules_paths) {
    s.rules.push_back(read_file(r));
    s.rules_labels.push_back(r);
  }
  s.strategy = cfg.strategy ? *cfg.strategy : read_file(*cfg.strategy_path);
  return s;
}

/// `apply` subcommand.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Sources src;
  try {
    src = load_sources(cfg);
  } catch (const std::exception& e) {
    err << "strat: error: " << e.what() << "\n";
    return 2;
  }
  Outcome o = run_sources(src, cfg.options, err);
  if (o.status == 2) return 2;
  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path, std::ios::binary);
    if (!f) {
      err << "strat: error: cannot write `" << *cfg.out_path << "`\n";
      return 2;
    }
    f << o.output;
  } else {
    out << o.output;
  }
  return o.status;
}

/// `check` subcommand: validation only.
inline int check(const RunConfig& cfg, std::ostream& err) {
  try {
    Sources src = load_sources(cfg);
    with_stack(default_stack_bytes, [&] { prepare(src, cfg.options); });
    return 0;
  } catch (const std::exception& e) {
    err << "strat: error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace strat::driver
