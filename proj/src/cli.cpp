#include "pcalc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pcalc/inference.hpp"
#include "pcalc/knowledge_base.hpp"
#include "pcalc/parser.hpp"
#include "pcalc/reduction_analysis.hpp"
#include "pcalc/self_watcher.hpp"

namespace pcalc::cli {
namespace {

// Reported to the user as "error: <message>" with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  ChainConfig chain;
  WatcherConfig watcher;
  int cap = kDefaultExplanationCap;
  bool trace = false;
  std::string output;
};

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

KnowledgeBase load_files(const std::vector<std::string>& paths, KnowledgeBase kb = {}) {
  for (const auto& path : paths) {
    try {
      kb = load_kb(read_file(path), std::move(kb));
    } catch (const ParseError& e) {
      throw UsageError(path + ": " + e.describe_line());
    }
  }
  return kb;
}

Atom goal_from(const std::string& text) {
  try {
    return parse_goal(text);
  } catch (const ParseError& e) {
    throw UsageError(e.describe());
  }
}

Formula closed_formula(const std::string& text) {
  try {
    return parse(text, ParseMode::kClosed);
  } catch (const ParseError& e) {
    throw UsageError(e.describe());
  }
}

// The commands below are shared by batch mode and the REPL. Each writes its
// output and returns the exit code plus the (possibly grown) data-base.
struct Outcome {
  int code;
  KnowledgeBase kb;
};

Outcome do_assert(const KnowledgeBase& kb, const std::string& text, std::ostream&) {
  try {
    return {kSuccess, kb.with_formula(closed_formula(text))};
  } catch (const UnsupportedFormula& e) {
    throw UsageError(e.what());
  }
}

Outcome do_query(const KnowledgeBase& kb, const std::string& text, const Options& opt, std::ostream& out) {
  const Atom goal = goal_from(text);
  const ShowResult shown = show(kb, goal, opt.chain);
  const ProofResult& res = shown.result;
  const auto vars = goal.variables();
  for (std::size_t i = 0; i < res.answers.size(); ++i) {
    if (!vars.empty()) {
      std::string line;
      for (const auto& v : vars) {
        if (!line.empty()) line += ", ";
        const Term* t = res.bindings[i].lookup(v);
        line += v + " = " + (t ? render(*t) : v);
      }
      out << line << "\n";
    }
    if (opt.trace) out << render_proof(res.proofs[i], vars.empty() ? 0 : 1);
  }
  if (res.proven) {
    out << "proven.\n";
  } else if (res.depth_limited) {
    out << "not proven (depth limit " << opt.chain.depth_limit << " reached).\n";
  } else {
    out << "not proven.\n";
  }
  return {res.proven ? kSuccess : kNotProven, shown.kb};
}

Outcome do_saturate(const KnowledgeBase& kb, const Options& opt, std::ostream& out) {
  const KnowledgeBase saturated = forward_chain(kb, opt.chain);
  for (std::size_t i = kb.facts().size(); i < saturated.facts().size(); ++i) {
    out << render(saturated.facts()[i].atom) << "\n";
  }
  if (saturated.saturation_truncated()) {
    out << "; stopped after " << opt.chain.max_rounds << " rounds without reaching a fixpoint\n";
  }
  return {kSuccess, saturated};
}

Outcome do_network(const KnowledgeBase& kb, const Options& opt, std::ostream& out) {
  const Network net = semantic_network(kb, opt.chain);
  for (const auto& e : net.edges) {
    out << render(net.nodes[e.from]) << " -> " << render(net.nodes[e.to]) << "  ; rule " << e.rule + 1 << "\n";
  }
  for (std::size_t n : net.loop_nodes) out << "loop: " << render(net.nodes[n]) << "\n";
  out << "; " << net.nodes.size() << " nodes, " << net.edges.size() << " edges, " << net.loop_nodes.size()
      << " on loops\n";
  return {kSuccess, kb};
}

Outcome do_watch(const KnowledgeBase& kb, const Options& opt, std::ostream& out) {
  const WatchResult res = run_watcher(kb, opt.watcher);
  out << render(res.report);
  return {kSuccess, res.kb};
}

void print_stats(const KnowledgeBase& kb, std::ostream& out) {
  const KbStats s = kb.stats();
  out << "facts: " << s.fact_count << "\n";
  out << "rules: " << s.rule_count << "\n";
  out << "derived: " << s.derived_count << "\n";
  out << "watcher: " << s.watcher_fact_count << "\n";
  for (const auto& [pred, n] : s.facts_per_predicate) out << "predicate: " << pred << " " << n << "\n";
  if (s.saturation_truncated) out << "saturation: truncated\n";
}

int do_reduce_check(const std::string& path, const Options& opt, std::ostream& out) {
  ReductionSpec spec;
  try {
    spec = load_reduction_spec(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.describe_line());
  }
  const ReductionReport report = classify(spec, opt.cap);
  out << render(report);
  return report.classification == Classification::kStrong ? kSuccess : kNotProven;
}

const char* const kReplHelp =
    "commands:\n"
    "  (formula)            assert a fact or rule\n"
    "  (Show goal)          query, same as :query goal\n"
    "  :assert <formula>\n"
    "  :query <goal>        answers are added to the data-base\n"
    "  :trace on|off\n"
    "  :saturate\n"
    "  :network\n"
    "  :watch [generations]\n"
    "  :stats\n"
    "  :load <path>\n"
    "  :save <path>\n"
    "  :quit\n";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int repl(KnowledgeBase kb, Options opt, std::istream& in, std::ostream& out, std::ostream& err,
         bool interactive) {
  std::string line;
  for (;;) {
    if (interactive) out << "pcalc> " << std::flush;
    if (!std::getline(in, line)) break;
    line = trim(line);
    if (line.empty() || line.front() == ';') continue;
    std::string cmd = line;
    std::string rest;
    if (line.front() == ':') {
      const auto space = line.find(' ');
      cmd = line.substr(0, space);
      rest = space == std::string::npos ? "" : trim(line.substr(space + 1));
    } else if (line.rfind("(Show", 0) == 0) {
      cmd = ":query";
      rest = line;
    } else {
      cmd = ":assert";
      rest = line;
    }
    try {
      if (cmd == ":quit" || cmd == ":q") break;
      if (cmd == ":help") {
        out << kReplHelp;
      } else if (cmd == ":assert") {
        kb = do_assert(kb, rest, out).kb;
        out << "ok.\n";
      } else if (cmd == ":query") {
        kb = do_query(kb, rest, opt, out).kb;
      } else if (cmd == ":trace") {
        opt.trace = rest != "off";
      } else if (cmd == ":saturate") {
        kb = do_saturate(kb, opt, out).kb;
      } else if (cmd == ":network") {
        do_network(kb, opt, out);
      } else if (cmd == ":watch") {
        Options w = opt;
        if (!rest.empty()) {
          w.watcher.max_generations = std::stoi(rest);
          w.watcher.awareness_threshold = std::min(w.watcher.awareness_threshold, w.watcher.max_generations);
        }
        kb = do_watch(kb, w, out).kb;
      } else if (cmd == ":stats") {
        print_stats(kb, out);
      } else if (cmd == ":load") {
        kb = load_files({rest}, kb);
        out << "ok.\n";
      } else if (cmd == ":save") {
        std::ofstream file(rest, std::ios::binary);
        if (!file) throw UsageError("cannot write " + rest);
        file << save_kb(kb);
        out << "saved " << kb.facts().size() << " facts and " << kb.rules().size() << " rules.\n";
      } else {
        throw UsageError("unknown command " + cmd + " (try :help)");
      }
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
      err << "error: " << e.what() << "\n";
    }
  }
  return kSuccess;
}

// Splits "<kb-file>... <formula>" positional arguments.
std::pair<std::vector<std::string>, std::string> files_then_formula(const std::vector<std::string>& positional) {
  if (positional.empty()) throw UsageError("missing formula argument");
  std::vector<std::string> files(positional.begin(), positional.end() - 1);
  return {files, positional.back()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive) {
  CLI::App app{"Predicate-calculus knowledge base, inference engine and reduction checker", "pcalc"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::string> positional;
  std::string reduction_file;

  const auto chain_flags = [&](CLI::App* sub) {
    sub->add_option("--depth", opt.chain.depth_limit, "Proof-tree height limit")
        ->envname("PCALC_DEPTH")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-rounds", opt.chain.max_rounds, "Forward-chaining round limit")
        ->check(CLI::PositiveNumber);
  };

  auto* assert_cmd = app.add_subcommand("assert", "Assert a formula and print the resulting data-base");
  assert_cmd->add_option("args", positional, "<kb-file>... <formula>")->required();
  assert_cmd->add_option("-o,--output", opt.output, "Write the data-base here instead of stdout");

  auto* query_cmd = app.add_subcommand("query", "Prove a goal by backward chaining");
  query_cmd->add_option("args", positional, "<kb-file>... <goal>")->required();
  query_cmd->add_flag("--trace", opt.trace, "Print proof trees");
  query_cmd->add_flag("--no-cache", [&](std::int64_t) { opt.chain.cache_derived = false; },
                      "Do not add proven answers to the data-base");
  chain_flags(query_cmd);

  auto* saturate_cmd = app.add_subcommand("saturate", "Forward chain to the fixpoint; print derived facts");
  saturate_cmd->add_option("kb", positional, "<kb-file>...")->required();
  chain_flags(saturate_cmd);

  auto* network_cmd = app.add_subcommand("network", "Print the semantic network edges and loops");
  network_cmd->add_option("kb", positional, "<kb-file>...")->required();
  chain_flags(network_cmd);

  auto* watch_cmd = app.add_subcommand("watch", "Run the self-watcher");
  watch_cmd->add_option("kb", positional, "<kb-file>...")->required();
  watch_cmd->add_option("--generations", opt.watcher.max_generations, "Number of ticks")
      ->check(CLI::PositiveNumber);
  watch_cmd->add_option("--threshold", opt.watcher.awareness_threshold, "Awareness threshold")
      ->check(CLI::PositiveNumber);

  auto* reduce_cmd = app.add_subcommand("reduce-check", "Analyze a reduction spec file");
  reduce_cmd->add_option("spec", reduction_file, "<spec-file>")->required();
  reduce_cmd->add_option("--cap", opt.cap, "Largest explaining subset to enumerate")
      ->check(CLI::Range(1, kMaxExplanationCap));

  auto* repl_cmd = app.add_subcommand("repl", "Interactive session over one growing data-base");
  repl_cmd->add_option("kb", positional, "<kb-file>...");
  repl_cmd->add_flag("--trace", opt.trace, "Print proof trees");
  repl_cmd->add_flag("--no-cache", [&](std::int64_t) { opt.chain.cache_derived = false; },
                     "Do not add proven answers to the data-base");
  chain_flags(repl_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (watch_cmd->parsed() && watch_cmd->count("--generations") && !watch_cmd->count("--threshold")) {
      opt.watcher.awareness_threshold = std::min(opt.watcher.awareness_threshold, opt.watcher.max_generations);
    }
    if (assert_cmd->parsed()) {
      auto [files, text] = files_then_formula(positional);
      const KnowledgeBase kb = do_assert(load_files(files), text, out).kb;
      if (opt.output.empty()) {
        out << save_kb(kb);
      } else {
        std::ofstream file(opt.output, std::ios::binary);
        if (!file) throw UsageError("cannot write " + opt.output);
        file << save_kb(kb);
      }
      return kSuccess;
    }
    if (query_cmd->parsed()) {
      auto [files, text] = files_then_formula(positional);
      const KnowledgeBase kb = load_files(files);
      return do_query(kb, text, opt, out).code;
    }
    if (saturate_cmd->parsed()) return do_saturate(load_files(positional), opt, out).code;
    if (network_cmd->parsed()) return do_network(load_files(positional), opt, out).code;
    if (watch_cmd->parsed()) return do_watch(load_files(positional), opt, out).code;
    if (reduce_cmd->parsed()) return do_reduce_check(reduction_file, opt, out);
    if (repl_cmd->parsed()) return repl(load_files(positional), opt, in, out, err, interactive);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace pcalc::cli
