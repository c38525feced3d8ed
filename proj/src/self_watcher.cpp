#include "pcalc/self_watcher.hpp"

#include <stdexcept>

namespace pcalc {
namespace {

Atom unary(const std::string& predicate, const std::string& value) {
  return Atom{predicate, {Term::constant(value)}};
}

const Atom& awareness_sentence() {
  static const Atom kMind = unary("have-impression-of", "mind");
  return kMind;
}

}  // namespace

void WatcherConfig::validate() const {
  if (awareness_threshold < 1) throw std::invalid_argument("awareness threshold must be at least 1");
  if (max_generations < awareness_threshold) {
    throw std::invalid_argument("max generations must be at least the awareness threshold");
  }
}

bool is_watcher_predicate(const std::string& predicate) {
  return predicate.rfind("db-", 0) == 0 || predicate.rfind("watcher-", 0) == 0 ||
         predicate == "have-impression-of";
}

KnowledgeBase watch_tick(const KnowledgeBase& kb, int gen, const WatcherConfig& cfg) {
  if (gen < 1) throw std::invalid_argument("watcher generation must be at least 1");
  const KbStats before = kb.stats();
  std::vector<Fact> snapshot;
  const auto emit = [&](Atom a) { snapshot.push_back(Fact{std::move(a), Provenance::kWatcher, gen}); };
  if (cfg.emit_fact_count) emit(unary("db-fact-count", std::to_string(before.fact_count)));
  if (cfg.emit_rule_count) emit(unary("db-rule-count", std::to_string(before.rule_count)));
  if (cfg.emit_predicates) {
    for (const auto& p : before.predicate_names) emit(unary("db-has-predicate", p));
  }
  if (cfg.emit_generation) emit(unary("watcher-generation", std::to_string(gen)));
  return kb.with_facts(snapshot);
}

WatchResult run_watcher(const KnowledgeBase& kb, const WatcherConfig& cfg) {
  cfg.validate();
  WatchResult out{kb, {}};
  for (int gen = 1; gen <= cfg.max_generations; ++gen) {
    const KnowledgeBase before = out.kb;
    out.kb = watch_tick(before, gen, cfg);
    if (gen >= cfg.awareness_threshold && before.stats().watcher_fact_count > 0) {
      out.kb = out.kb.with_fact(awareness_sentence(), Provenance::kWatcher, gen);
      if (!out.report.awareness_emitted) {
        out.report.awareness_emitted = true;
        out.report.awareness_generation = gen;
      }
    }
    out.report.facts_emitted_per_generation.push_back(
        static_cast<int>(out.kb.facts().size() - before.facts().size()));
    ++out.report.generations_run;
  }
  return out;
}

std::string render(const WatcherReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.facts_emitted_per_generation.size(); ++i) {
    out += "generation " + std::to_string(i + 1) + ": emitted " +
           std::to_string(report.facts_emitted_per_generation[i]) + "\n";
  }
  if (report.awareness_emitted) {
    out += "awareness: yes (generation " + std::to_string(report.awareness_generation) + ")\n";
  } else {
    out += "awareness: no\n";
  }
  return out;
}

}  // namespace pcalc
