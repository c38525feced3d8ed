#pragma once

#include <string>
#include <vector>

#include "pcalc/knowledge_base.hpp"

namespace pcalc {

struct WatcherConfig {
  int max_generations = 4;
  // First generation at which self-description may be recognized.
  int awareness_threshold = 2;
  bool emit_fact_count = true;
  bool emit_rule_count = true;
  bool emit_predicates = true;
  bool emit_generation = true;

  // Throws std::invalid_argument unless 1 <= awareness_threshold <= max_generations.
  void validate() const;
};

struct WatcherReport {
  int generations_run = 0;
  // New facts added per tick, awareness sentence included.
  std::vector<int> facts_emitted_per_generation;
  bool awareness_emitted = false;
  // Tick that first asserted the awareness sentence; 0 if never.
  int awareness_generation = 0;
};

// Records a snapshot of kb (as it was before the tick) inside kb itself:
// (db-fact-count n), (db-rule-count m), (db-has-predicate p) per predicate and
// (watcher-generation gen), all with watcher provenance.
KnowledgeBase watch_tick(const KnowledgeBase& kb, int gen, const WatcherConfig& cfg = {});

struct WatchResult {
  KnowledgeBase kb;
  WatcherReport report;
};

// Exactly max_generations ticks. Once gen >= awareness_threshold and the
// pre-tick data-base already holds watcher facts, (have-impression-of mind)
// is asserted.
WatchResult run_watcher(const KnowledgeBase& kb, const WatcherConfig& cfg = {});

// "generation <g>: emitted <n>" per tick, then "awareness: yes (generation g)" or "awareness: no".
std::string render(const WatcherReport& report);

// Reserved watcher namespace (`db-`, `watcher-`, `have-impression-of`).
bool is_watcher_predicate(const std::string& predicate);

}  // namespace pcalc
