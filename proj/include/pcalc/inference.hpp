#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pcalc/knowledge_base.hpp"

namespace pcalc {

struct ChainConfig {
  // Maximum proof-tree height; a fact leaf has height 1.
  int depth_limit = 32;
  int max_rounds = 64;
  bool cache_derived = true;

  // Throws std::invalid_argument when a limit is below 1.
  void validate() const;
};

struct ProofNode {
  enum class Source { kFact, kRule };

  Atom goal;
  Source source = Source::kFact;
  // Index into KnowledgeBase::facts() or KnowledgeBase::rules().
  std::size_t index = 0;
  std::vector<ProofNode> children;

  int height() const;
  friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

struct ProofResult {
  bool proven = false;
  // Some branch was cut off by depth_limit; a false `proven` may then be an
  // artifact of the limit rather than a definite failure.
  bool depth_limited = false;
  // One entry per distinct answer, restricted to the goal's variables.
  std::vector<Substitution> bindings;
  // Ground goal instances, aligned with bindings.
  std::vector<Atom> answers;
  // A minimum-height proof per answer, aligned with bindings.
  std::vector<ProofNode> proofs;

  friend bool operator==(const ProofResult&, const ProofResult&) = default;
};

// Goal-directed search: only subgoals reachable from `goal` are evaluated.
// Subgoal answers are tabled so cyclic rules terminate; answers are exactly
// the goal instances with a proof of height <= depth_limit.
ProofResult backward_chain(const KnowledgeBase& kb, const Atom& goal, const ChainConfig& cfg = {});

struct ShowResult {
  ProofResult result;
  KnowledgeBase kb;
};

// backward_chain, then (when cache_derived) adds each proven ground answer
// to the data-base as a derived fact.
ShowResult show(const KnowledgeBase& kb, const Atom& goal, const ChainConfig& cfg = {});

// Naive round-based saturation. New facts are appended in derivation order;
// the result is flagged truncated if max_rounds ran out before the fixpoint.
KnowledgeBase forward_chain(const KnowledgeBase& kb, const ChainConfig& cfg = {});

// True when kb proves f. Supports ground atoms, conjunctions of those, and
// Horn rules (checked by freezing the rule's variables to fresh constants,
// asserting the antecedents and proving the consequent). Other shapes throw
// UnsupportedFormula.
bool entails(const KnowledgeBase& kb, const Formula& f, const ChainConfig& cfg = {});

// Proof trees as two-space indented lines: "(goal)  ; fact" / "(goal)  ; rule N".
std::string render_proof(const ProofNode& node, int indent = 0);

struct NetworkEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  // First rule (by assertion order) whose instantiation links the two facts.
  std::size_t rule = 0;

  friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

struct Network {
  // Facts of the forward-chaining fixpoint, in fixpoint order.
  std::vector<Atom> nodes;
  // Premise -> conclusion, sorted by (from, to).
  std::vector<NetworkEdge> edges;
  // Indices of nodes lying on a directed cycle, ascending.
  std::vector<std::size_t> loop_nodes;
};

Network semantic_network(const KnowledgeBase& kb, const ChainConfig& cfg = {});

}  // namespace pcalc
