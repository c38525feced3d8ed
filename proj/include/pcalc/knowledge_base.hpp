#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcalc/formula.hpp"
#include "pcalc/substitution.hpp"

namespace pcalc {

enum class Provenance { kAsserted, kDerived, kWatcher };

const char* to_string(Provenance p);

struct Fact {
  Atom atom;
  Provenance provenance = Provenance::kAsserted;
  // 0 for asserted facts; derivation depth for derived ones; tick number for
  // watcher facts.
  int generation = 0;
};

// Horn rule: conjunction of antecedent atoms implies the consequent.
struct Rule {
  std::vector<std::string> vars;
  std::vector<Atom> antecedents;
  Atom consequent;

  Formula to_formula() const;
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct KbStats {
  std::size_t fact_count = 0;
  std::size_t rule_count = 0;
  std::vector<std::string> predicate_names;
  std::map<std::string, std::size_t> facts_per_predicate;
  std::size_t derived_count = 0;
  std::size_t watcher_fact_count = 0;
  bool saturation_truncated = false;
};

// Raised for formulas the chaining engine cannot store.
class UnsupportedFormula : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FactMatch {
  Fact fact;
  Substitution bindings;
};

// Ground facts plus Horn rules. A value type: every update returns a new
// knowledge base and leaves the original untouched.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Adds a ground atom, a Horn rule, or a conjunction of those. Re-asserting
  // something already present is a no-op (first provenance wins).
  [[nodiscard]] KnowledgeBase with_formula(const Formula& f) const;
  [[nodiscard]] KnowledgeBase with_fact(const Atom& atom, Provenance provenance = Provenance::kAsserted,
                                        int generation = 0) const;
  [[nodiscard]] KnowledgeBase with_facts(const std::vector<Fact>& facts) const;
  [[nodiscard]] KnowledgeBase with_rule(const Rule& rule) const;
  [[nodiscard]] KnowledgeBase with_saturation_truncated(bool truncated) const;

  const std::vector<Fact>& facts() const { return facts_; }
  const std::vector<Rule>& rules() const { return rules_; }
  bool contains(const Atom& ground_atom) const { return fact_index_.count(ground_atom) != 0; }
  const Fact* find(const Atom& ground_atom) const;

  // Insertion-order indices of facts with the given predicate.
  const std::vector<std::size_t>& facts_with_predicate(const std::string& predicate) const;

  // Every fact unifying with pattern, with its most general unifier, in
  // insertion order.
  std::vector<FactMatch> facts_matching(const Atom& pattern) const;

  KbStats stats() const;
  int next_generation() const;
  bool saturation_truncated() const { return saturation_truncated_; }

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b);

 private:
  bool insert_fact(const Fact& fact);
  bool insert_rule(const Rule& rule);
  void insert_formula(const Formula& f);

  std::vector<Fact> facts_;
  std::map<Atom, std::size_t> fact_index_;
  std::map<std::string, std::vector<std::size_t>> by_predicate_;
  std::vector<Rule> rules_;
  bool saturation_truncated_ = false;
};

KnowledgeBase assert_formula(const KnowledgeBase& kb, const Formula& f);

// Converts a Horn-shaped formula to a rule; throws UnsupportedFormula.
Rule rule_from_formula(const Formula& f);

// Loads the KB file format: one S-expression per assertion, `;` comments.
// Throws ParseError (with line) for syntax and UnsupportedFormula-derived
// errors rewrapped as ParseError carrying the offending line.
KnowledgeBase load_kb(std::string_view text, KnowledgeBase base = {});

// Facts in insertion order, then rules; reloadable with load_kb.
std::string save_kb(const KnowledgeBase& kb);

}  // namespace pcalc
