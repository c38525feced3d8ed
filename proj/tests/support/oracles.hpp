#pragma once

// Brute-force reference implementations used to cross-check the engine.
// Nothing here calls into unification, the knowledge base or the chaining
// code; only the plain data types (Term, Atom) are shared.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pcalc/term.hpp"

namespace pcalc::oracle {

using Assignment = std::map<std::string, Term>;

Term substitute(const Term& t, const Assignment& a);
Atom substitute(const Atom& a, const Assignment& s);

// ---- Horn programs -------------------------------------------------------

struct HornClause {
  std::vector<std::string> vars;
  std::vector<Atom> body;
  Atom head;
};

struct HornProgram {
  std::vector<Atom> facts;
  std::vector<HornClause> rules;

  void append(const HornProgram& other);
};

std::vector<std::string> constants_of(const HornProgram& p);
// predicate -> arity
std::map<std::string, std::size_t> predicates_of(const HornProgram& p);
std::vector<Atom> herbrand_base(const HornProgram& p);

// Every rule instance over the program's constants, in rule order.
struct GroundRule {
  std::size_t rule = 0;
  std::vector<Atom> body;
  Atom head;
};
std::vector<GroundRule> ground_rules(const HornProgram& p);

// Least model by naive rounds. Each atom maps to the round it first appeared
// in plus one, which is its minimum proof height (facts: 1).
std::map<Atom, int> naive_fixpoint(const HornProgram& p);

// ---- unification ---------------------------------------------------------

// a, b, c and f(.) nested up to depth 3.
std::vector<Term> term_universe();

// Every assignment of the atoms' variables to universe terms under which
// the two atoms become identical.
std::vector<Assignment> brute_force_unifiers(const Atom& a, const Atom& b, const std::vector<Term>& universe);

// One-way matching: extends `tau` so that substitute(pattern, tau) == target.
bool match(const Term& pattern, const Term& target, Assignment& tau);

// theta is an instance of sigma on `vars`: some tau has
// theta(v) == tau(sigma(v)) for every v.
bool is_instance(const Assignment& theta, const Assignment& sigma, const std::vector<std::string>& vars);

// Equality up to a bijective variable renaming.
bool variant(const Atom& a, const Atom& b);

// ---- relations -----------------------------------------------------------

struct Clause {
  std::string law;
  std::vector<std::string> args;
  std::string output;
};

struct RelationFacts {
  bool total = false;
  bool deterministic = false;
  bool injective = false;
  bool onto = false;
};

RelationFacts check_relation(const std::vector<Clause>& clauses, const std::vector<std::string>& domain,
                             const std::vector<std::string>& codomain);

// ---- explanations --------------------------------------------------------

using IdSet = std::set<std::string>;

// Every minimal subset of at most `cap` sentences whose union derives goal.
std::vector<IdSet> minimal_explanations(const std::vector<std::pair<std::string, HornProgram>>& sentences,
                                        const Atom& goal, int cap);

// ---- graphs --------------------------------------------------------------

// Nodes lying on some directed cycle, found by enumerating simple paths.
std::set<std::size_t> nodes_on_cycles(std::size_t n, const std::set<std::pair<std::size_t, std::size_t>>& edges);

// ---- watcher -------------------------------------------------------------

struct WatchSimulation {
  std::vector<int> emitted;
  std::vector<std::size_t> pre_tick_fact_counts;
  int awareness_generation = 0;
};

// Replays the watcher by hand over rendered facts. `facts` are the initial
// facts, `rule_count` the number of rules (the watcher never adds rules).
WatchSimulation simulate_watcher(const std::vector<Atom>& facts, std::size_t rule_count, int generations,
                                 int threshold);

}  // namespace pcalc::oracle
