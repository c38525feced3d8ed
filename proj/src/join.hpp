#pragma once

#include <functional>
#include <vector>

#include "pcalc/knowledge_base.hpp"

namespace pcalc::detail {

// Enumerates every substitution that maps all of rule's antecedents onto
// facts of kb, left to right, in fact insertion order. `premises` holds the
// fact index matched by each antecedent.
inline void for_each_instantiation(
    const KnowledgeBase& kb, const Rule& rule,
    const std::function<void(const Substitution&, const std::vector<std::size_t>& premises)>& visit) {
  std::vector<std::size_t> premises(rule.antecedents.size());
  std::function<void(std::size_t, const Substitution&)> step = [&](std::size_t i, const Substitution& s) {
    if (i == rule.antecedents.size()) {
      visit(s, premises);
      return;
    }
    const Atom pattern = s.apply(rule.antecedents[i]);
    for (std::size_t idx : kb.facts_with_predicate(pattern.predicate)) {
      if (auto next = unify(pattern, kb.facts()[idx].atom, s)) {
        premises[i] = idx;
        step(i + 1, *next);
      }
    }
  };
  step(0, Substitution{});
}

}  // namespace pcalc::detail
