#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcalc/formula.hpp"
#include "pcalc/term.hpp"

namespace pcalc {

// Finite map from variable names to terms, kept in solved form: no bound
// variable occurs in any binding's term, so application is idempotent.
class Substitution {
 public:
  Substitution() = default;

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  const Term* lookup(const std::string& var) const;

  // Adds var -> term, composing it into the existing bindings. Returns false
  // (and leaves *this untouched) when the occurs check fails or var is bound.
  bool bind(const std::string& var, const Term& term);

  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;

  // Keeps only bindings for the listed variables.
  Substitution restricted_to(const std::vector<std::string>& vars) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

// Replaces free occurrences only. Quantified variables shield their bodies;
// a bound variable that would capture a substituted term is renamed first.
Formula apply_substitution(const Formula& f, const Substitution& s);

// Most general unifier of a and b extending s, or nullopt when none exists
// (predicate/arity mismatch, constant clash, occurs check).
std::optional<Substitution> unify(const Atom& a, const Atom& b, const Substitution& s = {});
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s = {});

// "{?x↦Clyde, ?y↦gray}" in variable-name order; "{}" when empty.
std::string render(const Substitution& s);

}  // namespace pcalc
