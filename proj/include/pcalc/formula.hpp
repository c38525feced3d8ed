#pragma once

#include <string>
#include <vector>

#include "pcalc/term.hpp"

namespace pcalc {

enum class FormulaKind { kAtom, kAnd, kOr, kNot, kIf, kForAll, kExists };

// Predicate-calculus formula tree. Values are immutable once built; the
// factories reject malformed shapes (e.g. a conjunction with one operand).
class Formula {
 public:
  static Formula atomic(Atom atom);
  static Formula conjunction(std::vector<Formula> operands);
  static Formula disjunction(std::vector<Formula> operands);
  static Formula negation(Formula operand);
  static Formula implication(Formula antecedent, Formula consequent);
  static Formula forall(std::vector<std::string> vars, Formula body);
  static Formula exists(std::vector<std::string> vars, Formula body);

  FormulaKind kind() const { return kind_; }
  bool is_atom() const { return kind_ == FormulaKind::kAtom; }

  const Atom& atom() const { return atom_; }
  const std::vector<Formula>& children() const { return children_; }
  const std::vector<std::string>& vars() const { return vars_; }

  // Body of a quantifier or operand of a negation.
  const Formula& body() const { return children_.front(); }
  const Formula& antecedent() const { return children_[0]; }
  const Formula& consequent() const { return children_[1]; }

  // Variables occurring free (not bound by an enclosing quantifier).
  std::vector<std::string> free_variables() const;
  // Predicate, functor and constant symbols (no variables), first occurrence order.
  std::vector<std::string> symbols() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula() = default;

  FormulaKind kind_ = FormulaKind::kAtom;
  Atom atom_;
  std::vector<std::string> vars_;
  std::vector<Formula> children_;
};

const char* keyword(FormulaKind kind);

// Canonical single-space S-expression.
std::string render(const Formula& f);

}  // namespace pcalc
