#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace pcalc {

enum class TermKind { kConstant, kVariable, kCompound };

// A first-order term. Variables are identified by name; a name beginning with
// `?` is a query variable, any other variable name was bound by a quantifier.
class Term {
 public:
  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);

  TermKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_variable() const { return kind_ == TermKind::kVariable; }
  bool is_constant() const { return kind_ == TermKind::kConstant; }
  bool is_compound() const { return kind_ == TermKind::kCompound; }

  bool ground() const;
  bool contains_variable(const std::string& var) const;
  // Constants and variables have depth 1.
  std::size_t depth() const;
  void collect_variables(std::vector<std::string>& out) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(TermKind kind, std::string name, std::vector<Term> args);

  TermKind kind_ = TermKind::kConstant;
  std::string name_;
  std::vector<Term> args_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool ground() const;
  // Depth of the deepest argument; zero-arity atoms have depth 0.
  std::size_t depth() const;
  // Distinct variable names in order of first occurrence.
  std::vector<std::string> variables() const;

  friend bool operator==(const Atom& a, const Atom& b);
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

std::string render(const Term& t);
std::string render(const Atom& a);

// True when `a` and `b` are equal up to a bijective renaming of variables.
bool is_variant(const Atom& a, const Atom& b);

// Renames variables to ?_0, ?_1, ... in order of first occurrence.
Atom normalize_variables(const Atom& a);

}  // namespace pcalc
