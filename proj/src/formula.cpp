#include "pcalc/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pcalc {

Formula Formula::atomic(Atom atom) {
  Formula f;
  f.kind_ = FormulaKind::kAtom;
  f.atom_ = std::move(atom);
  return f;
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw std::invalid_argument("and requires at least two operands");
  Formula f;
  f.kind_ = FormulaKind::kAnd;
  f.children_ = std::move(operands);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw std::invalid_argument("or requires at least two operands");
  Formula f;
  f.kind_ = FormulaKind::kOr;
  f.children_ = std::move(operands);
  return f;
}

Formula Formula::negation(Formula operand) {
  Formula f;
  f.kind_ = FormulaKind::kNot;
  f.children_.push_back(std::move(operand));
  return f;
}

Formula Formula::implication(Formula antecedent, Formula consequent) {
  Formula f;
  f.kind_ = FormulaKind::kIf;
  f.children_.push_back(std::move(antecedent));
  f.children_.push_back(std::move(consequent));
  return f;
}

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) throw std::invalid_argument("forall requires at least one variable");
  Formula f;
  f.kind_ = FormulaKind::kForAll;
  f.vars_ = std::move(vars);
  f.children_.push_back(std::move(body));
  return f;
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) throw std::invalid_argument("exists requires at least one variable");
  Formula f;
  f.kind_ = FormulaKind::kExists;
  f.vars_ = std::move(vars);
  f.children_.push_back(std::move(body));
  return f;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::kAtom:
      for (const auto& v : f.atom().variables()) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end()) {
          out.push_back(v);
        }
      }
      return;
    case FormulaKind::kForAll:
    case FormulaKind::kExists: {
      const auto mark = bound.size();
      bound.insert(bound.end(), f.vars().begin(), f.vars().end());
      collect_free(f.body(), bound, out);
      bound.resize(mark);
      return;
    }
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out);
  }
}

void collect_term_symbols(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) return;
  if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
  for (const auto& a : t.args()) collect_term_symbols(a, out);
}

void collect_symbols(const Formula& f, std::vector<std::string>& out) {
  if (f.is_atom()) {
    if (std::find(out.begin(), out.end(), f.atom().predicate) == out.end()) {
      out.push_back(f.atom().predicate);
    }
    for (const auto& t : f.atom().args) collect_term_symbols(t, out);
    return;
  }
  for (const auto& c : f.children()) collect_symbols(c, out);
}

}  // namespace

std::vector<std::string> Formula::free_variables() const {
  std::vector<std::string> bound, out;
  collect_free(*this, bound, out);
  return out;
}

std::vector<std::string> Formula::symbols() const {
  std::vector<std::string> out;
  collect_symbols(*this, out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  return a.kind_ == b.kind_ && a.atom_ == b.atom_ && a.vars_ == b.vars_ &&
         a.children_ == b.children_;
}

const char* keyword(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::kAnd: return "and";
    case FormulaKind::kOr: return "or";
    case FormulaKind::kNot: return "not";
    case FormulaKind::kIf: return "if";
    case FormulaKind::kForAll: return "forall";
    case FormulaKind::kExists: return "exists";
    case FormulaKind::kAtom: break;
  }
  return "";
}

std::string render(const Formula& f) {
  if (f.is_atom()) return render(f.atom());
  std::string out = "(";
  out += keyword(f.kind());
  if (f.kind() == FormulaKind::kForAll || f.kind() == FormulaKind::kExists) {
    out += " (";
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
      if (i > 0) out += " ";
      out += f.vars()[i];
    }
    out += ")";
  }
  for (const auto& c : f.children()) out += " " + render(c);
  return out + ")";
}

}  // namespace pcalc
