#include "pcalc/parser.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace pcalc {
namespace {

bool is_keyword(const std::string& s) {
  return s == "and" || s == "or" || s == "not" || s == "if" || s == "forall" || s == "exists";
}

class FormulaBuilder {
 public:
  explicit FormulaBuilder(ParseMode mode) : mode_(mode) {}

  Formula build(const SExpr& e) {
    if (e.is_symbol()) fail("expected a parenthesized formula", e.offset);
    const SExpr& head = e.items.front();
    if (head.is_symbol() && is_keyword(head.symbol)) return build_compound(e);
    return Formula::atomic(build_atom(e));
  }

  Atom build_atom(const SExpr& e) {
    if (e.is_symbol()) fail("expected a parenthesized atom", e.offset);
    const SExpr& head = e.items.front();
    if (!head.is_symbol()) fail("predicate must be a symbol", head.offset);
    Atom atom{head.symbol, {}};
    for (std::size_t i = 1; i < e.items.size(); ++i) atom.args.push_back(build_term(e.items[i]));
    return atom;
  }

 private:
  [[noreturn]] static void fail(const std::string& message, std::size_t offset) {
    throw ParseError(message, offset);
  }

  bool is_bound(const std::string& name) const {
    return std::find(bound_.begin(), bound_.end(), name) != bound_.end();
  }

  Term build_term(const SExpr& e) {
    if (e.is_list()) {
      const SExpr& head = e.items.front();
      if (!head.is_symbol()) fail("function symbol must be a symbol", head.offset);
      std::vector<Term> args;
      for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(build_term(e.items[i]));
      return Term::compound(head.symbol, std::move(args));
    }
    const std::string& name = e.symbol;
    if (is_bound(name)) return Term::variable(name);
    if (name.front() == '?') {
      if (name.size() == 1) fail("empty variable name", e.offset);
      if (mode_ == ParseMode::kClosed) fail("unbound variable " + name, e.offset);
      return Term::variable(name);
    }
    return Term::constant(name);
  }

  Formula build_compound(const SExpr& e) {
    const std::string& op = e.items.front().symbol;
    const std::size_t operands = e.items.size() - 1;
    if (op == "and" || op == "or") {
      if (operands < 2) fail(op + " requires at least two operands", e.offset);
      std::vector<Formula> kids;
      for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(build(e.items[i]));
      return op == "and" ? Formula::conjunction(std::move(kids))
                         : Formula::disjunction(std::move(kids));
    }
    if (op == "not") {
      if (operands != 1) fail("not requires exactly one operand", e.offset);
      return Formula::negation(build(e.items[1]));
    }
    if (op == "if") {
      if (operands != 2) fail("if requires an antecedent and a consequent", e.offset);
      Formula antecedent = build(e.items[1]);
      return Formula::implication(std::move(antecedent), build(e.items[2]));
    }
    // forall / exists
    if (operands != 2) fail(op + " requires a variable list and a body", e.offset);
    const SExpr& binders = e.items[1];
    if (!binders.is_list()) fail(op + " requires a parenthesized variable list", binders.offset);
    std::vector<std::string> vars;
    for (const auto& v : binders.items) {
      if (!v.is_symbol()) fail("quantified variable must be a symbol", v.offset);
      if (std::find(vars.begin(), vars.end(), v.symbol) != vars.end()) {
        fail("duplicate quantified variable " + v.symbol, v.offset);
      }
      vars.push_back(v.symbol);
    }
    const auto mark = bound_.size();
    bound_.insert(bound_.end(), vars.begin(), vars.end());
    Formula body = build(e.items[2]);
    bound_.resize(mark);
    return op == "forall" ? Formula::forall(std::move(vars), std::move(body))
                          : Formula::exists(std::move(vars), std::move(body));
  }

  ParseMode mode_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula formula_from_sexpr(const SExpr& e, ParseMode mode) {
  return FormulaBuilder(mode).build(e);
}

Formula parse(std::string_view text, ParseMode mode) {
  try {
    return formula_from_sexpr(read_one(text), mode);
  } catch (const ParseError& e) {
    throw locate(e, text);
  }
}

Atom parse_goal(std::string_view text) {
  try {
    const SExpr e = read_one(text);
    if (e.head_is("Show")) {
      if (e.items.size() != 2) throw ParseError("Show takes exactly one goal", e.offset);
      return FormulaBuilder(ParseMode::kQuery).build_atom(e.items[1]);
    }
    if (e.is_list() && e.items.front().is_symbol() && is_keyword(e.items.front().symbol)) {
      throw ParseError("goal must be an atom", e.offset);
    }
    return FormulaBuilder(ParseMode::kQuery).build_atom(e);
  } catch (const ParseError& e) {
    throw locate(e, text);
  }
}

ParseError locate(const ParseError& e, std::string_view text) {
  return ParseError(e.message(), e.offset(), line_of(text, e.offset()));
}

}  // namespace pcalc
