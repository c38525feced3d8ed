#include "pcalc/knowledge_base.hpp"

#include <algorithm>
#include <utility>

#include "pcalc/parser.hpp"

namespace pcalc {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kAsserted: return "asserted";
    case Provenance::kDerived: return "derived";
    case Provenance::kWatcher: return "watcher";
  }
  return "";
}

Formula Rule::to_formula() const {
  Formula body = [&] {
    if (antecedents.size() == 1) return Formula::atomic(antecedents.front());
    std::vector<Formula> parts;
    for (const auto& a : antecedents) parts.push_back(Formula::atomic(a));
    return Formula::conjunction(std::move(parts));
  }();
  Formula implication = Formula::implication(std::move(body), Formula::atomic(consequent));
  if (vars.empty()) return implication;
  return Formula::forall(vars, std::move(implication));
}

Rule rule_from_formula(const Formula& f) {
  Rule rule;
  const Formula* shape = &f;
  if (shape->kind() == FormulaKind::kForAll) {
    rule.vars = shape->vars();
    shape = &shape->body();
  }
  if (shape->kind() != FormulaKind::kIf) {
    throw UnsupportedFormula(std::string("unsupported for chaining: expected a forall/if rule, found ") +
                             (shape->is_atom() ? "atom" : keyword(shape->kind())));
  }
  const Formula& lhs = shape->antecedent();
  if (lhs.is_atom()) {
    rule.antecedents.push_back(lhs.atom());
  } else if (lhs.kind() == FormulaKind::kAnd &&
             std::all_of(lhs.children().begin(), lhs.children().end(),
                         [](const Formula& c) { return c.is_atom(); })) {
    for (const auto& c : lhs.children()) rule.antecedents.push_back(c.atom());
  } else {
    throw UnsupportedFormula(std::string("unsupported for chaining: antecedent must be an atom or a "
                                         "conjunction of atoms, found ") +
                             keyword(lhs.kind()));
  }
  if (!shape->consequent().is_atom()) {
    throw UnsupportedFormula(std::string("unsupported for chaining: consequent must be an atom, found ") +
                             keyword(shape->consequent().kind()));
  }
  rule.consequent = shape->consequent().atom();

  std::vector<std::string> body_vars;
  for (const auto& a : rule.antecedents) {
    for (const auto& v : a.variables()) {
      if (std::find(body_vars.begin(), body_vars.end(), v) == body_vars.end()) body_vars.push_back(v);
    }
  }
  for (const auto& v : rule.consequent.variables()) {
    if (std::find(body_vars.begin(), body_vars.end(), v) == body_vars.end()) {
      throw UnsupportedFormula("unsupported for chaining: consequent variable " + v +
                               " does not occur in the antecedent");
    }
  }
  // Free `?` variables in a rule act as if universally bound.
  for (const auto& v : body_vars) {
    if (std::find(rule.vars.begin(), rule.vars.end(), v) == rule.vars.end()) rule.vars.push_back(v);
  }
  return rule;
}

bool KnowledgeBase::insert_fact(const Fact& fact) {
  if (!fact.atom.ground()) {
    throw UnsupportedFormula("non-ground fact " + render(fact.atom));
  }
  if (fact_index_.count(fact.atom)) return false;
  fact_index_.emplace(fact.atom, facts_.size());
  by_predicate_[fact.atom.predicate].push_back(facts_.size());
  facts_.push_back(fact);
  return true;
}

bool KnowledgeBase::insert_rule(const Rule& rule) {
  if (std::find(rules_.begin(), rules_.end(), rule) != rules_.end()) return false;
  rules_.push_back(rule);
  return true;
}

void KnowledgeBase::insert_formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::kAtom:
      insert_fact(Fact{f.atom(), Provenance::kAsserted, 0});
      return;
    case FormulaKind::kAnd:
      for (const auto& c : f.children()) insert_formula(c);
      return;
    case FormulaKind::kForAll:
    case FormulaKind::kIf:
      insert_rule(rule_from_formula(f));
      return;
    default:
      throw UnsupportedFormula(std::string("unsupported for chaining: ") + keyword(f.kind()));
  }
}

KnowledgeBase KnowledgeBase::with_formula(const Formula& f) const {
  KnowledgeBase next = *this;
  next.insert_formula(f);
  return next;
}

KnowledgeBase KnowledgeBase::with_fact(const Atom& atom, Provenance provenance, int generation) const {
  KnowledgeBase next = *this;
  next.insert_fact(Fact{atom, provenance, generation});
  return next;
}

KnowledgeBase KnowledgeBase::with_facts(const std::vector<Fact>& facts) const {
  KnowledgeBase next = *this;
  for (const auto& f : facts) next.insert_fact(f);
  return next;
}

KnowledgeBase KnowledgeBase::with_rule(const Rule& rule) const {
  KnowledgeBase next = *this;
  next.insert_rule(rule);
  return next;
}

KnowledgeBase KnowledgeBase::with_saturation_truncated(bool truncated) const {
  KnowledgeBase next = *this;
  next.saturation_truncated_ = truncated;
  return next;
}

const Fact* KnowledgeBase::find(const Atom& ground_atom) const {
  auto it = fact_index_.find(ground_atom);
  return it == fact_index_.end() ? nullptr : &facts_[it->second];
}

const std::vector<std::size_t>& KnowledgeBase::facts_with_predicate(const std::string& predicate) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_predicate_.find(predicate);
  return it == by_predicate_.end() ? kNone : it->second;
}

std::vector<FactMatch> KnowledgeBase::facts_matching(const Atom& pattern) const {
  std::vector<FactMatch> out;
  for (std::size_t i : facts_with_predicate(pattern.predicate)) {
    if (auto s = unify(pattern, facts_[i].atom)) {
      out.push_back(FactMatch{facts_[i], s->restricted_to(pattern.variables())});
    }
  }
  return out;
}

KbStats KnowledgeBase::stats() const {
  KbStats s;
  s.fact_count = facts_.size();
  s.rule_count = rules_.size();
  for (const auto& [pred, indices] : by_predicate_) {
    s.predicate_names.push_back(pred);
    s.facts_per_predicate.emplace(pred, indices.size());
  }
  for (const auto& f : facts_) {
    if (f.provenance == Provenance::kDerived) ++s.derived_count;
    if (f.provenance == Provenance::kWatcher) ++s.watcher_fact_count;
  }
  s.saturation_truncated = saturation_truncated_;
  return s;
}

int KnowledgeBase::next_generation() const {
  int latest = 0;
  for (const auto& f : facts_) latest = std::max(latest, f.generation);
  return latest + 1;
}

bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
  if (a.facts_.size() != b.facts_.size() || a.rules_ != b.rules_) return false;
  for (std::size_t i = 0; i < a.facts_.size(); ++i) {
    const Fact& x = a.facts_[i];
    const Fact& y = b.facts_[i];
    if (x.atom != y.atom || x.provenance != y.provenance || x.generation != y.generation) return false;
  }
  return a.saturation_truncated_ == b.saturation_truncated_;
}

KnowledgeBase assert_formula(const KnowledgeBase& kb, const Formula& f) { return kb.with_formula(f); }

KnowledgeBase load_kb(std::string_view text, KnowledgeBase base) {
  std::vector<SExpr> forms;
  try {
    forms = read_all(text);
  } catch (const ParseError& e) {
    throw locate(e, text);
  }
  for (const auto& form : forms) {
    try {
      base = base.with_formula(formula_from_sexpr(form, ParseMode::kClosed));
    } catch (const ParseError& e) {
      throw locate(e, text);
    } catch (const UnsupportedFormula& e) {
      throw ParseError(e.what(), form.offset, line_of(text, form.offset));
    }
  }
  return base;
}

std::string save_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const auto& f : kb.facts()) {
    out += render(f.atom);
    if (f.provenance != Provenance::kAsserted) out += std::string(" ; ") + to_string(f.provenance);
    out += "\n";
  }
  for (const auto& r : kb.rules()) out += render(r.to_formula()) + "\n";
  return out;
}

}  // namespace pcalc
