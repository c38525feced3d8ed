#include "pcalc/substitution.hpp"

#include <algorithm>
#include <utility>

namespace pcalc {

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  if (t.is_variable()) {
    const Term* bound = lookup(t.name());
    return bound ? *bound : t;
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply(a));
  return Term::compound(t.name(), std::move(args));
}

Atom Substitution::apply(const Atom& a) const {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply(t));
  return out;
}

bool Substitution::bind(const std::string& var, const Term& term) {
  if (bindings_.count(var)) return false;
  const Term resolved = apply(term);
  if (resolved.is_variable() && resolved.name() == var) return true;
  if (resolved.contains_variable(var)) return false;
  Substitution single;
  single.bindings_.emplace(var, resolved);
  for (auto& [name, value] : bindings_) value = single.apply(value);
  bindings_.emplace(var, resolved);
  return true;
}

Substitution Substitution::restricted_to(const std::vector<std::string>& vars) const {
  Substitution out;
  for (const auto& v : vars) {
    if (const Term* t = lookup(v)) out.bindings_.emplace(v, *t);
  }
  return out;
}

namespace {

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  const Term x = s.apply(a);
  const Term y = s.apply(b);
  if (x == y) return true;
  if (x.is_variable()) return s.bind(x.name(), y);
  if (y.is_variable()) return s.bind(y.name(), x);
  if (x.kind() != y.kind() || x.name() != y.name() || x.args().size() != y.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    if (!unify_into(x.args()[i], y.args()[i], s)) return false;
  }
  return true;
}

bool mentions_any(const Term& t, const std::vector<std::string>& names) {
  return std::any_of(names.begin(), names.end(),
                     [&](const std::string& n) { return t.contains_variable(n); });
}

std::string fresh_name(const std::string& base, const Formula& f, const Substitution& s) {
  const auto in_use = [&](const std::string& n) {
    const auto fv = f.free_variables();
    if (std::find(fv.begin(), fv.end(), n) != fv.end()) return true;
    for (const auto& [v, t] : s.bindings()) {
      if (v == n || t.contains_variable(n)) return true;
    }
    return false;
  };
  for (int i = 1;; ++i) {
    std::string candidate = base + "'" + std::to_string(i);
    if (!in_use(candidate)) return candidate;
  }
}

}  // namespace

Formula apply_substitution(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::kAtom:
      return Formula::atomic(s.apply(f.atom()));
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(apply_substitution(c, s));
      return f.kind() == FormulaKind::kAnd ? Formula::conjunction(std::move(kids))
                                           : Formula::disjunction(std::move(kids));
    }
    case FormulaKind::kNot:
      return Formula::negation(apply_substitution(f.body(), s));
    case FormulaKind::kIf:
      return Formula::implication(apply_substitution(f.antecedent(), s),
                                  apply_substitution(f.consequent(), s));
    case FormulaKind::kForAll:
    case FormulaKind::kExists: {
      // Drop bindings for shadowed variables, then alpha-rename any bound
      // variable that a remaining binding would capture.
      Substitution inner;
      const auto free = f.body().free_variables();
      std::vector<std::string> vars = f.vars();
      for (const auto& [v, t] : s.bindings()) {
        if (std::find(vars.begin(), vars.end(), v) != vars.end()) continue;
        if (std::find(free.begin(), free.end(), v) == free.end()) continue;
        inner.bind(v, t);
      }
      Formula body = f.body();
      for (auto& var : vars) {
        bool captures = false;
        for (const auto& [v, t] : inner.bindings()) captures = captures || mentions_any(t, {var});
        if (!captures) continue;
        const std::string renamed = fresh_name(var, f, s);
        Substitution rename;
        rename.bind(var, Term::variable(renamed));
        body = apply_substitution(body, rename);
        var = renamed;
      }
      body = apply_substitution(body, inner);
      return f.kind() == FormulaKind::kForAll ? Formula::forall(std::move(vars), std::move(body))
                                              : Formula::exists(std::move(vars), std::move(body));
    }
  }
  return f;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s) {
  Substitution out = s;
  if (!unify_into(a, b, out)) return std::nullopt;
  return out;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b, const Substitution& s) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  Substitution out = s;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_into(a.args[i], b.args[i], out)) return std::nullopt;
  }
  return out;
}

std::string render(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v + "↦" + render(t);
  }
  return out + "}";
}

}  // namespace pcalc
