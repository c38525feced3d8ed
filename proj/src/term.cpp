#include "pcalc/term.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace pcalc {

Term::Term(TermKind kind, std::string name, std::vector<Term> args)
    : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

Term Term::constant(std::string name) { return Term(TermKind::kConstant, std::move(name), {}); }

Term Term::variable(std::string name) { return Term(TermKind::kVariable, std::move(name), {}); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  return Term(TermKind::kCompound, std::move(functor), std::move(args));
}

bool Term::ground() const {
  if (kind_ == TermKind::kVariable) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& t) { return t.ground(); });
}

bool Term::contains_variable(const std::string& var) const {
  if (kind_ == TermKind::kVariable) return name_ == var;
  return std::any_of(args_.begin(), args_.end(),
                     [&](const Term& t) { return t.contains_variable(var); });
}

std::size_t Term::depth() const {
  std::size_t deepest = 0;
  for (const auto& a : args_) deepest = std::max(deepest, a.depth());
  return deepest + 1;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (kind_ == TermKind::kVariable) {
    if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
    return;
  }
  for (const auto& a : args_) a.collect_variables(out);
}

bool operator==(const Term& a, const Term& b) {
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.name_.compare(b.name_); c != 0) return c < 0 ? std::strong_ordering::less
                                                              : std::strong_ordering::greater;
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i) {
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool Atom::ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
}

std::size_t Atom::depth() const {
  std::size_t deepest = 0;
  for (const auto& a : args) deepest = std::max(deepest, a.depth());
  return deepest;
}

std::vector<std::string> Atom::variables() const {
  std::vector<std::string> out;
  for (const auto& a : args) a.collect_variables(out);
  return out;
}

bool operator==(const Atom& a, const Atom& b) {
  return a.predicate == b.predicate && a.args == b.args;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate.compare(b.predicate); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string render(const Term& t) {
  if (!t.is_compound()) return t.name();
  std::string out = "(" + t.name();
  for (const auto& a : t.args()) out += " " + render(a);
  return out + ")";
}

std::string render(const Atom& a) {
  std::string out = "(" + a.predicate;
  for (const auto& t : a.args) out += " " + render(t);
  return out + ")";
}

namespace {

bool variant_terms(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                   std::map<std::string, std::string>& back) {
  if (a.kind() != b.kind()) return false;
  if (a.is_variable()) {
    auto [f, f_new] = fwd.emplace(a.name(), b.name());
    auto [r, r_new] = back.emplace(b.name(), a.name());
    return f->second == b.name() && r->second == a.name();
  }
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!variant_terms(a.args()[i], b.args()[i], fwd, back)) return false;
  }
  return true;
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& names) {
  if (t.is_variable()) return Term::variable(names.at(t.name()));
  if (t.is_constant()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_term(a, names));
  return Term::compound(t.name(), std::move(args));
}

}  // namespace

bool is_variant(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
  std::map<std::string, std::string> fwd, back;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!variant_terms(a.args[i], b.args[i], fwd, back)) return false;
  }
  return true;
}

Atom normalize_variables(const Atom& a) {
  std::map<std::string, std::string> names;
  const auto vars = a.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) names[vars[i]] = "?_" + std::to_string(i);
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(rename_term(t, names));
  return out;
}

}  // namespace pcalc
