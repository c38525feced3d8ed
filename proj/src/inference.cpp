#include "pcalc/inference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "join.hpp"

namespace pcalc {

void ChainConfig::validate() const {
  if (depth_limit < 1) throw std::invalid_argument("depth limit must be at least 1");
  if (max_rounds < 1) throw std::invalid_argument("max rounds must be at least 1");
}

int ProofNode::height() const {
  int tallest = 0;
  for (const auto& c : children) tallest = std::max(tallest, c.height());
  return tallest + 1;
}

namespace {

struct SharedProof {
  Atom goal;
  ProofNode::Source source;
  std::size_t index;
  std::vector<std::shared_ptr<const SharedProof>> children;
};
using ProofPtr = std::shared_ptr<const SharedProof>;

ProofNode unshare(const SharedProof& p) {
  ProofNode node{p.goal, p.source, p.index, {}};
  node.children.reserve(p.children.size());
  for (const auto& c : p.children) node.children.push_back(unshare(*c));
  return node;
}

struct Answer {
  Atom atom;
  int height;
  ProofPtr proof;
};

// One call pattern (variables normalized) and everything proven for it.
struct Table {
  Atom pattern;
  int call_depth;
  std::vector<Answer> answers;
  std::map<Atom, std::size_t> index;
  // Instances found only through proofs taller than the depth limit.
  std::set<Atom> over_limit;
};

class TabledSolver {
 public:
  TabledSolver(const KnowledgeBase& kb, const ChainConfig& cfg) : kb_(kb), cfg_(cfg) {}

  std::size_t solve(const Atom& goal) {
    const std::size_t root = *table_for(goal, 0);
    do {
      changed_ = false;
      for (std::size_t t = 0; t < tables_.size(); ++t) evaluate(t);
    } while (changed_);
    return root;
  }

  const Table& table(std::size_t t) const { return tables_[t]; }

  bool limited() const {
    for (const auto& call : skipped_calls_) {
      if (!table_index_.count(call)) return true;
    }
    for (const auto& t : tables_) {
      for (const auto& a : t.over_limit) {
        if (!t.index.count(a)) return true;
      }
    }
    return false;
  }

 private:
  std::optional<std::size_t> table_for(const Atom& call, int depth) {
    Atom key = normalize_variables(call);
    if (auto it = table_index_.find(key); it != table_index_.end()) {
      Table& t = tables_[it->second];
      if (depth < t.call_depth) {
        t.call_depth = depth;
        changed_ = true;
      }
      return it->second;
    }
    // An answer to a call at depth d sits under d rule applications.
    if (depth > cfg_.depth_limit - 1) {
      skipped_calls_.insert(std::move(key));
      return std::nullopt;
    }
    table_index_.emplace(key, tables_.size());
    tables_.push_back(Table{std::move(key), depth, {}, {}, {}});
    changed_ = true;
    return tables_.size() - 1;
  }

  void add_answer(std::size_t t, Atom atom, int height, ProofPtr proof) {
    Table& table = tables_[t];
    if (auto it = table.index.find(atom); it != table.index.end()) {
      Answer& known = table.answers[it->second];
      if (height < known.height) {
        known.height = height;
        known.proof = std::move(proof);
        changed_ = true;
      }
      return;
    }
    if (height > cfg_.depth_limit) {
      table.over_limit.insert(std::move(atom));
      return;
    }
    table.index.emplace(atom, table.answers.size());
    table.answers.push_back(Answer{std::move(atom), height, std::move(proof)});
    changed_ = true;
  }

  Rule rename_apart(const Rule& rule) {
    Substitution fresh;
    const std::string suffix = "#" + std::to_string(++rename_counter_);
    for (const auto& v : rule.vars) fresh.bind(v, Term::variable(v + suffix));
    Rule out;
    out.vars = rule.vars;
    for (const auto& a : rule.antecedents) out.antecedents.push_back(fresh.apply(a));
    out.consequent = fresh.apply(rule.consequent);
    return out;
  }

  void evaluate(std::size_t t) {
    const Atom pattern = tables_[t].pattern;
    const int depth = tables_[t].call_depth;
    for (std::size_t idx : kb_.facts_with_predicate(pattern.predicate)) {
      const Atom& fact = kb_.facts()[idx].atom;
      if (unify(pattern, fact)) {
        add_answer(t, fact, 1,
                   std::make_shared<const SharedProof>(SharedProof{fact, ProofNode::Source::kFact, idx, {}}));
      }
    }
    for (std::size_t r = 0; r < kb_.rules().size(); ++r) {
      const Rule& original = kb_.rules()[r];
      if (original.consequent.predicate != pattern.predicate ||
          original.consequent.arity() != pattern.arity()) {
        continue;
      }
      const Rule rule = rename_apart(original);
      auto s = unify(rule.consequent, pattern);
      if (!s) continue;
      std::vector<ProofPtr> premises;
      join(t, pattern, depth, rule, r, 0, *s, premises);
    }
  }

  void join(std::size_t t, const Atom& pattern, int depth, const Rule& rule, std::size_t rule_index,
            std::size_t i, const Substitution& s, std::vector<ProofPtr>& premises) {
    if (i == rule.antecedents.size()) {
      int tallest = 0;
      for (const auto& p : premises) tallest = std::max(tallest, height_of(p));
      Atom answer = s.apply(pattern);
      auto proof = std::make_shared<const SharedProof>(
          SharedProof{answer, ProofNode::Source::kRule, rule_index, premises});
      add_answer(t, std::move(answer), tallest + 1, std::move(proof));
      return;
    }
    const Atom subgoal = s.apply(rule.antecedents[i]);
    const auto callee = table_for(subgoal, depth + 1);
    if (!callee) return;
    const std::size_t count = tables_[*callee].answers.size();
    for (std::size_t k = 0; k < count; ++k) {
      const Atom candidate = tables_[*callee].answers[k].atom;
      ProofPtr proof = tables_[*callee].answers[k].proof;
      if (auto next = unify(subgoal, candidate, s)) {
        premises.push_back(std::move(proof));
        join(t, pattern, depth, rule, rule_index, i + 1, *next, premises);
        premises.pop_back();
      }
    }
  }

  static int height_of(const ProofPtr& p) {
    int tallest = 0;
    for (const auto& c : p->children) tallest = std::max(tallest, height_of(c));
    return tallest + 1;
  }

  const KnowledgeBase& kb_;
  const ChainConfig& cfg_;
  std::vector<Table> tables_;
  std::map<Atom, std::size_t> table_index_;
  std::set<Atom> skipped_calls_;
  std::size_t rename_counter_ = 0;
  bool changed_ = false;
};

int fact_generation(const KnowledgeBase& kb, const ProofNode& node) {
  if (node.source == ProofNode::Source::kFact) return kb.facts()[node.index].generation;
  int latest = 0;
  for (const auto& c : node.children) latest = std::max(latest, fact_generation(kb, c));
  return latest + 1;
}

void strong_connect(std::size_t v, const std::vector<std::vector<std::size_t>>& adj,
                    std::vector<int>& index, std::vector<int>& low, std::vector<bool>& on_stack,
                    std::vector<std::size_t>& stack, int& counter,
                    std::vector<std::vector<std::size_t>>& components) {
  index[v] = low[v] = counter++;
  stack.push_back(v);
  on_stack[v] = true;
  for (std::size_t w : adj[v]) {
    if (index[w] < 0) {
      strong_connect(w, adj, index, low, on_stack, stack, counter, components);
      low[v] = std::min(low[v], low[w]);
    } else if (on_stack[w]) {
      low[v] = std::min(low[v], index[w]);
    }
  }
  if (low[v] == index[v]) {
    std::vector<std::size_t> component;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      component.push_back(w);
    } while (w != v);
    components.push_back(std::move(component));
  }
}

}  // namespace

ProofResult backward_chain(const KnowledgeBase& kb, const Atom& goal, const ChainConfig& cfg) {
  cfg.validate();
  TabledSolver solver(kb, cfg);
  const std::size_t root = solver.solve(goal);
  const auto goal_vars = goal.variables();

  ProofResult result;
  for (const auto& answer : solver.table(root).answers) {
    auto s = unify(goal, answer.atom);
    if (!s) continue;
    result.bindings.push_back(s->restricted_to(goal_vars));
    result.answers.push_back(answer.atom);
    result.proofs.push_back(unshare(*answer.proof));
  }
  result.proven = !result.answers.empty();
  result.depth_limited = solver.limited();
  return result;
}

ShowResult show(const KnowledgeBase& kb, const Atom& goal, const ChainConfig& cfg) {
  ShowResult out{backward_chain(kb, goal, cfg), kb};
  if (!cfg.cache_derived || !out.result.proven) return out;
  std::vector<Fact> learned;
  for (std::size_t i = 0; i < out.result.answers.size(); ++i) {
    const Atom& a = out.result.answers[i];
    if (!a.ground() || kb.contains(a)) continue;
    learned.push_back(Fact{a, Provenance::kDerived, fact_generation(kb, out.result.proofs[i])});
  }
  if (!learned.empty()) out.kb = kb.with_facts(learned);
  return out;
}

KnowledgeBase forward_chain(const KnowledgeBase& kb, const ChainConfig& cfg) {
  cfg.validate();
  KnowledgeBase current = kb;
  for (int round = 1;; ++round) {
    std::vector<Fact> fresh;
    std::set<Atom> seen;
    for (const auto& rule : current.rules()) {
      detail::for_each_instantiation(
          current, rule, [&](const Substitution& s, const std::vector<std::size_t>& premises) {
            Atom conclusion = s.apply(rule.consequent);
            if (current.contains(conclusion) || seen.count(conclusion)) return;
            int latest = 0;
            for (std::size_t p : premises) latest = std::max(latest, current.facts()[p].generation);
            seen.insert(conclusion);
            fresh.push_back(Fact{std::move(conclusion), Provenance::kDerived, latest + 1});
          });
    }
    if (fresh.empty()) return current.with_saturation_truncated(false);
    if (round > cfg.max_rounds) return current.with_saturation_truncated(true);
    current = current.with_facts(fresh);
  }
}

bool entails(const KnowledgeBase& kb, const Formula& f, const ChainConfig& cfg) {
  switch (f.kind()) {
    case FormulaKind::kAtom:
      if (!f.atom().ground()) throw UnsupportedFormula("entailment goal must be ground: " + render(f));
      return backward_chain(kb, f.atom(), cfg).proven;
    case FormulaKind::kAnd:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return entails(kb, c, cfg); });
    case FormulaKind::kForAll:
    case FormulaKind::kIf: {
      const Rule rule = rule_from_formula(f);
      Substitution frozen;
      for (const auto& v : rule.vars) frozen.bind(v, Term::constant("frozen!" + v));
      KnowledgeBase hypothetical = kb;
      for (const auto& a : rule.antecedents) hypothetical = hypothetical.with_fact(frozen.apply(a));
      return backward_chain(hypothetical, frozen.apply(rule.consequent), cfg).proven;
    }
    default:
      throw UnsupportedFormula(std::string("unsupported for entailment: ") + keyword(f.kind()));
  }
}

std::string render_proof(const ProofNode& node, int indent) {
  std::string out(static_cast<std::size_t>(indent) * 2, ' ');
  out += render(node.goal);
  if (node.source == ProofNode::Source::kFact) {
    out += "  ; fact\n";
  } else {
    out += "  ; rule " + std::to_string(node.index + 1) + "\n";
  }
  for (const auto& c : node.children) out += render_proof(c, indent + 1);
  return out;
}

Network semantic_network(const KnowledgeBase& kb, const ChainConfig& cfg) {
  const KnowledgeBase fixpoint = forward_chain(kb, cfg);
  Network net;
  for (const auto& f : fixpoint.facts()) net.nodes.push_back(f.atom);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edges;
  for (std::size_t r = 0; r < fixpoint.rules().size(); ++r) {
    const Rule& rule = fixpoint.rules()[r];
    detail::for_each_instantiation(
        fixpoint, rule, [&](const Substitution& s, const std::vector<std::size_t>& premises) {
          const Atom conclusion = s.apply(rule.consequent);
          const Fact* target = fixpoint.find(conclusion);
          if (target == nullptr) return;  // beyond a truncated saturation
          const auto to = static_cast<std::size_t>(target - fixpoint.facts().data());
          for (std::size_t from : premises) edges.emplace(std::make_pair(from, to), r);
        });
  }
  std::vector<std::vector<std::size_t>> adj(net.nodes.size());
  for (const auto& [link, rule] : edges) {
    net.edges.push_back(NetworkEdge{link.first, link.second, rule});
    adj[link.first].push_back(link.second);
  }

  std::vector<int> index(net.nodes.size(), -1), low(net.nodes.size(), 0);
  std::vector<bool> on_stack(net.nodes.size(), false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  int counter = 0;
  for (std::size_t v = 0; v < net.nodes.size(); ++v) {
    if (index[v] < 0) strong_connect(v, adj, index, low, on_stack, stack, counter, components);
  }
  for (const auto& c : components) {
    const bool self_loop = c.size() == 1 && edges.count({c[0], c[0]});
    if (c.size() > 1 || self_loop) net.loop_nodes.insert(net.loop_nodes.end(), c.begin(), c.end());
  }
  std::sort(net.loop_nodes.begin(), net.loop_nodes.end());
  return net;
}

}  // namespace pcalc
