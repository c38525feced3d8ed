#include "pcalc/reduction_analysis.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "pcalc/inference.hpp"
#include "pcalc/knowledge_base.hpp"

namespace pcalc {

const char* to_string(ExplanationStatus status) {
  switch (status) {
    case ExplanationStatus::kNone: return "none";
    case ExplanationStatus::kUnique: return "unique";
    case ExplanationStatus::kAmbiguous: return "ambiguous";
  }
  return "";
}

const char* to_string(FusionReason reason) {
  return reason == FusionReason::kCollapse ? "collapse" : "content-lost";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kInvalid: return "invalid";
    case Classification::kStandard: return "standard";
    case Classification::kStrong: return "strong";
  }
  return "";
}

StructuralReport structural_report(const Reduction& r, const Theory& reduced, const Theory& reducing) {
  StructuralReport rep;

  for (const auto& s : reduced.sentences) {
    const bool covered = std::any_of(r.laws.begin(), r.laws.end(), [&](const BridgeLaw& l) {
      return std::find(l.args.begin(), l.args.end(), s.id) != l.args.end();
    });
    if (!covered) rep.uncovered_reduced.push_back(s.id);
  }

  // (law, args) -> outputs, first-seen order.
  std::vector<TupleConflict> cases;
  for (const auto& l : r.laws) {
    auto it = std::find_if(cases.begin(), cases.end(),
                           [&](const TupleConflict& c) { return c.law == l.id && c.args == l.args; });
    if (it == cases.end()) {
      cases.push_back(TupleConflict{l.id, l.args, {l.output}});
    } else if (std::find(it->outputs.begin(), it->outputs.end(), l.output) == it->outputs.end()) {
      it->outputs.push_back(l.output);
    }
  }
  for (auto& c : cases) {
    if (c.outputs.size() > 1) rep.conflicts.push_back(std::move(c));
  }
  rep.is_map = rep.uncovered_reduced.empty() && rep.conflicts.empty();

  for (const auto& y : reducing.sentences) {
    OutputCollision col{y.id, {}};
    for (const auto& l : r.laws) {
      if (l.output != y.id) continue;
      if (std::find(col.tuples.begin(), col.tuples.end(), l.args) == col.tuples.end()) {
        col.tuples.push_back(l.args);
      }
    }
    if (col.tuples.empty()) rep.uncovered_reducing.push_back(y.id);
    if (col.tuples.size() > 1) rep.collisions.push_back(std::move(col));
  }
  rep.injective = rep.collisions.empty();
  rep.onto = rep.uncovered_reducing.empty();
  return rep;
}

bool explains(const Theory& t, const SentenceSet& subset, const Statement& g_in_t) {
  if (t.mode == TheoryMode::kAbstract) {
    return std::find(g_in_t.declared_explanations.begin(), g_in_t.declared_explanations.end(), subset) !=
           g_in_t.declared_explanations.end();
  }
  if (!g_in_t.concrete_form) return false;
  KnowledgeBase kb;
  for (const auto& s : t.sentences) {
    if (subset.count(s.id) && s.concrete_form) kb = kb.with_formula(*s.concrete_form);
  }
  return entails(kb, *g_in_t.concrete_form);
}

namespace {

ExplanationResult from_subsets(std::vector<SentenceSet> subsets) {
  std::sort(subsets.begin(), subsets.end());
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  ExplanationResult out;
  out.status = subsets.empty()       ? ExplanationStatus::kNone
               : subsets.size() == 1 ? ExplanationStatus::kUnique
                                     : ExplanationStatus::kAmbiguous;
  out.subsets = std::move(subsets);
  return out;
}

// Visits index combinations of size k over n in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit visit) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    visit(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::string braces(const SentenceSet& s) {
  std::string out = "{";
  for (const auto& id : s) out += (out.size() > 1 ? " " : "") + id;
  return out + "}";
}

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

struct ReducedExplanation {
  const Generalization* g;
  SentenceSet explanation;
  SentenceSet translated;
};

std::vector<ReducedExplanation> necessary_in_reduced(const Reduction& r, const Theory& reduced,
                                                     const std::vector<Generalization>& gs, int cap) {
  std::vector<ReducedExplanation> out;
  for (const auto& g : gs) {
    if (!g.in(reduced.id)) continue;
    const auto e = explain(g, reduced, cap);
    if (e.status != ExplanationStatus::kUnique) continue;
    out.push_back(ReducedExplanation{&g, e.subsets.front(), translate_explanation(r, e.subsets.front())});
  }
  return out;
}

}  // namespace

ExplanationResult explain(const Generalization& g, const Theory& t, int cap) {
  validate_cap(cap);
  const Statement* st = g.in(t.id);
  if (t.mode == TheoryMode::kAbstract) {
    return from_subsets(st ? st->declared_explanations : std::vector<SentenceSet>{});
  }
  if (st == nullptr || !st->concrete_form) {
    throw std::invalid_argument("generalization " + g.id + " has no concrete form in theory " + t.id);
  }
  std::vector<SentenceSet> minimal;
  const std::size_t n = t.sentences.size();
  const std::size_t largest = std::min(n, static_cast<std::size_t>(cap));
  for (std::size_t k = 0; k <= largest; ++k) {
    for_each_combination(n, k, [&](const std::vector<std::size_t>& pick) {
      SentenceSet subset;
      for (std::size_t i : pick) subset.insert(t.sentences[i].id);
      const bool has_smaller = std::any_of(minimal.begin(), minimal.end(), [&](const SentenceSet& m) {
        return std::includes(subset.begin(), subset.end(), m.begin(), m.end());
      });
      if (!has_smaller && explains(t, subset, *st)) minimal.push_back(std::move(subset));
    });
  }
  return from_subsets(std::move(minimal));
}

bool nomologically_necessary(const Generalization& g, const Theory& t, int cap) {
  return explain(g, t, cap).status == ExplanationStatus::kUnique;
}

PowerResult explanatory_power(const Theory& t, const std::vector<Generalization>& gs, int cap) {
  PowerResult out;
  for (const auto& g : gs) {
    if (!g.in(t.id)) continue;
    if (!nomologically_necessary(g, t, cap)) out.failing.push_back(g.id);
  }
  out.has_power = out.failing.empty();
  return out;
}

BijectivityResult check_e_bijective(const Theory& t, const std::vector<Generalization>& gs, int cap) {
  BijectivityResult out;
  std::map<SentenceSet, std::vector<std::string>> by_subset;
  for (const auto& g : gs) {
    if (!g.in(t.id)) continue;
    const auto e = explain(g, t, cap);
    if (e.status != ExplanationStatus::kUnique) {
      out.not_unique.push_back(g.id);
      continue;
    }
    by_subset[e.subsets.front()].push_back(g.id);
  }
  for (auto& [subset, ids] : by_subset) {
    if (ids.size() > 1) out.collisions.push_back(ExplanationCollision{subset, std::move(ids)});
  }
  out.bijective = out.not_unique.empty() && out.collisions.empty();
  return out;
}

SentenceSet translate_explanation(const Reduction& r, const SentenceSet& explanation) {
  SentenceSet out;
  for (const auto& l : r.laws) {
    const bool inside = std::all_of(l.args.begin(), l.args.end(),
                                    [&](const std::string& a) { return explanation.count(a) != 0; });
    if (inside) out.insert(l.output);
  }
  return out;
}

std::vector<Fusion> detect_fusion(const Reduction& r, const Theory& reduced, const Theory& reducing,
                                  const std::vector<Generalization>& gs, int cap) {
  const auto necessary = necessary_in_reduced(r, reduced, gs, cap);
  std::vector<Fusion> out;
  for (const auto& cur : necessary) {
    for (const auto& other : necessary) {
      if (other.g == cur.g || other.translated != cur.translated) continue;
      out.push_back(Fusion{cur.g->id, FusionReason::kCollapse,
                           "translated explanation " + braces(cur.translated) + " shared with " + other.g->id});
      break;
    }
    const Statement* image = cur.g->in(reducing.id);
    if (image == nullptr) {
      out.push_back(Fusion{cur.g->id, FusionReason::kContentLost, "not stated in " + reducing.id});
    } else if (!explains(reducing, cur.translated, *image)) {
      std::string what = image->concrete_form ? render(*image->concrete_form) : joined(image->tokens);
      out.push_back(Fusion{cur.g->id, FusionReason::kContentLost,
                           "translated explanation " + braces(cur.translated) + " does not explain " + what +
                               " in " + reducing.id});
    }
  }
  return out;
}

bool preserves_nn(const Reduction& r, const Theory& reduced, const Theory& reducing,
                  const std::vector<Generalization>& gs, int cap) {
  const auto necessary = necessary_in_reduced(r, reduced, gs, cap);
  std::set<SentenceSet> images;
  for (const auto& cur : necessary) {
    const Statement* image = cur.g->in(reducing.id);
    if (image == nullptr || !explains(reducing, cur.translated, *image)) return false;
    if (!images.insert(cur.translated).second) return false;
  }
  return true;
}

ReductionReport classify(const Reduction& r, const Theory& reduced, const Theory& reducing,
                         const std::vector<Generalization>& gs, int cap) {
  validate_cap(cap);
  ReductionReport rep;
  rep.reduced_id = reduced.id;
  rep.reducing_id = reducing.id;
  rep.structure = structural_report(r, reduced, reducing);

  for (const auto& g : gs) {
    GeneralizationFinding f;
    f.id = g.id;
    f.stated_in_reduced = g.in(reduced.id) != nullptr;
    f.stated_in_reducing = g.in(reducing.id) != nullptr;
    if (f.stated_in_reduced) {
      f.in_reduced = explain(g, reduced, cap);
      if (f.in_reduced.status == ExplanationStatus::kUnique) {
        f.translated = translate_explanation(r, f.in_reduced.subsets.front());
      }
    }
    if (f.stated_in_reducing) f.in_reducing = explain(g, reducing, cap);
    rep.generalizations.push_back(std::move(f));
  }

  rep.e_bijectivity = check_e_bijective(reduced, gs, cap);
  rep.e_bijective_in_reduced = rep.e_bijectivity.bijective;
  rep.power_reduced = explanatory_power(reduced, gs, cap);
  rep.power_reducing = explanatory_power(reducing, gs, cap);
  rep.fused = detect_fusion(r, reduced, reducing, gs, cap);
  rep.preserves_nn = preserves_nn(r, reduced, reducing, gs, cap);

  rep.has_vocab_map = r.vocab_map.has_value();
  if (rep.has_vocab_map) {
    for (const auto& sym : reduced.vocabulary.symbols) {
      if (!r.vocab_map->count(sym)) rep.unmapped_symbols.push_back(sym);
    }
  }

  if (!rep.structure.is_map) rep.invalid_reasons.push_back("reduction is not a map");
  if (rep.structure.onto) rep.invalid_reasons.push_back("reduction is onto " + reducing.id);
  if (!rep.e_bijective_in_reduced) {
    rep.invalid_reasons.push_back("explanation map in " + reduced.id + " is not bijective");
  }
  if (!rep.has_vocab_map) {
    rep.invalid_reasons.push_back("no vocab-map, not a standard reduction");
  } else if (!rep.unmapped_symbols.empty()) {
    rep.invalid_reasons.push_back("vocab-map does not cover " + joined(rep.unmapped_symbols));
  }

  if (!rep.invalid_reasons.empty()) {
    rep.classification = Classification::kInvalid;
  } else {
    rep.classification = rep.preserves_nn ? Classification::kStrong : Classification::kStandard;
  }
  return rep;
}

ReductionReport classify(const ReductionSpec& spec, int cap) {
  return classify(spec.reduction, spec.reduced, spec.reducing, spec.generalizations, cap);
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple(const std::vector<std::string>& args) { return "(" + joined(args) + ")"; }

std::string explanation_line(const ExplanationResult& e) {
  std::string out = to_string(e.status);
  for (const auto& s : e.subsets) out += " " + braces(s);
  return out;
}

}  // namespace

std::string render(const ReductionReport& rep) {
  std::string out;
  const auto line = [&](const std::string& l) { out += l + "\n"; };
  line("; explanation and nomological necessity use the if-and-only-if reading");
  line("reduced: " + rep.reduced_id);
  line("reducing: " + rep.reducing_id);

  const auto& st = rep.structure;
  line("map: " + yes_no(st.is_map));
  for (const auto& id : st.uncovered_reduced) line("map.uncovered: " + id);
  for (const auto& c : st.conflicts) line("map.conflict: " + c.law + " " + tuple(c.args) + " -> " + joined(c.outputs));
  line("injective: " + yes_no(st.injective));
  for (const auto& c : st.collisions) {
    std::string l = "injective.collision: " + c.output + " <-";
    for (const auto& t : c.tuples) l += " " + tuple(t);
    line(l);
  }
  line("onto: " + yes_no(st.onto));
  for (const auto& id : st.uncovered_reducing) line("onto.uncovered: " + id);

  for (const auto& g : rep.generalizations) {
    if (g.stated_in_reduced) {
      line("explanation: " + g.id + " in " + rep.reduced_id + ": " + explanation_line(g.in_reduced));
    }
    if (g.stated_in_reducing) {
      line("explanation: " + g.id + " in " + rep.reducing_id + ": " + explanation_line(g.in_reducing));
    }
    if (g.in_reduced.status == ExplanationStatus::kUnique) {
      line("translated: " + g.id + ": " + braces(g.translated));
    }
  }

  line("e-bijective: " + yes_no(rep.e_bijective_in_reduced));
  for (const auto& id : rep.e_bijectivity.not_unique) line("e-bijective.not-unique: " + id);
  for (const auto& c : rep.e_bijectivity.collisions) {
    line("e-bijective.collision: " + braces(c.subset) + " <- " + joined(c.generalizations));
  }
  line("explanatory-power: " + rep.reduced_id + ": " + yes_no(rep.power_reduced.has_power));
  for (const auto& id : rep.power_reduced.failing) line("explanatory-power.failing: " + rep.reduced_id + ": " + id);
  line("explanatory-power: " + rep.reducing_id + ": " + yes_no(rep.power_reducing.has_power));
  for (const auto& id : rep.power_reducing.failing) {
    line("explanatory-power.failing: " + rep.reducing_id + ": " + id);
  }

  if (rep.fused.empty()) line("fused: none");
  for (const auto& f : rep.fused) line("fused: " + f.generalization + " " + to_string(f.reason) + ": " + f.detail);
  line("preserves-nn: " + yes_no(rep.preserves_nn));

  if (!rep.has_vocab_map) {
    line("vocab-map: absent");
  } else if (rep.unmapped_symbols.empty()) {
    line("vocab-map: total");
  } else {
    line("vocab-map: partial (unmapped " + joined(rep.unmapped_symbols) + ")");
  }
  for (const auto& r : rep.invalid_reasons) line("invalid: " + r);
  line(std::string("classification: ") + to_string(rep.classification));
  return out;
}

}  // namespace pcalc
