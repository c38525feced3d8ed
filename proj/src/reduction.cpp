#include "pcalc/reduction.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "pcalc/knowledge_base.hpp"
#include "pcalc/parser.hpp"
#include "pcalc/sexpr.hpp"

namespace pcalc {

const char* to_string(TheoryMode mode) {
  return mode == TheoryMode::kAbstract ? "abstract" : "concrete";
}

bool is_connective_token(const std::string& token) {
  static const std::set<std::string> kConnectives = {"and", "or", "not", "if", "forall", "exists", "*"};
  return kConnectives.count(token) != 0;
}

bool Vocabulary::contains(const std::string& symbol) const {
  return std::find(symbols.begin(), symbols.end(), symbol) != symbols.end();
}

const Sentence* Theory::find(const std::string& sentence_id) const {
  for (const auto& s : sentences) {
    if (s.id == sentence_id) return &s;
  }
  return nullptr;
}

const Statement* Generalization::in(const std::string& theory_id) const {
  auto it = statements.find(theory_id);
  return it == statements.end() ? nullptr : &it->second;
}

void validate_cap(int cap) {
  if (cap < 1 || cap > kMaxExplanationCap) {
    throw std::invalid_argument("explanation cap must be between 1 and " +
                                std::to_string(kMaxExplanationCap));
  }
}

namespace {

[[noreturn]] void fail(const std::string& message, const SExpr& at) { throw ParseError(message, at.offset); }

const std::string& expect_symbol(const SExpr& e, const std::string& what) {
  if (!e.is_symbol()) fail("expected " + what, e);
  return e.symbol;
}

const SExpr& expect_list(const SExpr& e, const std::string& what) {
  if (!e.is_list()) fail("expected " + what, e);
  return e;
}

std::vector<std::string> tokens_of(const Formula& f) {
  std::vector<std::string> out;
  if (f.is_atom()) {
    out = {f.atom().predicate};
    for (const auto& t : f.atom().args) {
      if (t.is_variable()) continue;
      for (const auto& s : Formula::atomic(Atom{t.name(), t.args()}).symbols()) out.push_back(s);
    }
    return out;
  }
  out.push_back(keyword(f.kind()));
  for (const auto& c : f.children()) {
    auto sub = tokens_of(c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void check_vocabulary(const Theory& t, const std::vector<std::string>& tokens, const SExpr& at) {
  for (const auto& tok : tokens) {
    if (!is_connective_token(tok) && !t.vocabulary.contains(tok)) {
      fail("unknown vocabulary symbol " + tok + " in theory " + t.id, at);
    }
  }
}

// Parses the statement body: a formula (concrete) or a token run (abstract).
// Returns the index of the first item after the body.
std::size_t read_body(const Theory& t, const SExpr& owner, std::size_t first, std::vector<std::string>& tokens,
                      std::optional<Formula>& form, bool stop_at_lists) {
  std::size_t i = first;
  if (t.mode == TheoryMode::kConcrete) {
    if (i >= owner.items.size()) fail("missing formula for concrete theory " + t.id, owner);
    const SExpr& body = owner.items[i];
    if (body.is_symbol()) fail("mode mixing: bare tokens in concrete theory " + t.id, body);
    if (body.head_is("explained-by")) fail("missing formula for concrete theory " + t.id, body);
    form = formula_from_sexpr(body, ParseMode::kClosed);
    tokens = tokens_of(*form);
    for (const auto& sym : form->symbols()) {
      if (!t.vocabulary.contains(sym)) fail("unknown vocabulary symbol " + sym + " in theory " + t.id, body);
    }
    return i + 1;
  }
  while (i < owner.items.size()) {
    const SExpr& item = owner.items[i];
    if (item.is_list()) {
      if (stop_at_lists && item.head_is("explained-by")) break;
      fail("mode mixing: formula in abstract theory " + t.id, item);
    }
    tokens.push_back(item.symbol);
    ++i;
  }
  if (tokens.empty()) fail("empty token sequence in theory " + t.id, owner);
  check_vocabulary(t, tokens, owner);
  return i;
}

Theory read_theory(const SExpr& form) {
  if (form.items.size() < 2) fail("theory requires an id", form);
  Theory t;
  t.id = expect_symbol(form.items[1], "theory id");
  const SExpr* mode = nullptr;
  const SExpr* vocab = nullptr;
  const SExpr* sentences = nullptr;
  for (std::size_t i = 2; i < form.items.size(); ++i) {
    const SExpr& part = expect_list(form.items[i], "theory clause");
    const SExpr** slot = part.head_is("mode")         ? &mode
                         : part.head_is("vocabulary") ? &vocab
                         : part.head_is("sentences")  ? &sentences
                                                      : nullptr;
    if (slot == nullptr) fail("unknown theory clause " + render(part.items.front()), part);
    if (*slot != nullptr) fail("duplicate clause " + part.items.front().symbol + " in theory " + t.id, part);
    *slot = &part;
  }
  if (!mode) fail("theory " + t.id + " is missing (mode ...)", form);
  if (!vocab) fail("theory " + t.id + " is missing (vocabulary ...)", form);
  if (!sentences) fail("theory " + t.id + " is missing (sentences ...)", form);

  if (mode->items.size() != 2) fail("mode takes one value", *mode);
  const std::string& m = expect_symbol(mode->items[1], "abstract or concrete");
  if (m == "abstract") {
    t.mode = TheoryMode::kAbstract;
  } else if (m == "concrete") {
    t.mode = TheoryMode::kConcrete;
  } else {
    fail("mode must be abstract or concrete", mode->items[1]);
  }

  if (vocab->items.size() < 2) fail("vocabulary must be non-empty", *vocab);
  for (std::size_t i = 1; i < vocab->items.size(); ++i) {
    const std::string& sym = expect_symbol(vocab->items[i], "vocabulary symbol");
    if (t.vocabulary.contains(sym)) fail("duplicate vocabulary symbol " + sym, vocab->items[i]);
    t.vocabulary.symbols.push_back(sym);
  }

  if (sentences->items.size() < 2) fail("sentence list must be non-empty", *sentences);
  for (std::size_t i = 1; i < sentences->items.size(); ++i) {
    const SExpr& entry = expect_list(sentences->items[i], "(<id> <tokens-or-formula>)");
    Sentence s;
    s.id = expect_symbol(entry.items.front(), "sentence id");
    if (t.find(s.id)) fail("duplicate sentence id " + s.id, entry);
    const std::size_t end = read_body(t, entry, 1, s.tokens, s.concrete_form, false);
    if (end != entry.items.size()) fail("sentence " + s.id + " has trailing items", entry);
    if (s.concrete_form) {
      try {
        (void)KnowledgeBase{}.with_formula(*s.concrete_form);
      } catch (const UnsupportedFormula& e) {
        fail("sentence " + s.id + ": " + e.what(), entry);
      }
    }
    t.sentences.push_back(std::move(s));
  }
  return t;
}

bool restates(const Theory& t, const Statement& st) {
  return std::any_of(t.sentences.begin(), t.sentences.end(), [&](const Sentence& s) {
    return st.concrete_form ? s.concrete_form == st.concrete_form : s.tokens == st.tokens;
  });
}

bool checkable(const Formula& f) {
  if (f.is_atom()) return f.atom().ground();
  if (f.kind() == FormulaKind::kAnd) return std::all_of(f.children().begin(), f.children().end(), checkable);
  try {
    (void)rule_from_formula(f);
    return true;
  } catch (const UnsupportedFormula&) {
    return false;
  }
}

Generalization read_generalization(const SExpr& entry, const std::vector<const Theory*>& theories) {
  const SExpr& e = expect_list(entry, "(<id> (in <theory-id> ...)...)");
  Generalization g;
  g.id = expect_symbol(e.items.front(), "generalization id");
  if (e.items.size() < 2) fail("generalization " + g.id + " is not stated in any theory", e);
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& clause = expect_list(e.items[i], "(in <theory-id> ...)");
    if (!clause.head_is("in")) fail("expected (in <theory-id> ...)", clause);
    if (clause.items.size() < 3) fail("incomplete statement of " + g.id, clause);
    const std::string& tid = expect_symbol(clause.items[1], "theory id");
    const auto found = std::find_if(theories.begin(), theories.end(),
                                    [&](const Theory* t) { return t->id == tid; });
    if (found == theories.end()) fail("unknown theory " + tid, clause.items[1]);
    const Theory& t = **found;
    if (g.statements.count(tid)) fail("generalization " + g.id + " stated twice in " + tid, clause);

    Statement st;
    std::size_t j = read_body(t, clause, 2, st.tokens, st.concrete_form, true);
    if (st.concrete_form && !checkable(*st.concrete_form)) {
      fail("generalization " + g.id + " must be a ground atom, a conjunction of ground atoms or a Horn rule",
           clause);
    }
    for (; j < clause.items.size(); ++j) {
      const SExpr& decl = clause.items[j];
      if (!decl.head_is("explained-by")) fail("expected (explained-by <sid>...)", decl);
      if (decl.items.size() < 2) fail("explained-by needs at least one sentence", decl);
      SentenceSet subset;
      for (std::size_t k = 1; k < decl.items.size(); ++k) {
        const std::string& sid = expect_symbol(decl.items[k], "sentence id");
        if (!t.find(sid)) fail("unknown sentence " + sid + " in theory " + tid, decl.items[k]);
        subset.insert(sid);
      }
      st.declared_explanations.push_back(std::move(subset));
    }
    if (restates(t, st)) fail("generalization " + g.id + " restates a sentence of " + tid, clause);
    g.statements.emplace(tid, std::move(st));
  }
  return g;
}

void read_reduction(const SExpr& form, const Theory& reduced, const Theory& reducing, Reduction& r) {
  for (std::size_t i = 1; i < form.items.size(); ++i) {
    const SExpr& clause = expect_list(form.items[i], "reduction clause");
    if (clause.head_is("vocab-map")) {
      if (r.vocab_map) fail("duplicate vocab-map", clause);
      r.vocab_map.emplace();
      for (std::size_t j = 1; j < clause.items.size(); ++j) {
        const SExpr& entry = expect_list(clause.items[j], "(<symbol> <token>...)");
        const std::string& from = expect_symbol(entry.items.front(), "reduced vocabulary symbol");
        if (!reduced.vocabulary.contains(from)) {
          fail("unknown vocabulary symbol " + from + " in theory " + reduced.id, entry);
        }
        if (r.vocab_map->count(from)) fail("symbol " + from + " mapped twice", entry);
        if (entry.items.size() < 2) fail("symbol " + from + " maps to nothing", entry);
        std::vector<std::string> image;
        for (std::size_t k = 1; k < entry.items.size(); ++k) {
          image.push_back(expect_symbol(entry.items[k], "reducing vocabulary token"));
        }
        check_vocabulary(reducing, image, entry);
        r.vocab_map->emplace(from, std::move(image));
      }
    } else if (clause.head_is("bridge")) {
      if (clause.items.size() != 4) fail("expected (bridge <id> (args <sid>...) (to <sid>))", clause);
      BridgeLaw law;
      law.id = expect_symbol(clause.items[1], "bridge law id");
      const SExpr& args = clause.items[2];
      const SExpr& to = clause.items[3];
      if (!args.head_is("args") || args.items.size() < 2) fail("bridge law needs (args <sid>...)", args);
      if (!to.head_is("to") || to.items.size() != 2) fail("bridge law needs (to <sid>)", to);
      for (std::size_t k = 1; k < args.items.size(); ++k) {
        const std::string& sid = expect_symbol(args.items[k], "sentence id");
        if (!reduced.find(sid)) fail("unknown sentence " + sid + " in theory " + reduced.id, args.items[k]);
        law.args.push_back(sid);
      }
      law.output = expect_symbol(to.items[1], "sentence id");
      if (!reducing.find(law.output)) {
        fail("unknown sentence " + law.output + " in theory " + reducing.id, to.items[1]);
      }
      const bool repeated = std::any_of(r.laws.begin(), r.laws.end(), [&](const BridgeLaw& l) {
        return l.id == law.id && l.args == law.args && l.output == law.output;
      });
      if (repeated) fail("duplicate bridge law " + law.id, clause);
      r.laws.push_back(std::move(law));
    } else {
      fail("unknown reduction clause", clause);
    }
  }
}

ReductionSpec read_spec(const std::vector<SExpr>& forms) {
  std::vector<Theory> theories;
  std::vector<const SExpr*> generalization_forms;
  const SExpr* reduction = nullptr;
  for (const auto& form : forms) {
    expect_list(form, "top-level form");
    if (form.head_is("theory")) {
      if (theories.size() == 2) fail("more than two theories", form);
      Theory t = read_theory(form);
      if (!theories.empty() && theories.front().id == t.id) fail("duplicate theory id " + t.id, form);
      theories.push_back(std::move(t));
    } else if (form.head_is("generalizations")) {
      generalization_forms.push_back(&form);
    } else if (form.head_is("reduction")) {
      if (reduction) fail("duplicate reduction", form);
      reduction = &form;
    } else {
      fail("unknown top-level form", form);
    }
  }
  if (theories.size() != 2) {
    throw ParseError("expected exactly two theories", forms.empty() ? 0 : forms.back().offset);
  }
  if (!reduction) throw ParseError("missing (reduction ...)", forms.back().offset);

  ReductionSpec spec;
  spec.reduced = std::move(theories[0]);
  spec.reducing = std::move(theories[1]);
  const std::vector<const Theory*> both = {&spec.reduced, &spec.reducing};
  for (const SExpr* block : generalization_forms) {
    for (std::size_t i = 1; i < block->items.size(); ++i) {
      Generalization g = read_generalization(block->items[i], both);
      const bool dup = std::any_of(spec.generalizations.begin(), spec.generalizations.end(),
                                   [&](const Generalization& o) { return o.id == g.id; });
      if (dup) fail("duplicate generalization id " + g.id, block->items[i]);
      spec.generalizations.push_back(std::move(g));
    }
  }
  read_reduction(*reduction, spec.reduced, spec.reducing, spec.reduction);
  return spec;
}

}  // namespace

ReductionSpec load_reduction_spec(std::string_view text) {
  try {
    return read_spec(read_all(text));
  } catch (const ParseError& e) {
    throw locate(e, text);
  }
}

}  // namespace pcalc
