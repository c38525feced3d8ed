#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcalc/formula.hpp"

namespace pcalc {

enum class TheoryMode { kAbstract, kConcrete };

const char* to_string(TheoryMode mode);

// Tokens that link vocabulary symbols inside a sentence. They are shared by
// every theory and never need to appear in a vocabulary.
bool is_connective_token(const std::string& token);

struct Vocabulary {
  std::vector<std::string> symbols;

  bool contains(const std::string& symbol) const;
};

struct Sentence {
  std::string id;
  // Vocabulary symbols interleaved with connective tokens.
  std::vector<std::string> tokens;
  // Present exactly when the owning theory is concrete.
  std::optional<Formula> concrete_form;
};

struct Theory {
  std::string id;
  TheoryMode mode = TheoryMode::kAbstract;
  Vocabulary vocabulary;
  std::vector<Sentence> sentences;

  const Sentence* find(const std::string& sentence_id) const;
};

using SentenceSet = std::set<std::string>;

// A generalization as stated in one theory.
struct Statement {
  std::vector<std::string> tokens;
  std::optional<Formula> concrete_form;
  // Each entry is one declared explaining subset (abstract theories).
  std::vector<SentenceSet> declared_explanations;
};

struct Generalization {
  std::string id;
  // Keyed by theory id.
  std::map<std::string, Statement> statements;

  const Statement* in(const std::string& theory_id) const;
};

// Maps an argument tuple of reduced-theory sentences to one reducing-theory
// sentence. Several clauses may share an id; together they define one
// function piecewise.
struct BridgeLaw {
  std::string id;
  std::vector<std::string> args;
  std::string output;
};

struct Reduction {
  std::vector<BridgeLaw> laws;
  // Reduced-vocabulary symbol -> reducing-vocabulary token sequence.
  std::optional<std::map<std::string, std::vector<std::string>>> vocab_map;
};

struct ReductionSpec {
  Theory reduced;   // first theory in the file
  Theory reducing;  // second theory in the file
  std::vector<Generalization> generalizations;
  Reduction reduction;
};

// Parses and validates the reduction file format. Throws ParseError carrying
// the line of the offending form.
ReductionSpec load_reduction_spec(std::string_view text);

// Throws std::invalid_argument unless 1 <= cap <= kMaxExplanationCap.
inline constexpr int kDefaultExplanationCap = 4;
inline constexpr int kMaxExplanationCap = 6;
void validate_cap(int cap);

}  // namespace pcalc
