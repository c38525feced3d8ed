#pragma once

#include <string>
#include <vector>

#include "pcalc/reduction.hpp"

namespace pcalc {

struct TupleConflict {
  std::string law;
  std::vector<std::string> args;
  std::vector<std::string> outputs;
};

struct OutputCollision {
  std::string output;
  std::vector<std::vector<std::string>> tuples;
};

struct StructuralReport {
  // Totality over the reduced theory plus per-law tuple determinism.
  bool is_map = false;
  std::vector<std::string> uncovered_reduced;
  std::vector<TupleConflict> conflicts;
  bool injective = false;
  std::vector<OutputCollision> collisions;
  // A valid reduction must leave part of the reducing theory uncovered.
  bool onto = false;
  std::vector<std::string> uncovered_reducing;
};

StructuralReport structural_report(const Reduction& r, const Theory& reduced, const Theory& reducing);

enum class ExplanationStatus { kNone, kUnique, kAmbiguous };

const char* to_string(ExplanationStatus status);

struct ExplanationResult {
  ExplanationStatus status = ExplanationStatus::kNone;
  // Minimal explaining subsets, lexicographically ordered.
  std::vector<SentenceSet> subsets;
};

// Abstract theories: the declared explanations. Concrete theories: every
// minimal subset of at most `cap` sentences whose concrete forms derive the
// generalization. Throws std::invalid_argument if g has no concrete form in a
// concrete theory or cap is out of range.
ExplanationResult explain(const Generalization& g, const Theory& t, int cap = kDefaultExplanationCap);

bool nomologically_necessary(const Generalization& g, const Theory& t, int cap = kDefaultExplanationCap);

struct PowerResult {
  bool has_power = true;
  std::vector<std::string> failing;
};

// Over the generalizations stated in t.
PowerResult explanatory_power(const Theory& t, const std::vector<Generalization>& gs,
                              int cap = kDefaultExplanationCap);

struct ExplanationCollision {
  SentenceSet subset;
  std::vector<std::string> generalizations;
};

struct BijectivityResult {
  bool bijective = true;
  std::vector<std::string> not_unique;
  std::vector<ExplanationCollision> collisions;
};

BijectivityResult check_e_bijective(const Theory& t, const std::vector<Generalization>& gs,
                                    int cap = kDefaultExplanationCap);

// Outputs of every law whose whole argument tuple lies inside `explanation`.
SentenceSet translate_explanation(const Reduction& r, const SentenceSet& explanation);

// True when `subset` of t explains g's statement in t: derivation for
// concrete theories, a declared explanation for abstract ones.
bool explains(const Theory& t, const SentenceSet& subset, const Statement& g_in_t);

enum class FusionReason {
  // Two generalizations' translated explanations coincide.
  kCollapse,
  // The translated explanation no longer explains the generalization.
  kContentLost,
};

const char* to_string(FusionReason reason);

struct Fusion {
  std::string generalization;
  FusionReason reason;
  std::string detail;
};

std::vector<Fusion> detect_fusion(const Reduction& r, const Theory& reduced, const Theory& reducing,
                                  const std::vector<Generalization>& gs, int cap = kDefaultExplanationCap);

bool preserves_nn(const Reduction& r, const Theory& reduced, const Theory& reducing,
                  const std::vector<Generalization>& gs, int cap = kDefaultExplanationCap);

enum class Classification { kInvalid, kStandard, kStrong };

const char* to_string(Classification c);

struct GeneralizationFinding {
  std::string id;
  bool stated_in_reduced = false;
  bool stated_in_reducing = false;
  ExplanationResult in_reduced;
  ExplanationResult in_reducing;
  SentenceSet translated;
};

struct ReductionReport {
  std::string reduced_id;
  std::string reducing_id;
  StructuralReport structure;
  std::vector<GeneralizationFinding> generalizations;
  BijectivityResult e_bijectivity;
  bool e_bijective_in_reduced = false;
  PowerResult power_reduced;
  PowerResult power_reducing;
  std::vector<Fusion> fused;
  bool preserves_nn = false;
  bool has_vocab_map = false;
  std::vector<std::string> unmapped_symbols;
  std::vector<std::string> invalid_reasons;
  Classification classification = Classification::kInvalid;
};

ReductionReport classify(const Reduction& r, const Theory& reduced, const Theory& reducing,
                         const std::vector<Generalization>& gs, int cap = kDefaultExplanationCap);

ReductionReport classify(const ReductionSpec& spec, int cap = kDefaultExplanationCap);

// One finding per line, ending with "classification: <invalid|standard|strong>".
std::string render(const ReductionReport& report);

}  // namespace pcalc
