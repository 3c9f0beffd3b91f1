#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sckb/kb.hpp"
#include "sckb/semantics.hpp"

namespace sckb {

// Limits for brute-force enumeration. max_rank_levels == 0 means one level
// per valuation, which is enough for every convex interpretation.
struct EnumerationBudget {
  std::size_t max_atoms = 2;
  std::size_t max_rank_levels = 0;
};

// Visitors return false to stop early.
using RankedVisitor = std::function<bool(const RankedInterpretation&)>;
using EpistemicVisitor = std::function<bool(const EpistemicInterpretation&)>;

// Every convex ranked interpretation over `vocab` satisfying `c`, in
// lexicographic order of rank vectors (∞ after every finite level). Throws
// BudgetExceeded when |vocab| exceeds the budget or 3.
void enumerate_ranked_models(const std::vector<DefeasibleConditional>& c, const Vocabulary& vocab,
                             const EnumerationBudget& budget, const RankedVisitor& visit);
std::vector<RankedInterpretation> enumerate_ranked_models(const std::vector<DefeasibleConditional>& c,
                                                          const Vocabulary& vocab,
                                                          const EnumerationBudget& budget = {});

// Pointwise minimum of the enumerated models. Throws NoModel if there are
// none, Error if the pointwise meet is not itself a model.
RankedInterpretation brute_minimal_ranked_model(const std::vector<DefeasibleConditional>& c,
                                                const Vocabulary& vocab,
                                                const EnumerationBudget& budget = {});

// Same for epistemic interpretations; at most 2 atoms.
void enumerate_epistemic_models(const SCKB& kb, const Vocabulary& vocab,
                                const EnumerationBudget& budget, const EpistemicVisitor& visit);
std::vector<EpistemicInterpretation> enumerate_epistemic_models(const SCKB& kb, const Vocabulary& vocab,
                                                                const EnumerationBudget& budget = {});
EpistemicInterpretation brute_minimal_epistemic_model(const SCKB& kb, const Vocabulary& vocab,
                                                      const EnumerationBudget& budget = {});

// Every convex epistemic interpretation over `vocab` (at most 2 atoms).
std::vector<EpistemicInterpretation> all_epistemic_interpretations(const Vocabulary& vocab,
                                                                   const EnumerationBudget& budget = {});

// Renumbers each tier's levels to 0..k keeping their order.
EpistemicInterpretation make_convex(const EpistemicInterpretation& e);

// Formulas built from true, false and the atoms by at most `depth` rounds
// of ~, &, |, -> and <->. Duplicates removed, generation order kept.
std::vector<Formula> formula_grammar(const Vocabulary& vocab, std::size_t depth);

struct PostulateOutcome {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::string witness;  // first violating instance, empty if none

  bool passed() const noexcept { return violations == 0; }
};

struct PostulateReport {
  std::vector<PostulateOutcome> outcomes;

  const PostulateOutcome& operator[](const std::string& name) const;
  // True when every postulate except those listed passed.
  bool all_passed(const std::vector<std::string>& except = {}) const;
};

// Postulate names, in report order.
const std::vector<std::string>& postulate_names();

// Checks Ref, LLE, And, Or, RW, RM, Inc, Vac, Ext, SupExp, SubExp, Succ,
// Incons, Cond, Cons<= and Cons=> on `e`. Every semantic class of formulas is
// instantiated; LLE and Ext additionally range over pairs of syntactically
// distinct equivalent formulas from formula_grammar(vocab, grammar_depth).
// Requires at most 2 atoms.
PostulateReport check_postulates(const EpistemicInterpretation& e, std::size_t grammar_depth = 1);

std::string to_json(const PostulateReport& report, int indent = -1);

struct DominanceResult {
  std::size_t samples = 0;
  std::size_t models = 0;      // perturbations that were models of the KB
  std::size_t violations = 0;  // models not pointwise above the candidate
};

// Randomly perturbs `candidate` and checks that every perturbation which is
// a model of `kb` lies pointwise above it.
DominanceResult check_sampled_minimality(const EpistemicInterpretation& candidate, const SCKB& kb,
                                         std::size_t samples, std::uint64_t seed);

}  // namespace sckb
