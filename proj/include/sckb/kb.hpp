#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sckb/formula.hpp"
#include "sckb/parser.hpp"
#include "sckb/vocabulary.hpp"

namespace sckb {

// antecedent |~ consequent
struct DefeasibleConditional {
  Formula antecedent;
  Formula consequent;

  friend bool operator==(const DefeasibleConditional&, const DefeasibleConditional&) = default;
};

// antecedent |~[situation] consequent
struct SituatedConditional {
  Formula antecedent;
  Formula consequent;
  Formula situation = Formula::top();

  friend bool operator==(const SituatedConditional&, const SituatedConditional&) = default;
};

std::string to_string(const DefeasibleConditional& c);
// Canonical form `A |~[G] B`, with `[true]` elided.
std::string to_string(const SituatedConditional& c);

// Situated conditional knowledge base. Conditionals keep first-occurrence
// order and are structurally distinct; the vocabulary covers all of them.
class SCKB {
 public:
  SCKB() = default;
  SCKB(std::vector<SituatedConditional> conditionals, Vocabulary vocab);
  // Vocabulary collected from the conditionals in appearance order.
  explicit SCKB(std::vector<SituatedConditional> conditionals);

  const std::vector<SituatedConditional>& conditionals() const noexcept { return conditionals_; }
  const Vocabulary& vocab() const noexcept { return vocab_; }
  std::size_t size() const noexcept { return conditionals_.size(); }
  bool empty() const noexcept { return conditionals_.empty(); }

  // Adds `c` unless a structurally equal conditional is present.
  bool add(const SituatedConditional& c);

  friend bool operator==(const SCKB&, const SCKB&) = default;

 private:
  std::vector<SituatedConditional> conditionals_;
  Vocabulary vocab_;
};

// One statement per line; `#` starts a comment. Accepted forms:
//   A |~ B          situation defaults to true
//   A |~[G] B
//   A               shorthand for ~A |~ false
//   atoms: p q r    pins the vocabulary; later unknown atoms are errors
SCKB parse_kb(std::string_view text);

// Parses `A |~ B` or `A |~[G] B`. In Collect mode new atoms extend `vocab`.
SituatedConditional parse_conditional(std::string_view text, VocabMode mode = VocabMode::Collect,
                                      Vocabulary* vocab = nullptr);

// Inverse of parse_kb: an `atoms:` header followed by one conditional per line.
std::string serialize(const SCKB& kb);

// (α∧γ) |~ β for each α |~[γ] β, order preserved, no simplification.
std::vector<DefeasibleConditional> conjunctive_form(const SCKB& kb);
DefeasibleConditional conjunctive_form(const SituatedConditional& c);

// α → β for each α |~ β.
std::vector<Formula> materialise(const std::vector<DefeasibleConditional>& conditionals);

// Conjunction of the negated antecedents, in order; Top when empty.
Formula build_mu(const std::vector<DefeasibleConditional>& fixpoint);

// Knowledge bases derived from an SCKB for minimal-closure reasoning.
struct DerivedKBs {
  std::vector<DefeasibleConditional> conj_form;       // KB∧
  std::vector<SituatedConditional> kb_inf;            // conditionals with impossible situations
  std::vector<DefeasibleConditional> conj_inf_shift;  // KB∧ of kb_inf, plus mu |~ false
  Formula mu;                                         // characterises the plausible worlds of KB∧
};

}  // namespace sckb
