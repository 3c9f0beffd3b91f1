#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sckb/closure.hpp"
#include "sckb/entailment.hpp"
#include "sckb/kb.hpp"
#include "sckb/vocabulary.hpp"

namespace sckb {

// Element of {(f,i)} ∪ {(inf,i)} ∪ {(inf,inf)}, totally ordered: every
// finite-tier rank precedes every infinite-tier rank, and (inf,inf) is last.
class Rank {
 public:
  enum class Tier : std::uint8_t { Finite, Infinite, Impossible };

  constexpr Rank() = default;
  static constexpr Rank fin(std::uint32_t level) { return Rank(Tier::Finite, level); }
  static constexpr Rank inf(std::uint32_t level) { return Rank(Tier::Infinite, level); }
  static constexpr Rank inf_inf() { return Rank(Tier::Impossible, 0); }

  constexpr Tier tier() const noexcept { return tier_; }
  constexpr std::uint32_t level() const noexcept { return level_; }
  constexpr bool is_finite() const noexcept { return tier_ == Tier::Finite; }
  constexpr bool is_possible() const noexcept { return tier_ == Tier::Infinite; }
  constexpr bool is_impossible() const noexcept { return tier_ == Tier::Impossible; }

  friend constexpr auto operator<=>(const Rank&, const Rank&) = default;
  friend constexpr bool operator==(const Rank&, const Rank&) = default;

  // "(f,2)", "(inf,0)", "(inf,inf)".
  std::string to_string() const;

 private:
  constexpr Rank(Tier tier, std::uint32_t level) : tier_(tier), level_(level) {}
  Tier tier_ = Tier::Finite;
  std::uint32_t level_ = 0;
};

inline constexpr std::uint32_t kInfiniteRank = std::numeric_limits<std::uint32_t>::max();

// Total map from valuations to N ∪ {∞}; ranks()[v.index] is the rank of v.
class RankedInterpretation {
 public:
  RankedInterpretation(Vocabulary vocab, std::vector<std::uint32_t> ranks);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  const std::vector<std::uint32_t>& ranks() const noexcept { return ranks_; }
  std::uint32_t rank(Valuation v) const { return ranks_[v.index]; }

  WorldSet plausible() const;  // finite-rank valuations
  WorldSet layer(std::uint32_t rank) const;
  // Highest finite rank in use, or -1 when no valuation is plausible.
  long max_finite_rank() const;

  bool is_convex() const;

  friend bool operator==(const RankedInterpretation&, const RankedInterpretation&) = default;

 private:
  Vocabulary vocab_;
  std::vector<std::uint32_t> ranks_;
};

class EpistemicInterpretation {
 public:
  EpistemicInterpretation(Vocabulary vocab, std::vector<Rank> ranks);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  const std::vector<Rank>& ranks() const noexcept { return ranks_; }
  Rank rank(Valuation v) const { return ranks_[v.index]; }

  WorldSet plausible() const;  // U^f: (f,i) valuations
  WorldSet possible() const;   // U^∞: (inf,i) valuations, i finite
  WorldSet layer(Rank r) const;

  friend bool operator==(const EpistemicInterpretation&, const EpistemicInterpretation&) = default;

 private:
  Vocabulary vocab_;
  std::vector<Rank> ranks_;
};

// Both tiers convex: no empty (f,j) below an occupied (f,i), same for (inf,·).
bool check_convexity(const EpistemicInterpretation& e);

bool satisfies_defeasible(const RankedInterpretation& r, const DefeasibleConditional& c);
bool satisfies_situated(const EpistemicInterpretation& e, const SituatedConditional& c);

// Same relations over precomputed model sets.
bool satisfies_defeasible(const RankedInterpretation& r, const WorldSet& antecedent,
                          const WorldSet& consequent);
bool satisfies_situated(const EpistemicInterpretation& e, const WorldSet& antecedent,
                        const WorldSet& consequent, const WorldSet& situation);

bool is_model(const RankedInterpretation& r, const std::vector<DefeasibleConditional>& c);
bool is_model(const EpistemicInterpretation& e, const SCKB& kb);

// (f,i) ↦ i, everything else ↦ ∞.
RankedInterpretation extract_ranked(const EpistemicInterpretation& e);
// i ↦ (f,i), ∞ ↦ (inf,inf).
EpistemicInterpretation extract_epistemic(const RankedInterpretation& r);
// (inf,i) ↦ (f,i), everything else ↦ (inf,inf).
EpistemicInterpretation counterfactual_shift(const EpistemicInterpretation& e);

// Pointwise order: a ⪯ b iff a(u) ⪯ b(u) for every valuation u.
bool pointwise_leq(const RankedInterpretation& a, const RankedInterpretation& b);
bool pointwise_leq(const EpistemicInterpretation& a, const EpistemicInterpretation& b);

// Minimal ranked model read off a ranking: u gets the least i such that u
// satisfies the materialisation of stratum i, then one extra level for
// valuations satisfying only the fixpoint's materialisation, and ∞ for the
// rest. Defined for inconsistent inputs too (everything at ∞).
RankedInterpretation ranked_model_from_ranking(const RankingTuple& ranking, const Vocabulary& vocab);

// Throws InconsistentKB when materialise(c) is unsatisfiable.
RankedInterpretation build_minimal_ranked_model(EntailmentOracle& oracle,
                                                const std::vector<DefeasibleConditional>& c,
                                                const Vocabulary& vocab);

// Models over `vocab`, which must cover the KB; the overloads without it use
// kb.vocab(). Both throw InconsistentKB for inconsistent KBs.
EpistemicInterpretation build_classical_epistemic_model(EntailmentOracle& oracle, const SCKB& kb);
EpistemicInterpretation build_classical_epistemic_model(EntailmentOracle& oracle, const SCKB& kb,
                                                        const Vocabulary& vocab);
EpistemicInterpretation build_minimal_epistemic_model(EntailmentOracle& oracle, const SCKB& kb);
EpistemicInterpretation build_minimal_epistemic_model(EntailmentOracle& oracle, const SCKB& kb,
                                                      const Vocabulary& vocab);

// One line per non-empty layer, highest first, valuations ascending:
//   (inf,inf): p~bf pbf
//   (f,0): ~p~b~f
std::string dump_layers(const EpistemicInterpretation& e);
//   inf: ...
//   2: ...
std::string dump_layers(const RankedInterpretation& r);

}  // namespace sckb
