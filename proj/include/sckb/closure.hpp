#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sckb/entailment.hpp"
#include "sckb/kb.hpp"

namespace sckb {

// Exceptionality stratification E0 ⊋ E1 ⊋ ... ⊋ En ⊋ E∞ of a conditional set.
// When the input is its own exceptional set, strata == {fixpoint}.
struct RankingTuple {
  std::vector<std::vector<DefeasibleConditional>> strata;
  std::vector<DefeasibleConditional> fixpoint;
  // Materialisations of the above, index-aligned.
  std::vector<std::vector<Formula>> strata_material;
  std::vector<Formula> fixpoint_material;
};

// Rank of a formula relative to a ranking. InfinityLevel means every stratum
// rules the formula out but E∞ does not; its level is the number of strata,
// which is where such formulas first hold in the minimal ranked model.
class FormulaRank {
 public:
  enum class Kind { Finite, InfinityLevel, Infinite };

  static FormulaRank finite(std::size_t level) { return {Kind::Finite, level}; }
  static FormulaRank infinity_level(std::size_t level) { return {Kind::InfinityLevel, level}; }
  static FormulaRank infinite() { return {Kind::Infinite, 0}; }

  Kind kind() const noexcept { return kind_; }
  bool is_infinite() const noexcept { return kind_ == Kind::Infinite; }
  // Lowest occupied rank in the minimal ranked model; undefined for Infinite.
  std::size_t level() const noexcept { return level_; }

  // "0", "1", ..., "inf-level" or "infinite".
  std::string to_string() const;

  friend bool operator==(const FormulaRank&, const FormulaRank&) = default;

 private:
  FormulaRank(Kind kind, std::size_t level) : kind_(kind), level_(level) {}
  Kind kind_;
  std::size_t level_;
};

// {α |~ β ∈ C : materialise(C) |= ¬α}, order preserved. |C| oracle calls.
std::vector<DefeasibleConditional> exceptional(EntailmentOracle& oracle,
                                               const std::vector<DefeasibleConditional>& c);

RankingTuple compute_ranking(EntailmentOracle& oracle, const std::vector<DefeasibleConditional>& c);

FormulaRank rank_of(EntailmentOracle& oracle, const RankingTuple& ranking, const Formula& alpha);
FormulaRank rank_of(EntailmentOracle& oracle, const std::vector<DefeasibleConditional>& c,
                    const Formula& alpha);

// Rational closure membership of `query` w.r.t. the ranked conditionals.
bool rational_closure_query(EntailmentOracle& oracle, const RankingTuple& ranking,
                            const DefeasibleConditional& query);
bool rational_closure_query(EntailmentOracle& oracle, const std::vector<DefeasibleConditional>& c,
                            const DefeasibleConditional& query);

DerivedKBs partition(EntailmentOracle& oracle, const SCKB& kb, const RankingTuple& conj_ranking);
DerivedKBs partition(EntailmentOracle& oracle, const SCKB& kb);

// materialise(KB∧) is classically satisfiable. One oracle call.
bool is_consistent(EntailmentOracle& oracle, const SCKB& kb);

// Minimal-closure membership, computed from scratch.
bool minimal_closure_query(EntailmentOracle& oracle, const SCKB& kb, const SituatedConditional& query);

// Ranking and derived KBs computed once, for answering many queries.
class CompiledKB {
 public:
  static CompiledKB compile(EntailmentOracle& oracle, const SCKB& kb);

  bool consistent() const noexcept { return consistent_; }
  const SCKB& kb() const noexcept { return kb_; }
  const DerivedKBs& derived() const noexcept { return derived_; }
  const RankingTuple& conj_ranking() const noexcept { return conj_ranking_; }
  const RankingTuple& shifted_ranking() const noexcept { return shifted_ranking_; }

  bool query(EntailmentOracle& oracle, const SituatedConditional& q) const;

 private:
  SCKB kb_;
  bool consistent_ = true;
  DerivedKBs derived_;
  RankingTuple conj_ranking_;
  RankingTuple shifted_ranking_;
};

}  // namespace sckb
