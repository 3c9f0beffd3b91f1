#include "sckb/closure.hpp"

namespace sckb {

std::string FormulaRank::to_string() const {
  switch (kind_) {
    case Kind::Finite: return std::to_string(level_);
    case Kind::InfinityLevel: return "inf-level";
    case Kind::Infinite: return "infinite";
  }
  return "";
}

namespace {

std::vector<DefeasibleConditional> exceptional_given(EntailmentOracle& oracle,
                                                     const std::vector<DefeasibleConditional>& c,
                                                     const std::vector<Formula>& material) {
  std::vector<DefeasibleConditional> out;
  for (const auto& cond : c) {
    if (oracle.entails(material, Not(cond.antecedent))) out.push_back(cond);
  }
  return out;
}

}  // namespace

std::vector<DefeasibleConditional> exceptional(EntailmentOracle& oracle,
                                               const std::vector<DefeasibleConditional>& c) {
  return exceptional_given(oracle, c, materialise(c));
}

RankingTuple compute_ranking(EntailmentOracle& oracle, const std::vector<DefeasibleConditional>& c) {
  RankingTuple r;
  std::vector<DefeasibleConditional> current = c;
  std::vector<Formula> material = materialise(current);
  for (;;) {
    auto next = exceptional_given(oracle, current, material);
    // exceptional() returns a subset in order, so equal size means equal set.
    if (next.size() == current.size()) break;
    r.strata.push_back(std::move(current));
    r.strata_material.push_back(std::move(material));
    current = std::move(next);
    material = materialise(current);
  }
  if (r.strata.empty()) {
    r.strata.push_back(current);
    r.strata_material.push_back(material);
  }
  r.fixpoint = std::move(current);
  r.fixpoint_material = std::move(material);
  return r;
}

FormulaRank rank_of(EntailmentOracle& oracle, const RankingTuple& ranking, const Formula& alpha) {
  const Formula negated = Not(alpha);
  for (std::size_t i = 0; i < ranking.strata.size(); ++i) {
    if (!oracle.entails(ranking.strata_material[i], negated)) return FormulaRank::finite(i);
  }
  if (!oracle.entails(ranking.fixpoint_material, negated)) {
    return FormulaRank::infinity_level(ranking.strata.size());
  }
  return FormulaRank::infinite();
}

FormulaRank rank_of(EntailmentOracle& oracle, const std::vector<DefeasibleConditional>& c,
                    const Formula& alpha) {
  return rank_of(oracle, compute_ranking(oracle, c), alpha);
}

bool rational_closure_query(EntailmentOracle& oracle, const RankingTuple& ranking,
                            const DefeasibleConditional& query) {
  const FormulaRank r = rank_of(oracle, ranking, query.antecedent);
  // No finite-rank world satisfies the antecedent: vacuously entailed.
  if (r.is_infinite()) return true;
  const auto& base = r.kind() == FormulaRank::Kind::Finite ? ranking.strata_material[r.level()]
                                                           : ranking.fixpoint_material;
  std::vector<Formula> premises = base;
  premises.push_back(query.antecedent);
  return oracle.entails(premises, query.consequent);
}

bool rational_closure_query(EntailmentOracle& oracle, const std::vector<DefeasibleConditional>& c,
                            const DefeasibleConditional& query) {
  return rational_closure_query(oracle, compute_ranking(oracle, c), query);
}

DerivedKBs partition(EntailmentOracle& oracle, const SCKB& kb, const RankingTuple& conj_ranking) {
  DerivedKBs d;
  d.conj_form = conjunctive_form(kb);
  for (const auto& c : kb.conditionals()) {
    if (rank_of(oracle, conj_ranking, c.situation).is_infinite()) d.kb_inf.push_back(c);
  }
  d.mu = build_mu(conj_ranking.fixpoint);
  for (const auto& c : d.kb_inf) d.conj_inf_shift.push_back(conjunctive_form(c));
  d.conj_inf_shift.push_back({d.mu, Formula::bot()});
  return d;
}

DerivedKBs partition(EntailmentOracle& oracle, const SCKB& kb) {
  return partition(oracle, kb, compute_ranking(oracle, conjunctive_form(kb)));
}

bool is_consistent(EntailmentOracle& oracle, const SCKB& kb) {
  return oracle.is_satisfiable(materialise(conjunctive_form(kb)));
}

bool minimal_closure_query(EntailmentOracle& oracle, const SCKB& kb, const SituatedConditional& query) {
  if (!is_consistent(oracle, kb)) return true;
  const RankingTuple conj_ranking = compute_ranking(oracle, conjunctive_form(kb));
  const DerivedKBs derived = partition(oracle, kb, conj_ranking);
  const DefeasibleConditional shifted = conjunctive_form(query);
  if (!rank_of(oracle, conj_ranking, query.situation).is_infinite()) {
    return rational_closure_query(oracle, conj_ranking, shifted);
  }
  return rational_closure_query(oracle, derived.conj_inf_shift, shifted);
}

CompiledKB CompiledKB::compile(EntailmentOracle& oracle, const SCKB& kb) {
  CompiledKB out;
  out.kb_ = kb;
  out.consistent_ = is_consistent(oracle, kb);
  if (!out.consistent_) return out;
  out.conj_ranking_ = compute_ranking(oracle, conjunctive_form(kb));
  out.derived_ = partition(oracle, kb, out.conj_ranking_);
  out.shifted_ranking_ = compute_ranking(oracle, out.derived_.conj_inf_shift);
  return out;
}

bool CompiledKB::query(EntailmentOracle& oracle, const SituatedConditional& q) const {
  if (!consistent_) return true;
  const DefeasibleConditional shifted = conjunctive_form(q);
  if (!rank_of(oracle, conj_ranking_, q.situation).is_infinite()) {
    return rational_closure_query(oracle, conj_ranking_, shifted);
  }
  return rational_closure_query(oracle, shifted_ranking_, shifted);
}

}  // namespace sckb
