#include "sckb/semantics.hpp"

#include <algorithm>
#include <map>

#include "sckb/error.hpp"

namespace sckb {

std::string Rank::to_string() const {
  switch (tier_) {
    case Tier::Finite: return "(f," + std::to_string(level_) + ")";
    case Tier::Infinite: return "(inf," + std::to_string(level_) + ")";
    case Tier::Impossible: return "(inf,inf)";
  }
  return "";
}

namespace {

void check_size(const Vocabulary& vocab, std::size_t n) {
  if (n != vocab.world_count()) {
    throw Error("interpretation has " + std::to_string(n) + " ranks, vocabulary has " +
                std::to_string(vocab.world_count()) + " valuations");
  }
}

// Valuations of `candidates` with the ⪯-least rank are all in `target`.
template <typename RankOf>
bool minimal_within(const WorldSet& candidates, const WorldSet& target, RankOf&& rank_of) {
  bool any = false;
  decltype(rank_of(Valuation{})) best{};
  candidates.for_each([&](Valuation v) {
    auto r = rank_of(v);
    if (!any || r < best) {
      best = r;
      any = true;
    }
  });
  if (!any) return true;
  bool ok = true;
  candidates.for_each([&](Valuation v) {
    if (rank_of(v) == best && !target.contains(v)) ok = false;
  });
  return ok;
}

// Each tier's used levels must form a prefix 0..k.
bool levels_contiguous(const std::vector<std::uint32_t>& used_levels) {
  std::vector<bool> seen(used_levels.size() + 1, false);
  std::uint32_t max = 0;
  for (auto l : used_levels) {
    if (l < seen.size()) seen[l] = true;
    max = std::max(max, l);
  }
  if (used_levels.empty()) return true;
  if (max >= seen.size()) return false;
  for (std::uint32_t j = 0; j <= max; ++j) {
    if (!seen[j]) return false;
  }
  return true;
}

}  // namespace

RankedInterpretation::RankedInterpretation(Vocabulary vocab, std::vector<std::uint32_t> ranks)
    : vocab_(std::move(vocab)), ranks_(std::move(ranks)) {
  check_size(vocab_, ranks_.size());
}

WorldSet RankedInterpretation::plausible() const {
  WorldSet s(ranks_.size());
  for (std::uint32_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i] != kInfiniteRank) s.insert({i});
  }
  return s;
}

WorldSet RankedInterpretation::layer(std::uint32_t rank) const {
  WorldSet s(ranks_.size());
  for (std::uint32_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i] == rank) s.insert({i});
  }
  return s;
}

long RankedInterpretation::max_finite_rank() const {
  long best = -1;
  for (auto r : ranks_) {
    if (r != kInfiniteRank) best = std::max(best, static_cast<long>(r));
  }
  return best;
}

bool RankedInterpretation::is_convex() const {
  std::vector<std::uint32_t> used;
  for (auto r : ranks_) {
    if (r != kInfiniteRank) used.push_back(r);
  }
  return levels_contiguous(used);
}

EpistemicInterpretation::EpistemicInterpretation(Vocabulary vocab, std::vector<Rank> ranks)
    : vocab_(std::move(vocab)), ranks_(std::move(ranks)) {
  check_size(vocab_, ranks_.size());
}

WorldSet EpistemicInterpretation::plausible() const {
  WorldSet s(ranks_.size());
  for (std::uint32_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i].is_finite()) s.insert({i});
  }
  return s;
}

WorldSet EpistemicInterpretation::possible() const {
  WorldSet s(ranks_.size());
  for (std::uint32_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i].is_possible()) s.insert({i});
  }
  return s;
}

WorldSet EpistemicInterpretation::layer(Rank r) const {
  WorldSet s(ranks_.size());
  for (std::uint32_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i] == r) s.insert({i});
  }
  return s;
}

bool check_convexity(const EpistemicInterpretation& e) {
  std::vector<std::uint32_t> fin, inf;
  for (const Rank& r : e.ranks()) {
    if (r.is_finite()) fin.push_back(r.level());
    else if (r.is_possible()) inf.push_back(r.level());
  }
  return levels_contiguous(fin) && levels_contiguous(inf);
}

bool satisfies_defeasible(const RankedInterpretation& r, const WorldSet& antecedent,
                          const WorldSet& consequent) {
  return minimal_within(antecedent & r.plausible(), consequent,
                        [&](Valuation v) { return r.rank(v); });
}

bool satisfies_situated(const EpistemicInterpretation& e, const WorldSet& antecedent,
                        const WorldSet& consequent, const WorldSet& situation) {
  const WorldSet plausible = e.plausible();
  const WorldSet tier = situation.intersects(plausible) ? plausible : e.possible();
  return minimal_within(antecedent & situation & tier, consequent,
                        [&](Valuation v) { return e.rank(v); });
}

bool satisfies_defeasible(const RankedInterpretation& r, const DefeasibleConditional& c) {
  return satisfies_defeasible(r, models(c.antecedent, r.vocab()), models(c.consequent, r.vocab()));
}

bool satisfies_situated(const EpistemicInterpretation& e, const SituatedConditional& c) {
  return satisfies_situated(e, models(c.antecedent, e.vocab()), models(c.consequent, e.vocab()),
                            models(c.situation, e.vocab()));
}

bool is_model(const RankedInterpretation& r, const std::vector<DefeasibleConditional>& c) {
  return r.is_convex() &&
         std::all_of(c.begin(), c.end(), [&](const auto& d) { return satisfies_defeasible(r, d); });
}

bool is_model(const EpistemicInterpretation& e, const SCKB& kb) {
  return check_convexity(e) &&
         std::all_of(kb.conditionals().begin(), kb.conditionals().end(),
                     [&](const auto& c) { return satisfies_situated(e, c); });
}

RankedInterpretation extract_ranked(const EpistemicInterpretation& e) {
  std::vector<std::uint32_t> ranks;
  ranks.reserve(e.ranks().size());
  for (const Rank& r : e.ranks()) ranks.push_back(r.is_finite() ? r.level() : kInfiniteRank);
  return RankedInterpretation(e.vocab(), std::move(ranks));
}

EpistemicInterpretation extract_epistemic(const RankedInterpretation& r) {
  std::vector<Rank> ranks;
  ranks.reserve(r.ranks().size());
  for (auto v : r.ranks()) ranks.push_back(v == kInfiniteRank ? Rank::inf_inf() : Rank::fin(v));
  return EpistemicInterpretation(r.vocab(), std::move(ranks));
}

EpistemicInterpretation counterfactual_shift(const EpistemicInterpretation& e) {
  std::vector<Rank> ranks;
  ranks.reserve(e.ranks().size());
  for (const Rank& r : e.ranks()) ranks.push_back(r.is_possible() ? Rank::fin(r.level()) : Rank::inf_inf());
  return EpistemicInterpretation(e.vocab(), std::move(ranks));
}

bool pointwise_leq(const RankedInterpretation& a, const RankedInterpretation& b) {
  for (std::size_t i = 0; i < a.ranks().size(); ++i) {
    if (a.ranks()[i] > b.ranks()[i]) return false;
  }
  return true;
}

bool pointwise_leq(const EpistemicInterpretation& a, const EpistemicInterpretation& b) {
  for (std::size_t i = 0; i < a.ranks().size(); ++i) {
    if (b.ranks()[i] < a.ranks()[i]) return false;
  }
  return true;
}

RankedInterpretation ranked_model_from_ranking(const RankingTuple& ranking, const Vocabulary& vocab) {
  const std::size_t worlds = vocab.world_count();
  std::vector<WorldSet> stratum_models;
  for (const auto& material : ranking.strata_material) stratum_models.push_back(models(material, vocab));
  const WorldSet fixpoint_models = models(ranking.fixpoint_material, vocab);

  std::vector<std::uint32_t> ranks(worlds, kInfiniteRank);
  for (std::uint32_t u = 0; u < worlds; ++u) {
    for (std::size_t i = 0; i < stratum_models.size(); ++i) {
      if (stratum_models[i].contains({u})) {
        ranks[u] = static_cast<std::uint32_t>(i);
        break;
      }
    }
    if (ranks[u] == kInfiniteRank && fixpoint_models.contains({u})) {
      ranks[u] = static_cast<std::uint32_t>(stratum_models.size());
    }
  }
  return RankedInterpretation(vocab, std::move(ranks));
}

RankedInterpretation build_minimal_ranked_model(EntailmentOracle& oracle,
                                                const std::vector<DefeasibleConditional>& c,
                                                const Vocabulary& vocab) {
  if (!oracle.is_satisfiable(materialise(c))) {
    throw InconsistentKB("conditional knowledge base is inconsistent");
  }
  return ranked_model_from_ranking(compute_ranking(oracle, c), vocab);
}

EpistemicInterpretation build_classical_epistemic_model(EntailmentOracle& oracle, const SCKB& kb,
                                                        const Vocabulary& vocab) {
  if (!is_consistent(oracle, kb)) throw InconsistentKB("situated knowledge base is inconsistent");
  return extract_epistemic(
      ranked_model_from_ranking(compute_ranking(oracle, conjunctive_form(kb)), vocab));
}

EpistemicInterpretation build_classical_epistemic_model(EntailmentOracle& oracle, const SCKB& kb) {
  return build_classical_epistemic_model(oracle, kb, kb.vocab());
}

EpistemicInterpretation build_minimal_epistemic_model(EntailmentOracle& oracle, const SCKB& kb,
                                                      const Vocabulary& vocab) {
  if (!is_consistent(oracle, kb)) throw InconsistentKB("situated knowledge base is inconsistent");
  const RankingTuple conj_ranking = compute_ranking(oracle, conjunctive_form(kb));
  const RankedInterpretation plausible_part = ranked_model_from_ranking(conj_ranking, vocab);
  const DerivedKBs derived = partition(oracle, kb, conj_ranking);
  // If KB∧∞↓ is inconsistent its ranking puts every valuation at ∞, which
  // sends all implausible valuations to (inf,inf).
  const RankedInterpretation counterfactual_part =
      ranked_model_from_ranking(compute_ranking(oracle, derived.conj_inf_shift), vocab);

  std::vector<Rank> ranks;
  ranks.reserve(plausible_part.ranks().size());
  for (std::size_t u = 0; u < plausible_part.ranks().size(); ++u) {
    const auto fin = plausible_part.ranks()[u];
    const auto inf = counterfactual_part.ranks()[u];
    if (fin != kInfiniteRank) ranks.push_back(Rank::fin(fin));
    else if (inf != kInfiniteRank) ranks.push_back(Rank::inf(inf));
    else ranks.push_back(Rank::inf_inf());
  }
  return EpistemicInterpretation(vocab, std::move(ranks));
}

EpistemicInterpretation build_minimal_epistemic_model(EntailmentOracle& oracle, const SCKB& kb) {
  return build_minimal_epistemic_model(oracle, kb, kb.vocab());
}

namespace {

template <typename Key, typename Label>
std::string dump(const Vocabulary& vocab, const std::vector<Key>& ranks, Label&& label) {
  std::map<Key, std::vector<std::uint32_t>> layers;
  for (std::uint32_t u = 0; u < ranks.size(); ++u) layers[ranks[u]].push_back(u);
  std::string out;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    out += label(it->first) + ":";
    for (auto u : it->second) out += " " + to_string(vocab, Valuation{u});
    out += "\n";
  }
  return out;
}

}  // namespace

std::string dump_layers(const EpistemicInterpretation& e) {
  return dump(e.vocab(), e.ranks(), [](const Rank& r) { return r.to_string(); });
}

std::string dump_layers(const RankedInterpretation& r) {
  return dump(r.vocab(), r.ranks(), [](std::uint32_t v) {
    return v == kInfiniteRank ? std::string("inf") : std::to_string(v);
  });
}

}  // namespace sckb
