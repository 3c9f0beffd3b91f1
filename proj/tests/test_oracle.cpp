#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "sckb/error.hpp"
#include "sckb/oracle.hpp"
#include "support.hpp"

using namespace sckb;
using sckb::testing::sc;

namespace {

constexpr auto I = kInfiniteRank;

std::vector<DefeasibleConditional> defeasible(const SCKB& kb) {
  std::vector<DefeasibleConditional> out;
  for (const auto& c : kb.conditionals()) out.push_back({c.antecedent, c.consequent});
  return out;
}

}  // namespace

TEST_CASE("every convex ranked interpretation of one atom") {
  const Vocabulary v = Vocabulary::of({"p"});
  const auto all = enumerate_ranked_models({}, v);
  std::vector<std::vector<std::uint32_t>> ranks;
  for (const auto& r : all) ranks.push_back(r.ranks());
  CHECK(ranks == std::vector<std::vector<std::uint32_t>>{{0, 0}, {0, 1}, {0, I}, {1, 0}, {I, 0}, {I, I}});
}

TEST_CASE("ranked enumeration respects the conditionals") {
  const Vocabulary v = Vocabulary::of({"p", "q"});
  const auto only_inf = enumerate_ranked_models({{Formula::top(), Formula::bot()}}, v);
  REQUIRE(only_inf.size() == 1);
  CHECK(only_inf[0].plausible().empty());

  const auto c = std::vector<DefeasibleConditional>{{parse_formula("p"), parse_formula("q")}};
  const auto models_pq = enumerate_ranked_models(c, v);
  CHECK(std::all_of(models_pq.begin(), models_pq.end(), [&](const auto& r) { return is_model(r, c); }));
  std::set<std::vector<std::uint32_t>> distinct;
  for (const auto& r : models_pq) distinct.insert(r.ranks());
  CHECK(distinct.size() == models_pq.size());
  CHECK(enumerate_ranked_models(c, v).size() == models_pq.size());

  std::size_t convex_total = 0;
  enumerate_ranked_models({}, v, {}, [&](const RankedInterpretation& r) {
    CHECK(r.is_convex());
    ++convex_total;
    return true;
  });
  std::size_t satisfying = 0;
  enumerate_ranked_models({}, v, {}, [&](const RankedInterpretation& r) {
    satisfying += is_model(r, c);
    return true;
  });
  CHECK(satisfying == models_pq.size());
  // Choose the plausible valuations, then order them into levels.
  CHECK(convex_total == 1 + 4 * 1 + 6 * 3 + 4 * 13 + 75);
}

TEST_CASE("brute-force minimal ranked models") {
  const Vocabulary v = Vocabulary::of({"p", "q"});
  CHECK(brute_minimal_ranked_model({{parse_formula("p"), parse_formula("q")}}, v).ranks() ==
        std::vector<std::uint32_t>{0, 0, 1, 0});
  CHECK(brute_minimal_ranked_model({}, v).ranks() == std::vector<std::uint32_t>{0, 0, 0, 0});
  CHECK_THROWS_AS(brute_minimal_ranked_model({}, Vocabulary::of({"a", "b", "c"})), BudgetExceeded);
}

TEST_CASE("bird example: enumeration contains the figure and its minimum matches") {
  const Vocabulary v = Vocabulary::of({"b", "f", "p"});
  const auto c = defeasible(sckb::testing::load_kb("fig1.kb"));
  const std::vector<std::uint32_t> figure = {0, I, 0, I, 1, 1, 0, 2};
  bool found = false;
  enumerate_ranked_models(c, v, {3, 0}, [&](const RankedInterpretation& r) {
    found = found || r.ranks() == figure;
    return !found;
  });
  CHECK(found);
  EntailmentOracle o;
  CHECK(brute_minimal_ranked_model(c, v, {3, 0}).ranks() == figure);
  CHECK(build_minimal_ranked_model(o, c, v).ranks() == figure);
}

TEST_CASE("brute-force minimal epistemic models") {
  const Vocabulary pq = Vocabulary::of({"p", "q"});
  CHECK(brute_minimal_epistemic_model(SCKB({}, pq), pq) ==
        EpistemicInterpretation(pq, std::vector<Rank>(4, Rank::fin(0))));
  CHECK(brute_minimal_epistemic_model(SCKB({sc("p", "q", "p"), sc("p", "false")}, pq), pq) ==
        EpistemicInterpretation(pq, {Rank::fin(0), Rank::fin(0), Rank::inf(1), Rank::inf(0)}));
  const Vocabulary p = Vocabulary::of({"p"});
  CHECK(brute_minimal_epistemic_model(SCKB({sc("true", "p")}, p), p) ==
        EpistemicInterpretation(p, {Rank::fin(1), Rank::fin(0)}));
  CHECK_THROWS_AS(brute_minimal_epistemic_model(SCKB(), Vocabulary::of({"a", "b", "c"}), {3, 0}), BudgetExceeded);
}

TEST_CASE("epistemic enumeration is complete and convex") {
  const Vocabulary p = Vocabulary::of({"p"});
  const auto all = all_epistemic_interpretations(p);
  // Pairs over {(f,0),(f,1),(inf,0),(inf,1),(inf,inf)} with convex tiers.
  CHECK(all.size() == 13);
  for (const auto& e : all) CHECK(check_convexity(e));
  // Sum over tier assignments of the ordered-partition counts of each tier.
  CHECK(all_epistemic_interpretations(Vocabulary::of({"p", "q"})).size() == 541);
}

TEST_CASE("brute force agrees with the construction on random 2-atom KBs") {
  std::mt19937_64 rng(53);
  const auto as = sckb::testing::atoms({"p", "q"});
  const Vocabulary v(as);
  for (int i = 0; i < 150; ++i) {
    const SCKB kb = sckb::testing::random_kb(rng, as, 1 + rng() % 4, 2);
    EntailmentOracle o;
    const EpistemicInterpretation brute = brute_minimal_epistemic_model(kb, v);
    if (!is_consistent(o, kb)) {
      CHECK(brute.plausible().empty());
      continue;
    }
    CHECK(brute == build_minimal_epistemic_model(o, kb, v));
    CHECK(brute_minimal_ranked_model(conjunctive_form(kb), v) ==
          build_minimal_ranked_model(o, conjunctive_form(kb), v));
  }
}

TEST_CASE("postulates on the extreme interpretations") {
  const Vocabulary v = Vocabulary::of({"p", "q"});
  const PostulateReport plain = check_postulates(EpistemicInterpretation(v, std::vector<Rank>(4, Rank::fin(0))));
  CHECK(plain.all_passed());
  CHECK(plain["Cond"].instances > 0);

  const PostulateReport empty = check_postulates(EpistemicInterpretation(v, std::vector<Rank>(4, Rank::inf_inf())));
  CHECK(empty.all_passed({"Cons=>"}));
  CHECK_FALSE(empty["Cons=>"].passed());
  CHECK(empty["Cons=>"].witness == "gamma=p");
  CHECK(empty["Cons<="].passed());
  CHECK(postulate_names().size() == plain.outcomes.size());
}

TEST_CASE("postulates on a constructed model") {
  EntailmentOracle o;
  const SCKB kb = parse_kb("atoms: d f\nd |~[d] ~f\nd |~ false\n");
  const EpistemicInterpretation e = build_minimal_epistemic_model(o, kb);
  const PostulateReport r = check_postulates(e, 1);
  CHECK(r.all_passed({"Cons=>"}));
  const std::string json = to_json(r);
  CHECK(json.find("\"name\":\"SubExp\"") != std::string::npos);
  CHECK(json.find("\"all_passed\"") != std::string::npos);
}

TEST_CASE("postulates on random interpretations") {
  std::mt19937_64 rng(59);
  const Vocabulary v = Vocabulary::of({"p", "q"});
  const auto all = all_epistemic_interpretations(v);
  for (int i = 0; i < 20; ++i) {
    const auto& e = all[rng() % all.size()];
    CHECK(check_postulates(e, 1).all_passed({"Cons=>"}));
  }
}

TEST_CASE("grammar") {
  const auto g0 = formula_grammar(Vocabulary::of({"p", "q"}), 0);
  CHECK(g0.size() == 4);
  CHECK(to_string(g0[0]) == "p");
  CHECK(formula_grammar(Vocabulary::of({"p", "q"}), 1).size() == 4 + 4 + 4 * 16);
}

TEST_CASE("sampled dominance of the constructed model") {
  EntailmentOracle o;
  const SCKB kb = sckb::testing::load_kb("penguin_dodo.kb");
  const EpistemicInterpretation e = build_minimal_epistemic_model(o, kb);
  const DominanceResult r = check_sampled_minimality(e, kb, 3000, 1);
  CHECK(r.samples == 3000);
  CHECK(r.models > 0);
  CHECK(r.violations == 0);
}
