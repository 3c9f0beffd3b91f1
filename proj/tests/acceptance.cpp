// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "sckb/closure.hpp"
#include "sckb/error.hpp"
#include "sckb/oracle.hpp"
#include "sckb/semantics.hpp"
#include "support.hpp"

using namespace sckb;
using sckb::testing::sc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Verdicts recorded in order, for comparing backends.
using Trace = std::vector<bool>;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome dodo_reproduction(Backend backend, Trace& trace) {
  const SCKB kb = sckb::testing::load_kb("penguin_dodo.kb");
  const std::vector<std::pair<SituatedConditional, bool>> expected = {
      {sc("d", "false"), true},  {sc("d", "false", "d"), false}, {sc("d", "~f"), true},
      {sc("d", "f"), true},      {sc("d", "~f", "d"), true},     {sc("d", "f", "d"), false}};
  const auto start = Clock::now();
  int ok = 0;
  for (const auto& [q, want] : expected) {
    EntailmentOracle o(backend);
    const bool got = minimal_closure_query(o, kb, q);
    trace.push_back(got);
    ok += got == want;
  }
  const double s = seconds_since(start);
  return {ok == 6 && s < 1.0, fmt("%d/6 verdicts match, %.3f s", ok, s)};
}

Outcome kitchen_reproduction(Backend backend, Trace& trace) {
  const SCKB kb = sckb::testing::load_kb("kitchen.kb");
  const std::vector<std::pair<SituatedConditional, bool>> expected = {
      {sc("true", "si"), false}, {sc("true", "~si"), true}, {sc("true", "~cb2", "~ck"), true}};
  const auto start = Clock::now();
  int ok = 0;
  for (const auto& [q, want] : expected) {
    EntailmentOracle o(backend);
    const bool got = minimal_closure_query(o, kb, q);
    trace.push_back(got);
    ok += got == want;
  }
  const double s = seconds_since(start);
  return {ok == 3 && s < 1.0, fmt("%d/3 verdicts match, %.3f s", ok, s)};
}

Outcome rank_table(Backend backend, Trace& trace) {
  const std::vector<DefeasibleConditional> c = {{parse_formula("b"), parse_formula("f")},
                                                {parse_formula("p"), parse_formula("~f")},
                                                {parse_formula("p & ~b"), Formula::bot()}};
  EntailmentOracle o(backend);
  const FormulaRank not_p = rank_of(o, c, parse_formula("~p"));
  const FormulaRank p = rank_of(o, c, parse_formula("p"));
  const FormulaRank pf = rank_of(o, c, parse_formula("p & f"));
  const FormulaRank pnb = rank_of(o, c, parse_formula("p & ~b"));
  const bool ok = not_p == FormulaRank::finite(0) && p == FormulaRank::finite(1) && !pf.is_infinite() &&
                  pf.level() == 2 && pnb.is_infinite();
  for (const auto& r : {not_p, p, pf, pnb}) {
    trace.push_back(r.is_infinite());
    trace.push_back(r.level() & 1);
    trace.push_back(r.level() & 2);
  }
  return {ok, fmt("~p=%s p=%s p&f=%s (level %zu) p&~b=%s", not_p.to_string().c_str(), p.to_string().c_str(),
                  pf.to_string().c_str(), pf.level(), pnb.to_string().c_str())};
}

std::map<std::string, std::set<std::string>> parse_layers(const std::string& dump) {
  std::map<std::string, std::set<std::string>> layers;
  std::istringstream in(dump);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    std::istringstream words(line.substr(colon + 1));
    std::string w;
    while (words >> w) layers[line.substr(0, colon)].insert(w);
  }
  return layers;
}

Outcome model_figures(Backend backend, Trace& trace) {
  const std::string path = sckb::testing::data_path("penguin_dodo.kb");
  std::ostringstream out, err;
  const int code = cli::run({"model", path, std::string("--engine=") + to_string(backend)}, out, err);
  const auto epistemic = parse_layers(out.str());
  const std::map<std::string, std::set<std::string>> epistemic_figure = {
      {"(inf,inf)", {"~pd~b~f", "~pd~bf", "p~d~b~f", "p~d~bf", "pd~b~f", "pd~bf"}},
      {"(inf,1)", {"~pdbf", "pdbf"}},
      {"(inf,0)", {"~pdb~f", "pdb~f"}},
      {"(f,2)", {"p~dbf"}},
      {"(f,1)", {"~p~db~f", "p~db~f"}},
      {"(f,0)", {"~p~dbf", "~p~d~bf", "~p~d~b~f"}}};

  const SCKB kb = sckb::testing::load_kb("penguin_dodo.kb");
  EntailmentOracle o(backend);
  const auto ranked = parse_layers(dump_layers(build_minimal_ranked_model(o, conjunctive_form(kb), kb.vocab())));
  std::set<std::string> rest;
  for (std::uint32_t u = 0; u < 16; ++u) rest.insert(to_string(kb.vocab(), Valuation{u}));
  const std::map<std::string, std::set<std::string>> finite_part = {
      {"2", {"p~dbf"}}, {"1", {"~p~db~f", "p~db~f"}}, {"0", {"~p~dbf", "~p~d~bf", "~p~d~b~f"}}};
  for (const auto& [label, worlds] : finite_part)
    for (const auto& w : worlds) rest.erase(w);
  auto ranked_figure = finite_part;
  ranked_figure["inf"] = rest;

  const Vocabulary bfp = Vocabulary::of({"b", "f", "p"});
  const SCKB fig1 = sckb::testing::load_kb("fig1.kb");
  const auto bird = parse_layers(dump_layers(build_minimal_ranked_model(o, conjunctive_form(fig1), bfp)));
  const std::map<std::string, std::set<std::string>> bird_figure = {
      {"inf", {"~b~fp", "~bfp"}}, {"2", {"bfp"}}, {"1", {"b~f~p", "b~fp"}}, {"0", {"~b~f~p", "~bf~p", "bf~p"}}};

  const bool a = code == 0 && epistemic == epistemic_figure;
  const bool b = ranked == ranked_figure;
  const bool c = bird == bird_figure;
  trace.push_back(a);
  trace.push_back(b);
  trace.push_back(c);
  return {a && b && c, fmt("epistemic model %s, ranked model of conjunctive form %s, bird ranked model %s",
                           a ? "matches" : "differs", b ? "matches" : "differs", c ? "matches" : "differs")};
}

// ---------------------------------------------------------------------------
// Algorithm vs. semantics.

struct PoolConditional {
  SituatedConditional c;
  std::uint64_t a, b, g;
};

// Conditionals a |~[g] b with a, g in {true, p, q, ~p, ~q} and b in the same
// set plus false.
std::vector<PoolConditional> literal_pool(const Vocabulary& v) {
  const std::vector<Formula> ag = {Formula::top(), parse_formula("p"), parse_formula("q"), parse_formula("~p"),
                                   parse_formula("~q")};
  std::vector<Formula> bs = ag;
  bs.push_back(Formula::bot());
  std::vector<PoolConditional> out;
  for (const auto& a : ag)
    for (const auto& g : ag)
      for (const auto& b : bs) {
        out.push_back({{a, b, g}, models(a, v).mask(), models(b, v).mask(), models(g, v).mask()});
      }
  return out;
}

// One representative per satisfaction class, dropping conditionals every
// interpretation satisfies. Satisfaction of a |~[g] b depends only on g,
// a & g, and b restricted to a & g.
std::vector<SituatedConditional> canonical_pool(const std::vector<PoolConditional>& pool) {
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> seen;
  std::vector<SituatedConditional> out;
  for (const auto& p : pool) {
    const std::uint64_t ag = p.a & p.g;
    if ((ag & ~p.b) == 0) continue;
    if (seen.insert({p.g, ag, p.b & ag}).second) out.push_back(p.c);
  }
  return out;
}

template <typename F>
void for_each_subset_up_to_3(const std::vector<SituatedConditional>& pool, const Vocabulary& v, F&& f) {
  f(SCKB({}, v));
  const std::size_t n = pool.size();
  for (std::size_t i = 0; i < n; ++i) {
    f(SCKB({pool[i]}, v));
    for (std::size_t j = i + 1; j < n; ++j) {
      f(SCKB({pool[i], pool[j]}, v));
      for (std::size_t k = j + 1; k < n; ++k) f(SCKB({pool[i], pool[j], pool[k]}, v));
    }
  }
}

struct QuerySet {
  std::vector<SituatedConditional> queries;
  std::vector<std::array<WorldSet, 3>> masks;  // antecedent, consequent, situation
};

QuerySet make_queries(const std::vector<Atom>& atoms) {
  QuerySet qs;
  const Vocabulary v(atoms);
  qs.queries = sckb::testing::all_queries(sckb::testing::literal_grammar(atoms));
  for (const auto& q : qs.queries) {
    qs.masks.push_back({models(q.antecedent, v), models(q.consequent, v), models(q.situation, v)});
  }
  return qs;
}

struct Agreement {
  std::size_t kbs = 0;
  std::size_t queries = 0;
  std::size_t mismatches = 0;
  std::string witness;

  void check(Backend backend, const SCKB& kb, const Vocabulary& v, const QuerySet& qs, Trace& trace,
             std::size_t fresh_stride) {
    ++kbs;
    EntailmentOracle o(backend);
    const CompiledKB compiled = CompiledKB::compile(o, kb);
    const EpistemicInterpretation e =
        compiled.consistent()
            ? build_minimal_epistemic_model(o, kb, v)
            : EpistemicInterpretation(v, std::vector<Rank>(v.world_count(), Rank::inf_inf()));
    for (std::size_t i = 0; i < qs.queries.size(); ++i) {
      const bool alg = compiled.query(o, qs.queries[i]);
      const bool sem = satisfies_situated(e, qs.masks[i][0], qs.masks[i][1], qs.masks[i][2]);
      bool agree = alg == sem;
      if (fresh_stride && i % fresh_stride == kbs % fresh_stride) {
        agree = agree && minimal_closure_query(o, kb, qs.queries[i]) == alg;
      }
      ++queries;
      trace.push_back(alg);
      if (!agree && mismatches++ == 0) witness = serialize(kb) + "query " + to_string(qs.queries[i]);
    }
  }
};

Outcome algorithm_semantics(Backend backend, Trace& trace) {
  const auto start = Clock::now();
  const auto pq = sckb::testing::atoms({"p", "q"});
  const Vocabulary v2(pq);
  const QuerySet q2 = make_queries(pq);
  const auto pool = literal_pool(v2);

  Agreement canonical;
  for_each_subset_up_to_3(canonical_pool(pool), v2,
                          [&](const SCKB& kb) { canonical.check(backend, kb, v2, q2, trace, 8); });

  std::vector<SituatedConditional> raw_pool;
  for (const auto& p : pool) raw_pool.push_back(p.c);
  Agreement raw;
  for_each_subset_up_to_3(raw_pool, v2, [&](const SCKB& kb) { raw.check(backend, kb, v2, q2, trace, 64); });

  const auto pqr = sckb::testing::atoms({"p", "q", "r"});
  const Vocabulary v3(pqr);
  const QuerySet q3 = make_queries(pqr);
  std::mt19937_64 rng(101);
  Agreement random3;
  for (int i = 0; i < 500; ++i) {
    random3.check(backend, sckb::testing::random_kb(rng, pqr, 1 + rng() % 5, 2), v3, q3, trace, 8);
  }

  const double s = seconds_since(start);
  const std::size_t mismatches = canonical.mismatches + raw.mismatches + random3.mismatches;
  std::string detail =
      fmt("%zu KBs from the literal grammar and %zu canonical ones, x %zu queries each; %zu random 3-atom KBs x "
          "%zu queries; %zu disagreements, %.1f s",
          raw.kbs, canonical.kbs, q2.queries.size(), random3.kbs, q3.queries.size(), mismatches, s);
  for (const auto* a : {&canonical, &raw, &random3}) {
    if (!a->witness.empty()) detail += "\n    first disagreement:\n" + a->witness;
  }
  return {mismatches == 0 && s < 600, detail};
}

// ---------------------------------------------------------------------------

Outcome postulate_suites() {
  const auto start = Clock::now();
  const Vocabulary v = Vocabulary::of({"p", "q"});
  const auto all = all_epistemic_interpretations(v);
  std::mt19937_64 rng(103);
  std::vector<EpistemicInterpretation> sample;
  for (int i = 0; i < 200; ++i) sample.push_back(all[rng() % all.size()]);
  sample.emplace_back(v, std::vector<Rank>(4, Rank::fin(0)));

  std::map<std::string, std::uint64_t> violations, instances;
  for (const auto& e : sample) {
    for (const auto& o : check_postulates(e, 1).outcomes) {
      violations[o.name] += o.violations;
      instances[o.name] += o.instances;
    }
  }
  std::uint64_t total = 0;
  std::string failing;
  for (const auto& [name, n] : violations) {
    if (name == "Cons=>") continue;
    total += n;
    if (n) failing += " " + name;
  }
  const PostulateReport empty = check_postulates(EpistemicInterpretation(v, std::vector<Rank>(4, Rank::inf_inf())));
  const bool countermodel = !empty["Cons=>"].passed() && empty.all_passed({"Cons=>"});
  const double s = seconds_since(start);
  std::uint64_t checked = 0;
  for (const auto& [name, n] : instances) checked += n;
  return {total == 0 && countermodel && s < 300,
          fmt("%zu interpretations, %llu instances, %llu violations%s; all-(inf,inf) refutes Cons=> with %s; %.1f s",
              sample.size(), static_cast<unsigned long long>(checked), static_cast<unsigned long long>(total),
              failing.c_str(), empty["Cons=>"].witness.c_str(), s)};
}

Outcome consistency_reduction(Backend backend, Trace& trace) {
  const auto pq = sckb::testing::atoms({"p", "q"});
  const Vocabulary v(pq);
  std::size_t kbs = 0, disagree = 0, consistent = 0, brute_differs = 0;
  for_each_subset_up_to_3(canonical_pool(literal_pool(v)), v, [&](const SCKB& kb) {
    ++kbs;
    EntailmentOracle o(backend);
    const bool algo = is_consistent(o, kb);
    const EpistemicInterpretation brute = brute_minimal_epistemic_model(kb, v);
    const bool semantic = !brute.layer(Rank::fin(0)).empty();
    trace.push_back(algo);
    disagree += algo != semantic;
    consistent += algo;
    if (algo && brute != build_minimal_epistemic_model(o, kb, v)) ++brute_differs;
  });
  return {disagree == 0 && brute_differs == 0,
          fmt("%zu KBs (%zu consistent), %zu disagreements; brute-force minimum equals construction on all "
              "consistent ones: %s",
              kbs, consistent, disagree, brute_differs == 0 ? "yes" : "no")};
}

Outcome mu_lemma(Backend backend, Trace& trace) {
  std::mt19937_64 rng(107);
  const auto pqr = sckb::testing::atoms({"p", "q", "r"});
  const Vocabulary v(pqr);
  std::size_t tried = 0, ok = 0;
  while (tried < 200) {
    const std::size_t n_atoms = 1 + rng() % 3;
    const std::vector<Atom> atoms(pqr.begin(), pqr.begin() + n_atoms);
    const SCKB kb = sckb::testing::random_kb(rng, atoms, 1 + rng() % 5, 2);
    EntailmentOracle o(backend);
    if (!is_consistent(o, kb)) continue;
    ++tried;
    const auto conj = conjunctive_form(kb);
    const RankingTuple r = compute_ranking(o, conj);
    const Formula mu = build_mu(r.fixpoint);
    const Formula kf = characteristic_formula(build_minimal_ranked_model(o, conj, v).plausible(), v);
    const std::vector<Formula> lhs{mu}, rhs{kf};
    const bool eq = o.entails(lhs, kf) && o.entails(rhs, mu);
    trace.push_back(eq);
    ok += eq;
  }
  return {ok == tried, fmt("%zu/%zu consistent KBs", ok, tried)};
}

Outcome complexity_bound(Backend backend, Trace& trace) {
  std::mt19937_64 rng(109);
  const auto atoms = sckb::testing::atoms({"a", "b", "c", "d", "e", "g"});
  std::size_t queries = 0, violations = 0;
  std::uint64_t worst_ratio_calls = 0, worst_ratio_bound = 1;
  for (std::size_t n = 2; n <= 20; ++n) {
    for (int k = 0; k < 5; ++k) {
      SCKB kb({}, Vocabulary(atoms));
      while (kb.size() < n) kb.add(sckb::testing::random_conditional(rng, atoms, 2));
      for (int i = 0; i < 10; ++i) {
        EntailmentOracle o(backend);
        trace.push_back(minimal_closure_query(o, kb, sckb::testing::random_conditional(rng, atoms, 2)));
        const std::uint64_t bound = n * n * n + 3 * n * n + n + 2;
        ++queries;
        violations += o.calls() > bound;
        if (o.calls() * worst_ratio_bound > worst_ratio_calls * bound) {
          worst_ratio_calls = o.calls();
          worst_ratio_bound = bound;
        }
      }
    }
  }
  return {violations == 0, fmt("%zu queries over KB sizes 2..20, %zu over the bound; tightest %llu of %llu calls",
                               queries, violations, static_cast<unsigned long long>(worst_ratio_calls),
                               static_cast<unsigned long long>(worst_ratio_bound))};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(Backend, Trace&)> run;
};

void report(int id, const char* name, const Outcome& o, int& failures) {
  std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "penguin/dodo minimal closure", dodo_reproduction},
      {2, "kitchen minimal closure", kitchen_reproduction},
      {3, "rank table", rank_table},
      {4, "model figures", model_figures},
      {5, "algorithm agrees with the minimal epistemic model", algorithm_semantics},
      {6, "postulate suites", [](Backend, Trace&) { return postulate_suites(); }},
      {7, "consistency reduction", consistency_reduction},
      {8, "mu characterises the plausible valuations", mu_lemma},
      {9, "entailment-call bound", complexity_bound},
  };

  int failures = 0;
  std::map<int, Trace> tt_traces;
  for (const auto& c : criteria) {
    report(c.id, c.name, c.run(Backend::TruthTable, tt_traces[c.id]), failures);
  }

  // Criterion 6 makes no entailment calls, so it is not repeated.
  std::size_t compared = 0;
  std::string differing, failing;
  for (const auto& c : criteria) {
    if (c.id == 6) continue;
    Trace search;
    const Outcome o = c.run(Backend::Search, search);
    if (!o.pass) failing += " " + std::to_string(c.id);
    if (search != tt_traces[c.id]) differing += " " + std::to_string(c.id);
    compared += search.size();
  }
  Outcome diff;
  diff.pass = differing.empty() && failing.empty();
  diff.detail = fmt("%zu verdicts compared across criteria 1-5, 7-9; differing in:%s; failing under search:%s",
                    compared, differing.empty() ? " none" : differing.c_str(),
                    failing.empty() ? " none" : failing.c_str());
  report(10, "truth-table and search backends agree", diff, failures);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
