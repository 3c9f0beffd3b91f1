#include "sckb/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "sckb/error.hpp"

namespace sckb {

namespace {

constexpr std::uint32_t kInfTierBase = 1u << 16;
constexpr std::uint32_t kImpossibleKey = std::numeric_limits<std::uint32_t>::max();

std::uint32_t key_of(Rank r) {
  if (r.is_finite()) return r.level();
  if (r.is_possible()) return kInfTierBase + r.level();
  return kImpossibleKey;
}

Rank rank_of_key(std::uint32_t k) {
  if (k == kImpossibleKey) return Rank::inf_inf();
  if (k >= kInfTierBase) return Rank::inf(k - kInfTierBase);
  return Rank::fin(k);
}

// Valuations of `candidates` with the least key all lie in `target`.
bool least_within(const std::uint32_t* keys, std::uint64_t candidates, std::uint64_t target) {
  std::uint32_t best = kImpossibleKey;
  std::uint64_t least = 0;
  for (auto bits = candidates; bits; bits &= bits - 1) {
    const int u = __builtin_ctzll(bits);
    if (keys[u] < best) {
      best = keys[u];
      least = std::uint64_t{1} << u;
    } else if (keys[u] == best) {
      least |= std::uint64_t{1} << u;
    }
  }
  return (least & ~target) == 0;
}

// Satisfaction over keys for vocabularies of at most 6 atoms.
struct SmallEpistemic {
  std::array<std::uint32_t, 64> keys{};
  std::uint64_t plausible = 0;
  std::uint64_t possible = 0;

  void set(std::size_t u, std::uint32_t key) {
    keys[u] = key;
    const auto bit = std::uint64_t{1} << u;
    plausible &= ~bit;
    possible &= ~bit;
    if (key < kInfTierBase) plausible |= bit;
    else if (key != kImpossibleKey) possible |= bit;
  }

  bool sat(std::uint64_t a, std::uint64_t b, std::uint64_t g) const {
    const std::uint64_t tier = (g & plausible) ? plausible : possible;
    return least_within(keys.data(), a & g & tier, b);
  }
};

struct MaskTriple {
  std::uint64_t a, b, g;
};

void check_budget(const Vocabulary& vocab, const EnumerationBudget& budget, std::size_t hard_cap) {
  const std::size_t cap = std::min(budget.max_atoms, hard_cap);
  if (vocab.size() > cap) {
    throw BudgetExceeded("enumeration over " + std::to_string(vocab.size()) +
                         " atoms exceeds the limit of " + std::to_string(cap));
  }
}

std::size_t level_cap(const EnumerationBudget& budget, std::size_t worlds) {
  return budget.max_rank_levels == 0 ? worlds : std::min(budget.max_rank_levels, worlds);
}

// Unused levels below the highest used one.
std::size_t gaps(const std::vector<std::uint32_t>& counts) {
  std::size_t top = 0;
  bool any = false;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l]) {
      top = l;
      any = true;
    }
  }
  if (!any) return 0;
  std::size_t missing = 0;
  for (std::size_t l = 0; l < top; ++l) missing += counts[l] == 0;
  return missing;
}

// Depth-first over key vectors in ascending lexicographic order, pruning
// prefixes that can no longer be completed to a convex assignment.
class KeyEnumerator {
 public:
  KeyEnumerator(std::size_t worlds, std::size_t levels, bool epistemic)
      : worlds_(worlds), levels_(levels), epistemic_(epistemic), fin_(levels, 0), inf_(levels, 0) {
    for (std::uint32_t l = 0; l < levels; ++l) options_.push_back(l);
    if (epistemic) {
      for (std::uint32_t l = 0; l < levels; ++l) options_.push_back(kInfTierBase + l);
    }
    options_.push_back(kImpossibleKey);
  }

  template <typename Leaf>
  void run(Leaf&& leaf) {
    keys_.assign(worlds_, 0);
    stop_ = false;
    recurse(0, leaf);
  }

  const std::vector<std::uint32_t>& keys() const { return keys_; }

 private:
  template <typename Leaf>
  void recurse(std::size_t u, Leaf& leaf) {
    if (stop_) return;
    const std::size_t missing = gaps(fin_) + gaps(inf_);
    if (missing > worlds_ - u) return;
    if (u == worlds_) {
      if (!leaf(keys_)) stop_ = true;
      return;
    }
    for (auto k : options_) {
      keys_[u] = k;
      auto* counter = bucket(k);
      if (counter) ++*counter;
      recurse(u + 1, leaf);
      if (counter) --*counter;
      if (stop_) return;
    }
  }

  std::uint32_t* bucket(std::uint32_t k) {
    if (k == kImpossibleKey) return nullptr;
    if (k >= kInfTierBase) return &inf_[k - kInfTierBase];
    return &fin_[k];
  }

  std::size_t worlds_;
  std::size_t levels_;
  bool epistemic_;
  std::vector<std::uint32_t> options_;
  std::vector<std::uint32_t> keys_;
  std::vector<std::uint32_t> fin_;
  std::vector<std::uint32_t> inf_;
  bool stop_ = false;
};

std::vector<std::uint32_t> to_ranked(const std::vector<std::uint32_t>& keys) {
  std::vector<std::uint32_t> ranks(keys.size());
  std::transform(keys.begin(), keys.end(), ranks.begin(),
                 [](std::uint32_t k) { return k == kImpossibleKey ? kInfiniteRank : k; });
  return ranks;
}

std::vector<Rank> to_ranks(const std::vector<std::uint32_t>& keys) {
  std::vector<Rank> ranks(keys.size());
  std::transform(keys.begin(), keys.end(), ranks.begin(), rank_of_key);
  return ranks;
}

std::uint64_t mask_of(const Formula& f, const Vocabulary& vocab) { return models(f, vocab).mask(); }

}  // namespace

void enumerate_ranked_models(const std::vector<DefeasibleConditional>& c, const Vocabulary& vocab,
                             const EnumerationBudget& budget, const RankedVisitor& visit) {
  check_budget(vocab, budget, 3);
  const std::size_t worlds = vocab.world_count();
  std::vector<MaskTriple> masks;
  for (const auto& d : c) masks.push_back({mask_of(d.antecedent, vocab), mask_of(d.consequent, vocab), 0});

  KeyEnumerator en(worlds, level_cap(budget, worlds), false);
  en.run([&](const std::vector<std::uint32_t>& keys) {
    std::uint64_t finite = 0;
    for (std::size_t u = 0; u < worlds; ++u) {
      if (keys[u] != kImpossibleKey) finite |= std::uint64_t{1} << u;
    }
    for (const auto& m : masks) {
      if (!least_within(keys.data(), m.a & finite, m.b)) return true;
    }
    return visit(RankedInterpretation(vocab, to_ranked(keys)));
  });
}

std::vector<RankedInterpretation> enumerate_ranked_models(const std::vector<DefeasibleConditional>& c,
                                                          const Vocabulary& vocab,
                                                          const EnumerationBudget& budget) {
  std::vector<RankedInterpretation> out;
  enumerate_ranked_models(c, vocab, budget, [&](const RankedInterpretation& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

RankedInterpretation brute_minimal_ranked_model(const std::vector<DefeasibleConditional>& c,
                                                const Vocabulary& vocab, const EnumerationBudget& budget) {
  std::vector<std::uint32_t> meet;
  enumerate_ranked_models(c, vocab, budget, [&](const RankedInterpretation& r) {
    if (meet.empty()) {
      meet = r.ranks();
    } else {
      for (std::size_t u = 0; u < meet.size(); ++u) meet[u] = std::min(meet[u], r.ranks()[u]);
    }
    return true;
  });
  if (meet.empty()) throw NoModel("conditional knowledge base has no ranked model");
  RankedInterpretation result(vocab, std::move(meet));
  if (!is_model(result, c)) throw Error("ranked models have no pointwise minimum");
  return result;
}

void enumerate_epistemic_models(const SCKB& kb, const Vocabulary& vocab, const EnumerationBudget& budget,
                                const EpistemicVisitor& visit) {
  check_budget(vocab, budget, 2);
  const std::size_t worlds = vocab.world_count();
  std::vector<MaskTriple> masks;
  for (const auto& c : kb.conditionals()) {
    masks.push_back({mask_of(c.antecedent, vocab), mask_of(c.consequent, vocab), mask_of(c.situation, vocab)});
  }

  KeyEnumerator en(worlds, level_cap(budget, worlds), true);
  SmallEpistemic small;
  en.run([&](const std::vector<std::uint32_t>& keys) {
    for (std::size_t u = 0; u < worlds; ++u) small.set(u, keys[u]);
    for (const auto& m : masks) {
      if (!small.sat(m.a, m.b, m.g)) return true;
    }
    return visit(EpistemicInterpretation(vocab, to_ranks(keys)));
  });
}

std::vector<EpistemicInterpretation> enumerate_epistemic_models(const SCKB& kb, const Vocabulary& vocab,
                                                                const EnumerationBudget& budget) {
  std::vector<EpistemicInterpretation> out;
  enumerate_epistemic_models(kb, vocab, budget, [&](const EpistemicInterpretation& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

EpistemicInterpretation brute_minimal_epistemic_model(const SCKB& kb, const Vocabulary& vocab,
                                                      const EnumerationBudget& budget) {
  std::vector<Rank> meet;
  enumerate_epistemic_models(kb, vocab, budget, [&](const EpistemicInterpretation& e) {
    if (meet.empty()) {
      meet = e.ranks();
    } else {
      for (std::size_t u = 0; u < meet.size(); ++u) meet[u] = std::min(meet[u], e.ranks()[u]);
    }
    return true;
  });
  if (meet.empty()) throw NoModel("situated knowledge base has no epistemic model");
  EpistemicInterpretation result(vocab, std::move(meet));
  if (!is_model(result, kb)) throw Error("epistemic models have no pointwise minimum");
  return result;
}

std::vector<EpistemicInterpretation> all_epistemic_interpretations(const Vocabulary& vocab,
                                                                   const EnumerationBudget& budget) {
  return enumerate_epistemic_models(SCKB({}, vocab), vocab, budget);
}

EpistemicInterpretation make_convex(const EpistemicInterpretation& e) {
  std::set<std::uint32_t> fin, inf;
  for (const Rank& r : e.ranks()) {
    if (r.is_finite()) fin.insert(r.level());
    else if (r.is_possible()) inf.insert(r.level());
  }
  auto index = [](const std::set<std::uint32_t>& s, std::uint32_t l) {
    return static_cast<std::uint32_t>(std::distance(s.begin(), s.find(l)));
  };
  std::vector<Rank> ranks;
  for (const Rank& r : e.ranks()) {
    if (r.is_finite()) ranks.push_back(Rank::fin(index(fin, r.level())));
    else if (r.is_possible()) ranks.push_back(Rank::inf(index(inf, r.level())));
    else ranks.push_back(r);
  }
  return EpistemicInterpretation(e.vocab(), std::move(ranks));
}

std::vector<Formula> formula_grammar(const Vocabulary& vocab, std::size_t depth) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  auto push = [&](Formula f) {
    if (seen.insert(to_string(f)).second) out.push_back(std::move(f));
  };
  for (const Atom& a : vocab.atoms()) push(Formula::atom(a));
  push(Formula::top());
  push(Formula::bot());
  for (std::size_t d = 0; d < depth; ++d) {
    const std::vector<Formula> level = out;
    for (const auto& f : level) push(Not(f));
    for (const auto& f : level) {
      for (const auto& g : level) {
        push(And(f, g));
        push(Or(f, g));
        push(Implies(f, g));
        push(Iff(f, g));
      }
    }
  }
  return out;
}

const std::vector<std::string>& postulate_names() {
  static const std::vector<std::string> names = {
      "Ref", "LLE", "And", "Or", "RW", "RM", "Inc", "Vac", "Ext", "SupExp", "SubExp",
      "Succ", "Incons", "Cond", "Cons<=", "Cons=>"};
  return names;
}

const PostulateOutcome& PostulateReport::operator[](const std::string& name) const {
  for (const auto& o : outcomes) {
    if (o.name == name) return o;
  }
  throw Error("unknown postulate '" + name + "'");
}

bool PostulateReport::all_passed(const std::vector<std::string>& except) const {
  return std::all_of(outcomes.begin(), outcomes.end(), [&](const PostulateOutcome& o) {
    return o.passed() || std::find(except.begin(), except.end(), o.name) != except.end();
  });
}

namespace {

class PostulateChecker {
 public:
  PostulateChecker(const EpistemicInterpretation& e, std::size_t grammar_depth)
      : e_(e), vocab_(e.vocab()) {
    worlds_ = vocab_.world_count();
    classes_ = std::size_t{1} << worlds_;
    full_ = classes_ - 1;
    for (std::size_t u = 0; u < worlds_; ++u) small_.set(u, key_of(e.ranks()[u]));

    // One representative per semantic class, grammar order first.
    representative_.assign(classes_, std::nullopt);
    for (auto& f : formula_grammar(vocab_, grammar_depth)) {
      const auto m = mask_of(f, vocab_);
      if (!representative_[m]) {
        representative_[m] = f;
        order_.push_back(m);
      }
      grammar_.push_back({std::move(f), m});
    }
    for (std::uint64_t m = 0; m < classes_; ++m) {
      if (!representative_[m]) {
        representative_[m] = characteristic_formula(WorldSet::from_mask(worlds_, m), vocab_);
        order_.push_back(m);
      }
    }

    table_.resize(classes_ * classes_ * classes_);
    for (std::uint64_t a = 0; a < classes_; ++a) {
      for (std::uint64_t b = 0; b < classes_; ++b) {
        for (std::uint64_t g = 0; g < classes_; ++g) table_[index(a, b, g)] = small_.sat(a, b, g);
      }
    }
  }

  PostulateReport run() {
    PostulateReport report;
    const auto all = order_;
    const std::uint64_t top = full_;

    report.outcomes.push_back(check("Ref", [&](auto& fail) {
      for (auto a : all)
        for (auto g : all) fail(T(a, a, g), {{"alpha", a}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("LLE", [&](auto& fail) {
      for_equivalent_pairs([&](const Formula& x, const Formula& y) {
        for (auto d : all)
          for (auto g : all)
            fail(!sat(x, d, rep(g)) || sat(y, d, rep(g)), {{"gamma", g}, {"delta", d}}, x, y);
      });
    }));
    report.outcomes.push_back(check("And", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto d : all)
            for (auto g : all)
              fail(!(T(a, b, g) && T(a, d, g)) || T(a, b & d, g),
                   {{"alpha", a}, {"beta", b}, {"delta", d}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("Or", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto d : all)
            for (auto g : all)
              fail(!(T(a, d, g) && T(b, d, g)) || T(a | b, d, g),
                   {{"alpha", a}, {"beta", b}, {"delta", d}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("RW", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto d : all)
            for (auto g : all)
              fail(!(T(a, b, g) && (b & ~d) == 0) || T(a, d, g),
                   {{"alpha", a}, {"beta", b}, {"delta", d}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("RM", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto d : all)
            for (auto g : all)
              fail(!(T(a, b, g) && !T(a, neg(d), g)) || T(a & d, b, g),
                   {{"alpha", a}, {"beta", b}, {"delta", d}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("Inc", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto g : all)
            fail(!T(a, b, g) || T(a & g, b, top), {{"alpha", a}, {"beta", b}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("Vac", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto g : all)
            fail(!(!T(top, neg(g), top) && T(a & g, b, top)) || T(a, b, g),
                 {{"alpha", a}, {"beta", b}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("Ext", [&](auto& fail) {
      for_equivalent_pairs([&](const Formula& x, const Formula& y) {
        for (auto a : all)
          for (auto b : all)
            fail(sat(rep(a), b, x) == sat(rep(a), b, y), {{"alpha", a}, {"beta", b}}, x, y);
      });
    }));
    report.outcomes.push_back(check("SupExp", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto g : all)
            for (auto d : all)
              fail(!T(a, b, g & d) || T(a & g, b, d),
                   {{"alpha", a}, {"beta", b}, {"gamma", g}, {"delta", d}});
    }));
    report.outcomes.push_back(check("SubExp", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto g : all)
            for (auto d : all)
              fail(!(T(d, 0, top) && T(a & g, b, d)) || T(a, b, g & d),
                   {{"alpha", a}, {"beta", b}, {"gamma", g}, {"delta", d}});
    }));
    report.outcomes.push_back(check("Succ", [&](auto& fail) {
      for (auto a : all)
        for (auto g : all) fail(T(a, g, g), {{"alpha", a}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("Incons", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all) fail(T(a, b, 0), {{"alpha", a}, {"beta", b}});
    }));
    report.outcomes.push_back(check("Cond", [&](auto& fail) {
      for (auto a : all)
        for (auto b : all)
          for (auto g : all)
            fail(T(g, 0, top) || T(a & g, b, top) == T(a, b, g), {{"alpha", a}, {"beta", b}, {"gamma", g}});
    }));
    report.outcomes.push_back(check("Cons<=", [&](auto& fail) { fail(T(top, 0, 0), {{"gamma", 0}}); }));
    report.outcomes.push_back(check("Cons=>", [&](auto& fail) {
      for (auto g : all) fail(!T(top, 0, g) || g == 0, {{"gamma", g}});
    }));
    return report;
  }

 private:
  using Binding = std::vector<std::pair<const char*, std::uint64_t>>;

  std::size_t index(std::uint64_t a, std::uint64_t b, std::uint64_t g) const {
    return (a * classes_ + b) * classes_ + g;
  }
  bool T(std::uint64_t a, std::uint64_t b, std::uint64_t g) const { return table_[index(a, b, g)]; }
  std::uint64_t neg(std::uint64_t m) const { return ~m & full_; }
  const Formula& rep(std::uint64_t m) const { return *representative_[m]; }

  // Formula-level satisfaction, for the syntax-independence postulates.
  bool sat(const Formula& a, std::uint64_t b, const Formula& g) const {
    return satisfies_situated(e_, SituatedConditional{a, rep(b), g});
  }

  template <typename Body>
  PostulateOutcome check(const char* name, Body&& body) {
    PostulateOutcome out;
    out.name = name;
    auto fail = [&](bool ok, const Binding& binding, const Formula* x = nullptr, const Formula* y = nullptr) {
      ++out.instances;
      if (ok) return;
      if (out.violations++ == 0) out.witness = describe(binding, x, y);
    };
    struct Adapter {
      decltype(fail)& f;
      void operator()(bool ok, const Binding& b) { f(ok, b); }
      void operator()(bool ok, const Binding& b, const Formula& x, const Formula& y) { f(ok, b, &x, &y); }
    } adapter{fail};
    body(adapter);
    return out;
  }

  std::string describe(const Binding& binding, const Formula* x, const Formula* y) const {
    std::string s;
    for (const auto& [var, m] : binding) {
      if (!s.empty()) s += ", ";
      s += std::string(var) + "=" + to_string(*representative_[m]);
    }
    if (x && y) s += ", equivalent pair " + to_string(*x) + " / " + to_string(*y);
    return s;
  }

  template <typename F>
  void for_equivalent_pairs(F&& f) const {
    std::map<std::uint64_t, std::vector<const Formula*>> by_class;
    for (const auto& [formula, m] : grammar_) by_class[m].push_back(&formula);
    for (const auto& [mask, members] : by_class) {
      for (std::size_t i = 1; i < members.size(); ++i) {
        f(*members[0], *members[i]);
        f(*members[i], *members[0]);
      }
    }
  }

  const EpistemicInterpretation& e_;
  Vocabulary vocab_;
  std::size_t worlds_ = 0;
  std::uint64_t classes_ = 0;
  std::uint64_t full_ = 0;
  SmallEpistemic small_;
  std::vector<std::optional<Formula>> representative_;
  std::vector<std::uint64_t> order_;
  std::vector<std::pair<Formula, std::uint64_t>> grammar_;
  std::vector<bool> table_;
};

}  // namespace

PostulateReport check_postulates(const EpistemicInterpretation& e, std::size_t grammar_depth) {
  if (e.vocab().size() > 2) throw BudgetExceeded("postulate checking is limited to 2 atoms");
  return PostulateChecker(e, grammar_depth).run();
}

std::string to_json(const PostulateReport& report, int indent) {
  nlohmann::json j;
  j["postulates"] = nlohmann::json::array();
  for (const auto& o : report.outcomes) {
    j["postulates"].push_back({{"name", o.name},
                               {"instances", o.instances},
                               {"violations", o.violations},
                               {"passed", o.passed()},
                               {"witness", o.witness}});
  }
  j["all_passed"] = report.all_passed();
  return j.dump(indent);
}

DominanceResult check_sampled_minimality(const EpistemicInterpretation& candidate, const SCKB& kb,
                                         std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t worlds = candidate.ranks().size();
  std::uniform_int_distribution<std::size_t> pick_world(0, worlds - 1);
  std::uniform_int_distribution<std::size_t> pick_count(1, std::min<std::size_t>(3, worlds));
  std::uniform_int_distribution<std::uint32_t> pick_level(0, static_cast<std::uint32_t>(worlds - 1));
  std::uniform_int_distribution<int> pick_tier(0, 2);

  DominanceResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Rank> ranks = candidate.ranks();
    const std::size_t changes = pick_count(rng);
    for (std::size_t c = 0; c < changes; ++c) {
      const int tier = pick_tier(rng);
      ranks[pick_world(rng)] = tier == 0   ? Rank::fin(pick_level(rng))
                               : tier == 1 ? Rank::inf(pick_level(rng))
                                           : Rank::inf_inf();
    }
    const EpistemicInterpretation perturbed = make_convex(EpistemicInterpretation(candidate.vocab(), ranks));
    ++result.samples;
    if (!is_model(perturbed, kb)) continue;
    ++result.models;
    if (!pointwise_leq(candidate, perturbed)) ++result.violations;
  }
  return result;
}

}  // namespace sckb
