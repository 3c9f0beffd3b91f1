#include "support.hpp"

#include <fstream>
#include <sstream>

namespace sckb::testing {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SCKB load_kb(const std::string& name) { return parse_kb(read_text(data_path(name))); }

std::vector<Atom> atoms(const std::vector<std::string>& names) {
  std::vector<Atom> out;
  for (const auto& n : names) out.push_back(Atom::intern(n));
  return out;
}

Formula random_formula(std::mt19937_64& rng, const std::vector<Atom>& atoms, std::size_t depth) {
  std::uniform_int_distribution<int> kind(0, depth == 0 ? 1 : 6);
  switch (kind(rng)) {
    case 0:
    case 1: {
      std::uniform_int_distribution<std::size_t> leaf(0, atoms.size() + 1);
      const auto i = leaf(rng);
      if (i == atoms.size()) return Formula::top();
      if (i == atoms.size() + 1) return Formula::bot();
      return Formula::atom(atoms[i]);
    }
    case 2: return Not(random_formula(rng, atoms, depth - 1));
    case 3: return And(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 4: return Or(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 5: return Implies(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default: return Iff(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

SituatedConditional random_conditional(std::mt19937_64& rng, const std::vector<Atom>& atoms,
                                       std::size_t depth) {
  std::uniform_int_distribution<int> pattern(0, 4);
  const Formula a = random_formula(rng, atoms, depth);
  const Formula b = random_formula(rng, atoms, depth);
  switch (pattern(rng)) {
    case 0: return {a, Formula::bot(), a};
    case 1: return {a, b, a};
    case 2: return {a, b, Formula::top()};
    default: return {a, b, random_formula(rng, atoms, depth)};
  }
}

SCKB random_kb(std::mt19937_64& rng, const std::vector<Atom>& atoms, std::size_t size, std::size_t depth) {
  std::vector<SituatedConditional> cs;
  for (std::size_t i = 0; i < size; ++i) cs.push_back(random_conditional(rng, atoms, depth));
  return SCKB(cs, Vocabulary(atoms));
}

std::vector<Formula> literal_grammar(const std::vector<Atom>& atoms) {
  std::vector<Formula> out = {Formula::top(), Formula::bot()};
  for (const Atom& a : atoms) {
    out.push_back(Formula::atom(a));
    out.push_back(Not(Formula::atom(a)));
  }
  return out;
}

std::vector<SituatedConditional> all_queries(const std::vector<Formula>& formulas) {
  std::vector<SituatedConditional> out;
  for (const auto& a : formulas)
    for (const auto& b : formulas)
      for (const auto& g : formulas) out.push_back({a, b, g});
  return out;
}

}  // namespace sckb::testing
