#pragma once

#include <random>
#include <string>
#include <vector>

#include "sckb/closure.hpp"
#include "sckb/kb.hpp"
#include "sckb/oracle.hpp"
#include "sckb/semantics.hpp"

#ifndef SCKB_DATA_DIR
#define SCKB_DATA_DIR "data"
#endif

namespace sckb::testing {

inline std::string data_path(const std::string& name) { return std::string(SCKB_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path);
SCKB load_kb(const std::string& name);

inline Formula atom(const char* name) { return Formula::atom(name); }
inline SituatedConditional sc(const char* a, const char* b, const char* g = "true") {
  return SituatedConditional{parse_formula(a), parse_formula(b), parse_formula(g)};
}

std::vector<Atom> atoms(const std::vector<std::string>& names);

// Uniform-ish random formula of depth at most `depth`.
Formula random_formula(std::mt19937_64& rng, const std::vector<Atom>& atoms, std::size_t depth);

// Mix of general conditionals, necessity statements `a |~[a] false`,
// self-situated `a |~[a] b`, and unsituated ones.
SituatedConditional random_conditional(std::mt19937_64& rng, const std::vector<Atom>& atoms,
                                       std::size_t depth);
SCKB random_kb(std::mt19937_64& rng, const std::vector<Atom>& atoms, std::size_t size, std::size_t depth);

// true, false, each atom and its negation.
std::vector<Formula> literal_grammar(const std::vector<Atom>& atoms);

// Every triple (antecedent, consequent, situation) over `formulas`.
std::vector<SituatedConditional> all_queries(const std::vector<Formula>& formulas);

}  // namespace sckb::testing
