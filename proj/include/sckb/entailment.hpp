#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "sckb/formula.hpp"
#include "sckb/vocabulary.hpp"

namespace sckb {

enum class Backend {
  TruthTable,  // reference: enumerates every row over the atoms involved
  Search,      // DPLL with unit propagation over a Tseitin encoding
};

Backend parse_backend(std::string_view name);  // "tt" | "search"
const char* to_string(Backend b);

// Classical entailment checker. Each entails/is_satisfiable call bumps the
// per-handle counter by one. A handle may move between threads but must not
// be used concurrently.
class EntailmentOracle {
 public:
  explicit EntailmentOracle(Backend backend = Backend::TruthTable,
                            std::size_t atom_cap = kDefaultEnumerationCap)
      : backend_(backend), atom_cap_(atom_cap) {}

  EntailmentOracle(const EntailmentOracle&) = delete;
  EntailmentOracle& operator=(const EntailmentOracle&) = delete;
  EntailmentOracle(EntailmentOracle&&) = default;
  EntailmentOracle& operator=(EntailmentOracle&&) = default;

  // premises |= goal; an empty premise set checks validity of `goal`.
  bool entails(std::span<const Formula> premises, const Formula& goal);
  bool is_satisfiable(std::span<const Formula> formulas);

  std::uint64_t calls() const noexcept { return calls_; }
  Backend backend() const noexcept { return backend_; }

 private:
  Backend backend_;
  std::size_t atom_cap_;
  std::uint64_t calls_ = 0;
};

}  // namespace sckb
