#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sckb/formula.hpp"

namespace sckb {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

// Ordered set of distinct atoms. Cheap to copy; positions are stable.
class Vocabulary {
 public:
  Vocabulary();
  explicit Vocabulary(const std::vector<Atom>& atoms);
  static Vocabulary of(const std::vector<std::string>& names);

  // Appends `a` if absent. Returns true if the vocabulary grew.
  bool add(Atom a);
  void add_all(const Formula& f);

  bool contains(Atom a) const { return position(a).has_value(); }
  std::optional<std::size_t> position(Atom a) const;

  std::size_t size() const noexcept { return atoms_->size(); }
  bool empty() const noexcept { return atoms_->empty(); }
  const std::vector<Atom>& atoms() const noexcept { return *atoms_; }
  const Atom& operator[](std::size_t i) const { return (*atoms_)[i]; }

  // 2^size(); throws BudgetExceeded above `cap` atoms.
  std::size_t world_count(std::size_t cap = kDefaultEnumerationCap) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.atoms() == b.atoms();
  }

 private:
  std::shared_ptr<const std::vector<Atom>> atoms_;
};

// A valuation over a vocabulary of n atoms, encoded as an index in
// [0, 2^n). The first vocabulary atom is the most significant bit, so
// numeric order equals the vocabulary-order bitstring order.
struct Valuation {
  std::uint32_t index = 0;

  bool value(std::size_t position, std::size_t vocab_size) const noexcept {
    return (index >> (vocab_size - 1 - position)) & 1u;
  }

  friend auto operator<=>(Valuation, Valuation) = default;
};

// Builds a valuation from an explicit assignment; every vocabulary atom must
// be assigned, and nothing else.
Valuation make_valuation(const Vocabulary& vocab, const std::map<std::string, bool>& assignment);

// Literal rendering, e.g. "p~bf" for single-letter vocabularies and
// "cb1,~cb2,si" otherwise.
std::string to_string(const Vocabulary& vocab, Valuation v);

// Dense set of valuations over a fixed vocabulary size.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t world_count, bool full = false);

  static WorldSet from_mask(std::size_t world_count, std::uint64_t mask);

  std::size_t universe() const noexcept { return size_; }
  bool contains(Valuation v) const { return (words_[v.index >> 6] >> (v.index & 63)) & 1u; }
  void insert(Valuation v) { words_[v.index >> 6] |= std::uint64_t{1} << (v.index & 63); }
  void erase(Valuation v) { words_[v.index >> 6] &= ~(std::uint64_t{1} << (v.index & 63)); }

  std::size_t count() const;
  bool empty() const;
  bool is_subset_of(const WorldSet& other) const;
  bool intersects(const WorldSet& other) const;
  std::vector<Valuation> to_vector() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (auto bits = words_[w]; bits; bits &= bits - 1) {
        f(Valuation{static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)))});
      }
    }
  }

  // Only valid when universe() <= 64.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

  WorldSet& operator&=(const WorldSet& o);
  WorldSet& operator|=(const WorldSet& o);
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  WorldSet complement() const;

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

 private:
  void trim();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Classical truth value of `f` under `v`. Throws UnknownAtomError when `f`
// mentions an atom outside `vocab`.
bool evaluate(const Formula& f, const Vocabulary& vocab, Valuation v);
bool evaluate(const Formula& f, const std::map<std::string, bool>& assignment);

// All valuations of `vocab` satisfying `f`. Throws BudgetExceeded when the
// vocabulary is larger than `cap`, UnknownAtomError on foreign atoms.
WorldSet models(const Formula& f, const Vocabulary& vocab, std::size_t cap = kDefaultEnumerationCap);
WorldSet models(const std::vector<Formula>& fs, const Vocabulary& vocab,
                std::size_t cap = kDefaultEnumerationCap);

// Disjunction of full minterms, one per valuation in ascending order; Bot for
// the empty set.
Formula characteristic_formula(const WorldSet& worlds, const Vocabulary& vocab);

}  // namespace sckb
