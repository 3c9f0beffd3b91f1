#include "sckb/vocabulary.hpp"

#include <algorithm>
#include <bit>

#include "mask_eval.hpp"
#include "sckb/error.hpp"

namespace sckb {

Vocabulary::Vocabulary() : atoms_(std::make_shared<const std::vector<Atom>>()) {}

Vocabulary::Vocabulary(const std::vector<Atom>& atoms) : Vocabulary() {
  for (Atom a : atoms) {
    if (!add(a)) throw Error("duplicate atom '" + a.name() + "' in vocabulary");
  }
}

Vocabulary Vocabulary::of(const std::vector<std::string>& names) {
  std::vector<Atom> atoms;
  for (const auto& n : names) atoms.push_back(Atom::intern(n));
  return Vocabulary(atoms);
}

bool Vocabulary::add(Atom a) {
  if (contains(a)) return false;
  auto grown = std::make_shared<std::vector<Atom>>(*atoms_);
  grown->push_back(a);
  atoms_ = std::move(grown);
  return true;
}

void Vocabulary::add_all(const Formula& f) {
  for (Atom a : atoms_of(f)) add(a);
}

std::optional<std::size_t> Vocabulary::position(Atom a) const {
  const auto& v = *atoms_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == a) return i;
  }
  return std::nullopt;
}

std::size_t Vocabulary::world_count(std::size_t cap) const {
  if (size() > cap) {
    throw BudgetExceeded("vocabulary has " + std::to_string(size()) +
                         " atoms, enumeration cap is " + std::to_string(cap));
  }
  return std::size_t{1} << size();
}

Valuation make_valuation(const Vocabulary& vocab, const std::map<std::string, bool>& assignment) {
  if (assignment.size() != vocab.size()) throw Error("valuation must assign every vocabulary atom");
  Valuation v;
  const std::size_t n = vocab.size();
  for (const auto& [name, value] : assignment) {
    auto pos = vocab.position(Atom::intern(name));
    if (!pos) throw UnknownAtomError(name);
    if (value) v.index |= std::uint32_t{1} << (n - 1 - *pos);
  }
  return v;
}

std::string to_string(const Vocabulary& vocab, Valuation v) {
  const bool compact = std::all_of(vocab.atoms().begin(), vocab.atoms().end(),
                                   [](Atom a) { return a.name().size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!compact && i > 0) out += ',';
    if (!v.value(i, vocab.size())) out += '~';
    out += vocab[i].name();
  }
  return out;
}

WorldSet::WorldSet(std::size_t world_count, bool full)
    : size_(world_count), words_((world_count + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  trim();
}

WorldSet WorldSet::from_mask(std::size_t world_count, std::uint64_t mask) {
  WorldSet s(world_count);
  if (!s.words_.empty()) s.words_[0] = mask;
  s.trim();
  return s;
}

void WorldSet::trim() {
  if (size_ % 64 != 0 && !words_.empty()) words_.back() &= detail::row_mask(size_ % 64);
}

std::size_t WorldSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool WorldSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool WorldSet::is_subset_of(const WorldSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool WorldSet::intersects(const WorldSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::vector<Valuation> WorldSet::to_vector() const {
  std::vector<Valuation> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (auto bits = words_[w]; bits; bits &= bits - 1) {
      out.push_back({static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits))});
    }
  }
  return out;
}

WorldSet& WorldSet::operator&=(const WorldSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

WorldSet& WorldSet::operator|=(const WorldSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

WorldSet WorldSet::complement() const {
  WorldSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

namespace {

std::size_t bit_for(const Vocabulary& vocab, Atom a) {
  auto pos = vocab.position(a);
  if (!pos) throw UnknownAtomError(a.name());
  return vocab.size() - 1 - *pos;
}

}  // namespace

bool evaluate(const Formula& f, const Vocabulary& vocab, Valuation v) {
  switch (f.kind()) {
    case Connective::Atom: return (v.index >> bit_for(vocab, f.atom())) & 1u;
    case Connective::Top: return true;
    case Connective::Bot: return false;
    case Connective::Not: return !evaluate(f.lhs(), vocab, v);
    case Connective::And: return evaluate(f.lhs(), vocab, v) && evaluate(f.rhs(), vocab, v);
    case Connective::Or: return evaluate(f.lhs(), vocab, v) || evaluate(f.rhs(), vocab, v);
    case Connective::Implies: return !evaluate(f.lhs(), vocab, v) || evaluate(f.rhs(), vocab, v);
    case Connective::Iff: return evaluate(f.lhs(), vocab, v) == evaluate(f.rhs(), vocab, v);
  }
  return false;
}

bool evaluate(const Formula& f, const std::map<std::string, bool>& assignment) {
  switch (f.kind()) {
    case Connective::Atom: {
      auto it = assignment.find(f.atom().name());
      if (it == assignment.end()) throw UnknownAtomError(f.atom().name());
      return it->second;
    }
    case Connective::Top: return true;
    case Connective::Bot: return false;
    case Connective::Not: return !evaluate(f.lhs(), assignment);
    case Connective::And: return evaluate(f.lhs(), assignment) && evaluate(f.rhs(), assignment);
    case Connective::Or: return evaluate(f.lhs(), assignment) || evaluate(f.rhs(), assignment);
    case Connective::Implies: return !evaluate(f.lhs(), assignment) || evaluate(f.rhs(), assignment);
    case Connective::Iff: return evaluate(f.lhs(), assignment) == evaluate(f.rhs(), assignment);
  }
  return false;
}

WorldSet models(const std::vector<Formula>& fs, const Vocabulary& vocab, std::size_t cap) {
  const std::size_t worlds = vocab.world_count(cap);
  detail::MaskProgram program;
  program.push_top();
  auto bit_of = [&](Atom a) { return bit_for(vocab, a); };
  for (const auto& f : fs) {
    program.append(f, bit_of);
    program.conjoin();
  }
  WorldSet out(worlds);
  const std::size_t blocks = (worlds + 63) / 64;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint64_t bits = program.run(b);
    for (; bits; bits &= bits - 1) {
      auto idx = static_cast<std::uint32_t>(b * 64 + std::countr_zero(bits));
      if (idx < worlds) out.insert({idx});
    }
  }
  return out;
}

WorldSet models(const Formula& f, const Vocabulary& vocab, std::size_t cap) {
  return models(std::vector<Formula>{f}, vocab, cap);
}

Formula characteristic_formula(const WorldSet& worlds, const Vocabulary& vocab) {
  std::vector<Formula> minterms;
  const std::size_t n = vocab.size();
  for (Valuation v : worlds.to_vector()) {
    std::vector<Formula> literals;
    for (std::size_t i = 0; i < n; ++i) {
      Formula a = Formula::atom(vocab[i]);
      literals.push_back(v.value(i, n) ? a : Not(a));
    }
    minterms.push_back(conjoin(literals));
  }
  return disjoin(minterms);
}

}  // namespace sckb
