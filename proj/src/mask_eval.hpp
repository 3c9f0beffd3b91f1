#pragma once

// Bit-parallel truth-table evaluation: 64 rows of a truth table per word.

#include <cstdint>
#include <vector>

#include "sckb/formula.hpp"

namespace sckb::detail {

// Column pattern of truth-table bit j (< 6) within one 64-row block.
inline constexpr std::uint64_t kColumn[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

// Postfix program for one formula, atoms already resolved to row-index bits.
class MaskProgram {
 public:
  // `bit_of(Atom)` returns the row-index bit carrying that atom.
  template <typename BitOf>
  void append(const Formula& f, BitOf&& bit_of) {
    switch (f.kind()) {
      case Connective::Atom: ops_.push_back({Op::Atom, static_cast<std::uint32_t>(bit_of(f.atom()))}); return;
      case Connective::Top: ops_.push_back({Op::Top, 0}); return;
      case Connective::Bot: ops_.push_back({Op::Bot, 0}); return;
      case Connective::Not:
        append(f.lhs(), bit_of);
        ops_.push_back({Op::Not, 0});
        return;
      default: break;
    }
    append(f.lhs(), bit_of);
    append(f.rhs(), bit_of);
    switch (f.kind()) {
      case Connective::And: ops_.push_back({Op::And, 0}); break;
      case Connective::Or: ops_.push_back({Op::Or, 0}); break;
      case Connective::Implies: ops_.push_back({Op::Implies, 0}); break;
      default: ops_.push_back({Op::Iff, 0}); break;
    }
  }

  // Appends a conjunction marker: pops two results and pushes their AND.
  void conjoin() { ops_.push_back({Op::And, 0}); }
  void negate() { ops_.push_back({Op::Not, 0}); }
  void push_top() { ops_.push_back({Op::Top, 0}); }

  // Evaluates the program on block `block` (rows block*64 .. block*64+63).
  std::uint64_t run(std::uint64_t block) const {
    std::uint64_t stack[128];
    std::vector<std::uint64_t> heap;
    std::uint64_t* sp = stack;
    if (ops_.size() > 128) {
      heap.resize(ops_.size());
      sp = heap.data();
    }
    std::uint64_t* base = sp;
    for (const auto& op : ops_) {
      switch (op.code) {
        case Op::Atom:
          *sp++ = op.arg < 6 ? kColumn[op.arg]
                             : (((block >> (op.arg - 6)) & 1u) ? ~std::uint64_t{0} : 0);
          break;
        case Op::Top: *sp++ = ~std::uint64_t{0}; break;
        case Op::Bot: *sp++ = 0; break;
        case Op::Not: sp[-1] = ~sp[-1]; break;
        case Op::And: --sp; sp[-1] &= sp[0]; break;
        case Op::Or: --sp; sp[-1] |= sp[0]; break;
        case Op::Implies: --sp; sp[-1] = ~sp[-1] | sp[0]; break;
        case Op::Iff: --sp; sp[-1] = ~(sp[-1] ^ sp[0]); break;
      }
    }
    return sp == base ? ~std::uint64_t{0} : sp[-1];
  }

  bool empty() const { return ops_.empty(); }

 private:
  enum class Op : std::uint8_t { Atom, Top, Bot, Not, And, Or, Implies, Iff };
  struct Instr {
    Op code;
    std::uint32_t arg;
  };
  std::vector<Instr> ops_;
};

// Mask of the rows that exist in a table with `rows` (< 64) rows.
inline std::uint64_t row_mask(std::uint64_t rows) {
  return rows >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
}

}  // namespace sckb::detail
