#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace sckb {

// A propositional atom, interned by name. Two atoms with the same name are
// the same atom for the lifetime of the process.
class Atom {
 public:
  static Atom intern(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const noexcept { return id_; }

  friend bool operator==(Atom, Atom) = default;
  friend auto operator<=>(Atom, Atom) = default;

 private:
  friend class Formula;
  explicit Atom(std::uint32_t id) : id_(id) {}
  std::uint32_t id_;
};

// True iff `name` matches [a-zA-Z_][a-zA-Z0-9_]* and is not a keyword.
bool is_valid_atom_name(std::string_view name);

enum class Connective : std::uint8_t { Atom, Top, Bot, Not, And, Or, Implies, Iff };

struct FormulaNode;

// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  // Default-constructed formulas are Top.
  Formula();

  static Formula atom(Atom a);
  static Formula atom(std::string_view name) { return atom(Atom::intern(name)); }
  static Formula top();
  static Formula bot();

  friend Formula Not(Formula f);
  friend Formula And(Formula lhs, Formula rhs);
  friend Formula Or(Formula lhs, Formula rhs);
  friend Formula Implies(Formula lhs, Formula rhs);
  friend Formula Iff(Formula lhs, Formula rhs);

  Connective kind() const noexcept;
  // Only meaningful for Connective::Atom.
  Atom atom() const noexcept;
  // Operand of Not, left operand of binary connectives.
  const Formula& lhs() const noexcept;
  const Formula& rhs() const noexcept;

  bool is_top() const noexcept { return kind() == Connective::Top; }
  bool is_bot() const noexcept { return kind() == Connective::Bot; }

  // Structural (syntactic) equality.
  friend bool operator==(const Formula& a, const Formula& b);

  std::size_t depth() const;

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  static Formula make(Connective kind, Formula lhs, Formula rhs);

  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Connective kind;
  std::uint32_t atom_id;
  Formula lhs;
  Formula rhs;
};

inline Connective Formula::kind() const noexcept { return node_->kind; }
inline Atom Formula::atom() const noexcept { return Atom(node_->atom_id); }
inline const Formula& Formula::lhs() const noexcept { return node_->lhs; }
inline const Formula& Formula::rhs() const noexcept { return node_->rhs; }

Formula Not(Formula f);
Formula And(Formula lhs, Formula rhs);
Formula Or(Formula lhs, Formula rhs);
Formula Implies(Formula lhs, Formula rhs);
Formula Iff(Formula lhs, Formula rhs);

// Left-nested conjunction/disjunction; empty input gives Top/Bot.
Formula conjoin(const std::vector<Formula>& fs);
Formula disjoin(const std::vector<Formula>& fs);

// Atoms of `f` in first-appearance (left-to-right) order, without repeats.
std::vector<Atom> atoms_of(const Formula& f);
void collect_atoms(const Formula& f, std::vector<Atom>& out);

// Renders using the concrete syntax accepted by parse_formula, with the
// minimum parentheses needed to parse back to the same tree.
std::string to_string(const Formula& f);

}  // namespace sckb
