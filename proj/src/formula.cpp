#include "sckb/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace sckb {

namespace {

// Process-wide symbol table. Names are never removed, so references handed
// out by Atom::name() stay valid.
class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  const std::string& name(std::uint32_t id) {
    std::lock_guard lock(mu_);
    return names_[id];
  }

 private:
  std::mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

int precedence(Connective c) {
  switch (c) {
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not: return 5;
    default: return 6;
  }
}

const char* symbol(Connective c) {
  switch (c) {
    case Connective::Iff: return " <-> ";
    case Connective::Implies: return " -> ";
    case Connective::Or: return " | ";
    case Connective::And: return " & ";
    default: return "";
  }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render(child, out);
  if (parens) out += ')';
}

void render(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom: out += f.atom().name(); return;
    case Connective::Top: out += "true"; return;
    case Connective::Bot: out += "false"; return;
    case Connective::Not:
      out += '~';
      render_child(f.lhs(), precedence(f.lhs().kind()) < precedence(Connective::Not), out);
      return;
    default: break;
  }
  const int p = precedence(f.kind());
  const int lp = precedence(f.lhs().kind());
  const int rp = precedence(f.rhs().kind());
  // '->' is right-associative, the other binary connectives associate left.
  const bool right_assoc = f.kind() == Connective::Implies;
  render_child(f.lhs(), right_assoc ? lp <= p : lp < p, out);
  out += symbol(f.kind());
  render_child(f.rhs(), right_assoc ? rp < p : rp <= p, out);
}

}  // namespace

Atom Atom::intern(std::string_view name) { return Atom(symbols().intern(name)); }

const std::string& Atom::name() const { return symbols().name(id_); }

bool is_valid_atom_name(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_') return false;
  }
  return name != "true" && name != "false";
}

Formula::Formula() : Formula(top()) {}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{Connective::Atom, a.id(), Formula(nullptr), Formula(nullptr)}));
}

// Leaf nodes have null children.
Formula Formula::top() {
  static const auto node = std::make_shared<const FormulaNode>(
      FormulaNode{Connective::Top, 0, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::bot() {
  static const auto node = std::make_shared<const FormulaNode>(
      FormulaNode{Connective::Bot, 0, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::make(Connective kind, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{kind, 0, std::move(lhs), std::move(rhs)}));
}

Formula Not(Formula f) { return Formula::make(Connective::Not, std::move(f), Formula(nullptr)); }
Formula And(Formula l, Formula r) { return Formula::make(Connective::And, std::move(l), std::move(r)); }
Formula Or(Formula l, Formula r) { return Formula::make(Connective::Or, std::move(l), std::move(r)); }
Formula Implies(Formula l, Formula r) {
  return Formula::make(Connective::Implies, std::move(l), std::move(r));
}
Formula Iff(Formula l, Formula r) { return Formula::make(Connective::Iff, std::move(l), std::move(r)); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Connective::Atom: return a.atom() == b.atom();
    case Connective::Top:
    case Connective::Bot: return true;
    case Connective::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::size_t Formula::depth() const {
  switch (kind()) {
    case Connective::Atom:
    case Connective::Top:
    case Connective::Bot: return 0;
    case Connective::Not: return 1 + lhs().depth();
    default: return 1 + std::max(lhs().depth(), rhs().depth());
  }
}

Formula conjoin(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = And(out, fs[i]);
  return out;
}

Formula disjoin(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bot();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Or(out, fs[i]);
  return out;
}

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      if (std::find(out.begin(), out.end(), f.atom()) == out.end()) out.push_back(f.atom());
      return;
    case Connective::Top:
    case Connective::Bot: return;
    case Connective::Not: collect_atoms(f.lhs(), out); return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

std::vector<Atom> atoms_of(const Formula& f) {
  std::vector<Atom> out;
  collect_atoms(f, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

}  // namespace sckb
