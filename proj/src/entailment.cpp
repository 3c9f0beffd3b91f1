#include "sckb/entailment.hpp"

#include <string>
#include <vector>

#include "mask_eval.hpp"
#include "sckb/error.hpp"

namespace sckb {

Backend parse_backend(std::string_view name) {
  if (name == "tt" || name == "truth-table") return Backend::TruthTable;
  if (name == "search") return Backend::Search;
  throw Error("unknown entailment backend '" + std::string(name) + "'");
}

const char* to_string(Backend b) { return b == Backend::TruthTable ? "tt" : "search"; }

namespace {

// ---------------------------------------------------------------------------
// Truth tables. Atoms get row-index bits in first-seen order; with n atoms
// the table has 2^n rows, processed 64 at a time.

class AtomColumns {
 public:
  std::size_t bit_of(Atom a) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i] == a) return i;
    }
    atoms_.push_back(a);
    return atoms_.size() - 1;
  }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

// True iff some row satisfies every formula in `fs` and, when `negated` is
// given, falsifies it.
bool tt_satisfiable(std::span<const Formula> fs, const Formula* negated, std::size_t cap) {
  AtomColumns columns;
  detail::MaskProgram program;
  auto bit_of = [&](Atom a) { return columns.bit_of(a); };
  program.push_top();
  for (const auto& f : fs) {
    program.append(f, bit_of);
    program.conjoin();
  }
  if (negated) {
    program.append(*negated, bit_of);
    program.negate();
    program.conjoin();
  }
  if (columns.size() > cap) {
    throw BudgetExceeded("truth table over " + std::to_string(columns.size()) +
                         " atoms exceeds cap of " + std::to_string(cap));
  }
  // Rows beyond 2^n within the first block repeat earlier assignments, so
  // the whole word can be inspected.
  const std::uint64_t blocks = columns.size() <= 6 ? 1 : (std::uint64_t{1} << (columns.size() - 6));
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (program.run(b) != 0) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Search: Tseitin encoding + DPLL with unit propagation.

class Cnf {
 public:
  int new_var() { return ++num_vars_; }
  int num_vars() const { return num_vars_; }
  void add(std::vector<int> clause) { clauses_.push_back(std::move(clause)); }
  const std::vector<std::vector<int>>& clauses() const { return clauses_; }

  // Returns a literal equivalent to `f`.
  int encode(const Formula& f) {
    switch (f.kind()) {
      case Connective::Atom: {
        for (const auto& [atom, var] : atom_vars_) {
          if (atom == f.atom()) return var;
        }
        int v = new_var();
        atom_vars_.emplace_back(f.atom(), v);
        return v;
      }
      case Connective::Top: return true_lit();
      case Connective::Bot: return -true_lit();
      case Connective::Not: return -encode(f.lhs());
      default: break;
    }
    const int a = encode(f.lhs());
    const int b = encode(f.rhs());
    const int g = new_var();
    switch (f.kind()) {
      case Connective::And:
        add({-g, a});
        add({-g, b});
        add({g, -a, -b});
        break;
      case Connective::Or:
        add({-g, a, b});
        add({g, -a});
        add({g, -b});
        break;
      case Connective::Implies:
        add({-g, -a, b});
        add({g, a});
        add({g, -b});
        break;
      default:  // Iff
        add({-g, -a, b});
        add({-g, a, -b});
        add({g, a, b});
        add({g, -a, -b});
        break;
    }
    return g;
  }

 private:
  int true_lit() {
    if (true_var_ == 0) {
      true_var_ = new_var();
      add({true_var_});
    }
    return true_var_;
  }

  int num_vars_ = 0;
  int true_var_ = 0;
  std::vector<std::pair<Atom, int>> atom_vars_;
  std::vector<std::vector<int>> clauses_;
};

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf)
      : clauses_(cnf.clauses()), value_(static_cast<std::size_t>(cnf.num_vars()) + 1, 0) {}

  bool solve() {
    if (!propagate()) return false;
    int var = pick_branch_var();
    if (var == 0) return true;
    for (int lit : {var, -var}) {
      const std::size_t mark = trail_.size();
      assign(lit);
      if (solve()) return true;
      undo(mark);
    }
    return false;
  }

 private:
  int lit_value(int lit) const {
    int v = value_[static_cast<std::size_t>(lit < 0 ? -lit : lit)];
    return lit < 0 ? -v : v;
  }

  void assign(int lit) {
    value_[static_cast<std::size_t>(lit < 0 ? -lit : lit)] = lit < 0 ? -1 : 1;
    trail_.push_back(lit);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      int lit = trail_.back();
      value_[static_cast<std::size_t>(lit < 0 ? -lit : lit)] = 0;
      trail_.pop_back();
    }
  }

  // Unit propagation to fixpoint; false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : clauses_) {
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int lit : clause) {
          int v = lit_value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  int pick_branch_var() const {
    for (const auto& clause : clauses_) {
      bool satisfied = false;
      int candidate = 0;
      for (int lit : clause) {
        int v = lit_value(lit);
        if (v > 0) {
          satisfied = true;
          break;
        }
        if (v == 0 && candidate == 0) candidate = lit < 0 ? -lit : lit;
      }
      if (!satisfied && candidate != 0) return candidate;
    }
    return 0;
  }

  const std::vector<std::vector<int>>& clauses_;
  std::vector<int> value_;
  std::vector<int> trail_;
};

bool search_satisfiable(std::span<const Formula> fs, const Formula* negated) {
  Cnf cnf;
  for (const auto& f : fs) cnf.add({cnf.encode(f)});
  if (negated) cnf.add({-cnf.encode(*negated)});
  return Dpll(cnf).solve();
}

}  // namespace

bool EntailmentOracle::entails(std::span<const Formula> premises, const Formula& goal) {
  ++calls_;
  if (backend_ == Backend::TruthTable) return !tt_satisfiable(premises, &goal, atom_cap_);
  return !search_satisfiable(premises, &goal);
}

bool EntailmentOracle::is_satisfiable(std::span<const Formula> formulas) {
  ++calls_;
  if (backend_ == Backend::TruthTable) return tt_satisfiable(formulas, nullptr, atom_cap_);
  return search_satisfiable(formulas, nullptr);
}

}  // namespace sckb
