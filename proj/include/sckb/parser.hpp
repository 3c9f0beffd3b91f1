#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sckb/formula.hpp"
#include "sckb/vocabulary.hpp"

namespace sckb {

// Collect: atoms not yet in the vocabulary are appended to it.
// Strict: atoms outside the vocabulary are an error.
enum class VocabMode { Collect, Strict };

// Grammar, loosest to tightest binding:
//   a <-> b   (left-assoc)
//   a -> b    (right-assoc)
//   a | b
//   a & b
//   ~a
// plus parentheses, `true`, `false`, and atoms [a-zA-Z_][a-zA-Z0-9_]*.
// The two-character token `|~` is the conditional arrow, so a disjunction
// with a negated right operand must be written `p | ~q`.
Formula parse_formula(std::string_view text, VocabMode mode = VocabMode::Collect,
                      Vocabulary* vocab = nullptr);

enum class TokenKind {
  Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, LBracket, RBracket,
  Twiddle, Colon, End
};

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t offset;
};

// Recursive-descent parser over one line of text. Offsets reported in
// errors are relative to `base_offset`.
class FormulaParser {
 public:
  FormulaParser(std::string_view text, VocabMode mode, Vocabulary* vocab,
                std::size_t line = 0);

  Formula formula();

  const Token& peek() const { return tokens_[pos_]; }
  bool accept(TokenKind kind);
  const Token& expect(TokenKind kind, const char* what);
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool contains(TokenKind kind) const;

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const;

 private:
  Formula iff();
  Formula implication();
  Formula disjunction();
  Formula conjunction();
  Formula unary();
  Formula primary();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  VocabMode mode_;
  Vocabulary* vocab_;
  std::size_t line_;
};

}  // namespace sckb
