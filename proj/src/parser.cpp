#include "sckb/parser.hpp"

#include <cctype>

#include "sckb/error.hpp"

namespace sckb {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const char* describe(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "atom";
    case TokenKind::True: return "'true'";
    case TokenKind::False: return "'false'";
    case TokenKind::Not: return "'~'";
    case TokenKind::And: return "'&'";
    case TokenKind::Or: return "'|'";
    case TokenKind::Implies: return "'->'";
    case TokenKind::Iff: return "'<->'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Twiddle: return "'|~'";
    case TokenKind::Colon: return "':'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

}  // namespace

FormulaParser::FormulaParser(std::string_view text, VocabMode mode, Vocabulary* vocab,
                             std::size_t line)
    : mode_(mode), vocab_(vocab), line_(line) {
  std::size_t i = 0;
  auto push = [&](TokenKind k, std::size_t len) {
    tokens_.push_back({k, text.substr(i, len), i});
    i += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      auto word = text.substr(i, j - i);
      TokenKind k = word == "true" ? TokenKind::True
                    : word == "false" ? TokenKind::False
                                      : TokenKind::Ident;
      push(k, j - i);
      continue;
    }
    auto rest = text.substr(i);
    if (rest.starts_with("<->")) push(TokenKind::Iff, 3);
    else if (rest.starts_with("->")) push(TokenKind::Implies, 2);
    else if (rest.starts_with("|~")) push(TokenKind::Twiddle, 2);
    else if (c == '~') push(TokenKind::Not, 1);
    else if (c == '&') push(TokenKind::And, 1);
    else if (c == '|') push(TokenKind::Or, 1);
    else if (c == '(') push(TokenKind::LParen, 1);
    else if (c == ')') push(TokenKind::RParen, 1);
    else if (c == '[') push(TokenKind::LBracket, 1);
    else if (c == ']') push(TokenKind::RBracket, 1);
    else if (c == ':') push(TokenKind::Colon, 1);
    else fail(std::string("unexpected character '") + c + "'", i);
  }
  tokens_.push_back({TokenKind::End, {}, text.size()});
}

void FormulaParser::fail(const std::string& what, std::size_t offset) const {
  throw ParseError(what, offset, line_);
}

bool FormulaParser::accept(TokenKind kind) {
  if (peek().kind != kind) return false;
  ++pos_;
  return true;
}

const Token& FormulaParser::expect(TokenKind kind, const char* what) {
  if (peek().kind != kind) {
    fail(std::string("expected ") + what + ", found " + describe(peek().kind), peek().offset);
  }
  return tokens_[pos_++];
}

bool FormulaParser::contains(TokenKind kind) const {
  for (const auto& t : tokens_) {
    if (t.kind == kind) return true;
  }
  return false;
}

Formula FormulaParser::formula() { return iff(); }

Formula FormulaParser::iff() {
  Formula lhs = implication();
  while (accept(TokenKind::Iff)) lhs = Iff(lhs, implication());
  return lhs;
}

Formula FormulaParser::implication() {
  Formula lhs = disjunction();
  if (accept(TokenKind::Implies)) return Implies(lhs, implication());
  return lhs;
}

Formula FormulaParser::disjunction() {
  Formula lhs = conjunction();
  while (accept(TokenKind::Or)) lhs = Or(lhs, conjunction());
  return lhs;
}

Formula FormulaParser::conjunction() {
  Formula lhs = unary();
  while (accept(TokenKind::And)) lhs = And(lhs, unary());
  return lhs;
}

Formula FormulaParser::unary() {
  if (accept(TokenKind::Not)) return Not(unary());
  return primary();
}

Formula FormulaParser::primary() {
  const Token& t = peek();
  switch (t.kind) {
    case TokenKind::True: ++pos_; return Formula::top();
    case TokenKind::False: ++pos_; return Formula::bot();
    case TokenKind::LParen: {
      ++pos_;
      Formula inner = iff();
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    case TokenKind::Ident: {
      ++pos_;
      Atom a = Atom::intern(t.text);
      if (vocab_) {
        if (mode_ == VocabMode::Strict && !vocab_->contains(a)) {
          fail("unknown atom '" + std::string(t.text) + "'", t.offset);
        }
        vocab_->add(a);
      } else if (mode_ == VocabMode::Strict) {
        fail("unknown atom '" + std::string(t.text) + "'", t.offset);
      }
      return Formula::atom(a);
    }
    default:
      fail(std::string("expected formula, found ") + describe(t.kind), t.offset);
  }
}

Formula parse_formula(std::string_view text, VocabMode mode, Vocabulary* vocab) {
  FormulaParser parser(text, mode, vocab);
  if (parser.at_end()) throw ParseError("empty formula", 0);
  Formula f = parser.formula();
  if (!parser.at_end()) {
    parser.fail(std::string("unexpected ") + describe(parser.peek().kind), parser.peek().offset);
  }
  return f;
}

}  // namespace sckb
