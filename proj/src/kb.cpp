#include "sckb/kb.hpp"

#include <algorithm>
#include <cctype>

#include "sckb/error.hpp"

namespace sckb {

std::string to_string(const DefeasibleConditional& c) {
  return to_string(c.antecedent) + " |~ " + to_string(c.consequent);
}

std::string to_string(const SituatedConditional& c) {
  std::string out = to_string(c.antecedent) + " |~";
  if (!c.situation.is_top()) out += "[" + to_string(c.situation) + "]";
  return out + " " + to_string(c.consequent);
}

SCKB::SCKB(std::vector<SituatedConditional> conditionals, Vocabulary vocab)
    : vocab_(std::move(vocab)) {
  for (const auto& c : conditionals) add(c);
}

SCKB::SCKB(std::vector<SituatedConditional> conditionals) {
  for (const auto& c : conditionals) add(c);
}

bool SCKB::add(const SituatedConditional& c) {
  if (std::find(conditionals_.begin(), conditionals_.end(), c) != conditionals_.end()) return false;
  vocab_.add_all(c.antecedent);
  vocab_.add_all(c.situation);
  vocab_.add_all(c.consequent);
  conditionals_.push_back(c);
  return true;
}

namespace {

SituatedConditional parse_statement(FormulaParser& parser) {
  if (!parser.contains(TokenKind::Twiddle)) {
    Formula fact = parser.formula();
    if (!parser.at_end()) parser.fail("unexpected token", parser.peek().offset);
    return {Not(fact), Formula::bot(), Formula::top()};
  }
  Formula antecedent = parser.formula();
  parser.expect(TokenKind::Twiddle, "'|~'");
  Formula situation = Formula::top();
  if (parser.accept(TokenKind::LBracket)) {
    situation = parser.formula();
    parser.expect(TokenKind::RBracket, "']'");
  }
  Formula consequent = parser.formula();
  if (!parser.at_end()) parser.fail("unexpected token after conditional", parser.peek().offset);
  return {antecedent, consequent, situation};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

SituatedConditional parse_conditional(std::string_view text, VocabMode mode, Vocabulary* vocab) {
  FormulaParser parser(text, mode, vocab);
  if (!parser.contains(TokenKind::Twiddle)) {
    throw ParseError("expected a conditional 'A |~ B' or 'A |~[G] B'", 0);
  }
  return parse_statement(parser);
}

SCKB parse_kb(std::string_view text) {
  Vocabulary vocab;
  VocabMode mode = VocabMode::Collect;
  std::vector<SituatedConditional> conditionals;
  bool seen_statement = false;
  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    ++line_no;
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    const std::size_t offset = line_start;
    line_start = line_end + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (line_end == text.size()) break;
      continue;
    }
    try {
      if (trim(line).starts_with("atoms:")) {
        if (seen_statement || mode == VocabMode::Strict) {
          throw ParseError("'atoms:' header must come once, before any statement", 0);
        }
        FormulaParser header(line, mode, nullptr);
        header.expect(TokenKind::Ident, "'atoms'");
        header.expect(TokenKind::Colon, "':'");
        while (!header.at_end()) {
          const Token& t = header.expect(TokenKind::Ident, "atom name");
          if (!vocab.add(Atom::intern(t.text))) {
            header.fail("duplicate atom '" + std::string(t.text) + "'", t.offset);
          }
        }
        mode = VocabMode::Strict;
      } else {
        FormulaParser parser(line, mode, &vocab, line_no);
        conditionals.push_back(parse_statement(parser));
        seen_statement = true;
      }
    } catch (const ParseError& e) {
      // Rebase to the whole-text offset and attach the line number.
      std::string msg = e.what();
      if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
      throw ParseError(msg, offset + e.offset(), line_no);
    }
    if (line_end == text.size()) break;
  }
  return SCKB(std::move(conditionals), std::move(vocab));
}

std::string serialize(const SCKB& kb) {
  std::string out;
  if (!kb.vocab().empty()) {
    out += "atoms:";
    for (Atom a : kb.vocab().atoms()) out += " " + a.name();
    out += "\n";
  }
  for (const auto& c : kb.conditionals()) out += to_string(c) + "\n";
  return out;
}

DefeasibleConditional conjunctive_form(const SituatedConditional& c) {
  return {And(c.antecedent, c.situation), c.consequent};
}

std::vector<DefeasibleConditional> conjunctive_form(const SCKB& kb) {
  std::vector<DefeasibleConditional> out;
  out.reserve(kb.size());
  for (const auto& c : kb.conditionals()) out.push_back(conjunctive_form(c));
  return out;
}

std::vector<Formula> materialise(const std::vector<DefeasibleConditional>& conditionals) {
  std::vector<Formula> out;
  out.reserve(conditionals.size());
  for (const auto& c : conditionals) out.push_back(Implies(c.antecedent, c.consequent));
  return out;
}

Formula build_mu(const std::vector<DefeasibleConditional>& fixpoint) {
  std::vector<Formula> negated;
  negated.reserve(fixpoint.size());
  for (const auto& c : fixpoint) negated.push_back(Not(c.antecedent));
  return conjoin(negated);
}

}  // namespace sckb
