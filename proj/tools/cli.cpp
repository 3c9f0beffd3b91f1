#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sckb/closure.hpp"
#include "sckb/error.hpp"
#include "sckb/kb.hpp"
#include "sckb/oracle.hpp"
#include "sckb/semantics.hpp"

namespace sckb::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Raised for problems that map directly onto an exit code.
struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParseError, path + ": cannot read file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SCKB load_kb(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_kb(text);
  } catch (const Error& e) {
    throw Failure{kParseError, path + ": " + e.what()};
  }
}

SituatedConditional load_query(const std::string& text, Vocabulary& vocab) {
  try {
    return parse_conditional(text, VocabMode::Collect, &vocab);
  } catch (const Error& e) {
    throw Failure{kParseError, "query: " + std::string(e.what())};
  }
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Options {
  std::string kb_path;
  std::string second;  // query, formula or query-file path
  std::string engine = "tt";
  bool oracle = false;
  bool stats = false;
  bool json = false;
  std::size_t max_atoms = 12;
};

EntailmentOracle make_oracle(const Options& o) {
  try {
    return EntailmentOracle(parse_backend(o.engine));
  } catch (const Error& e) {
    throw Failure{kParseError, e.what()};
  }
}

nlohmann::json result_json(const SituatedConditional& q, bool verdict, std::uint64_t calls, double ms) {
  return {{"query", to_string(q)}, {"verdict", verdict}, {"calls", calls}, {"ms", ms}};
}

int cmd_check(const Options& o, std::ostream& out) {
  const SCKB kb = load_kb(o.kb_path);
  EntailmentOracle oracle = make_oracle(o);
  const bool ok = is_consistent(oracle, kb);
  out << (ok ? "consistent" : "inconsistent") << "\n";
  return ok ? kTrue : kFalse;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  const SCKB kb = load_kb(o.kb_path);
  Vocabulary vocab = kb.vocab();
  const SituatedConditional q = load_query(o.second, vocab);
  EntailmentOracle oracle = make_oracle(o);

  const auto start = Clock::now();
  const bool verdict = minimal_closure_query(oracle, kb, q);
  const double ms = elapsed_ms(start);

  if (o.json) {
    out << result_json(q, verdict, oracle.calls(), ms).dump() << "\n";
  } else {
    out << (verdict ? "true" : "false") << "\n";
    if (o.stats) out << "calls: " << oracle.calls() << "\n";
  }

  if (o.oracle) {
    if (vocab.size() > 2) {
      err << "oracle skipped: vocabulary has " << vocab.size() << " atoms (limit 2)\n";
    } else {
      const EpistemicInterpretation model = brute_minimal_epistemic_model(kb, vocab);
      const bool semantic = satisfies_situated(model, q);
      if (semantic != verdict) {
        err << "oracle mismatch: algorithm says " << (verdict ? "true" : "false")
            << ", minimal epistemic model says " << (semantic ? "true" : "false") << "\n";
        return kOracleMismatch;
      }
    }
  }
  return verdict ? kTrue : kFalse;
}

int cmd_rank(const Options& o, std::ostream& out) {
  const SCKB kb = load_kb(o.kb_path);
  Formula f;
  try {
    Vocabulary vocab = kb.vocab();
    f = parse_formula(o.second, VocabMode::Collect, &vocab);
  } catch (const Error& e) {
    throw Failure{kParseError, "formula: " + std::string(e.what())};
  }
  EntailmentOracle oracle = make_oracle(o);
  out << rank_of(oracle, conjunctive_form(kb), f).to_string() << "\n";
  return kTrue;
}

int cmd_model(const Options& o, std::ostream& out, std::ostream& err) {
  const SCKB kb = load_kb(o.kb_path);
  if (kb.vocab().size() > o.max_atoms) {
    throw Failure{kBudget, "refusing to build a model over " + std::to_string(kb.vocab().size()) +
                               " atoms (--max-atoms=" + std::to_string(o.max_atoms) + ")"};
  }
  EntailmentOracle oracle = make_oracle(o);
  try {
    out << dump_layers(build_minimal_epistemic_model(oracle, kb));
    return kTrue;
  } catch (const InconsistentKB&) {
    err << "knowledge base is inconsistent; every valuation is impossible\n";
    const std::vector<Rank> ranks(kb.vocab().world_count(), Rank::inf_inf());
    out << dump_layers(EpistemicInterpretation(kb.vocab(), ranks));
    return kFalse;
  }
}

int cmd_batch(const Options& o, std::ostream& out, std::ostream& err) {
  const SCKB kb = load_kb(o.kb_path);
  const std::string text = read_file(o.second);
  EntailmentOracle oracle = make_oracle(o);
  const CompiledKB compiled = CompiledKB::compile(oracle, kb);

  nlohmann::json results = nlohmann::json::array();
  bool failed = false;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    Vocabulary vocab = kb.vocab();
    SituatedConditional q;
    try {
      q = parse_conditional(line, VocabMode::Collect, &vocab);
    } catch (const Error& e) {
      err << o.second << ": line " << number << ": " << e.what() << "\n";
      failed = true;
      continue;
    }
    const auto before = oracle.calls();
    const auto start = Clock::now();
    const bool verdict = compiled.query(oracle, q);
    const double ms = elapsed_ms(start);
    const auto calls = oracle.calls() - before;

    if (o.json) {
      results.push_back(result_json(q, verdict, calls, ms));
    } else {
      out << (verdict ? "true " : "false") << "  " << to_string(q);
      if (o.stats) out << "  calls=" << calls;
      out << "\n";
    }
  }
  if (o.json) out << results.dump(2) << "\n";
  return failed ? kPartialBatch : kTrue;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reasoner for situated conditional knowledge bases", "sckb"};
  app.require_subcommand(1);
  Options o;

  auto add_engine = [&](CLI::App* cmd) {
    cmd->add_option("--engine", o.engine, "Entailment backend")
        ->check(CLI::IsMember({"tt", "search"}))
        ->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "Decide consistency of a knowledge base");
  check->add_option("kb", o.kb_path, "Knowledge base file")->required();
  add_engine(check);

  auto* query = app.add_subcommand("query", "Decide minimal-closure membership of a query");
  query->add_option("kb", o.kb_path, "Knowledge base file")->required();
  query->add_option("query", o.second, "Query `A |~ B` or `A |~[G] B`")->required();
  add_engine(query);
  query->add_flag("--oracle", o.oracle, "Cross-check against the minimal epistemic model (<= 2 atoms)");
  query->add_flag("--stats", o.stats, "Report the number of entailment checks");
  query->add_flag("--json", o.json, "Emit {query, verdict, calls, ms}");

  auto* rank = app.add_subcommand("rank", "Rank of a formula w.r.t. the conjunctive form");
  rank->add_option("kb", o.kb_path, "Knowledge base file")->required();
  rank->add_option("formula", o.second, "Formula")->required();
  add_engine(rank);

  auto* model = app.add_subcommand("model", "Print the minimal epistemic model");
  model->add_option("kb", o.kb_path, "Knowledge base file")->required();
  model->add_option("--max-atoms", o.max_atoms, "Refuse larger vocabularies")->capture_default_str();
  add_engine(model);

  auto* batch = app.add_subcommand("batch", "Answer one query per line of a file");
  batch->add_option("kb", o.kb_path, "Knowledge base file")->required();
  batch->add_option("queries", o.second, "Query file")->required();
  add_engine(batch);
  batch->add_flag("--stats", o.stats, "Report entailment checks per query");
  batch->add_flag("--json", o.json, "Emit a JSON array of {query, verdict, calls, ms}");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*query) return cmd_query(o, out, err);
    if (*rank) return cmd_rank(o, out);
    if (*model) return cmd_model(o, out, err);
    if (*batch) return cmd_batch(o, out, err);
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  }
  return kParseError;
}

}  // namespace sckb::cli
