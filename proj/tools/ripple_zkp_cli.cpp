// ripple-zkp: command-line front end over the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ripple_zkp/ripple_zkp.h"

namespace {

enum Exit { kAccept = 0, kReject = 1, kInputError = 2, kUnsatisfiable = 3 };

struct Config {
  std::string puzzle_path;
  std::string solution_path;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  unsigned threads = 0;
  bool dedupe = false;
  bool solve_first = false;
  bool inject_bias = false;
  std::string out_path;
};

struct PuzzleDeleter {
  void operator()(rzkp_puzzle* p) const { rzkp_puzzle_free(p); }
};
struct AssignmentDeleter {
  void operator()(rzkp_assignment* a) const { rzkp_assignment_free(a); }
};
struct ProofDeleter {
  void operator()(rzkp_proof* p) const { rzkp_proof_free(p); }
};
struct ReportDeleter {
  void operator()(rzkp_audit_report* r) const { rzkp_audit_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { rzkp_string_free(s); }
};
using PuzzlePtr = std::unique_ptr<rzkp_puzzle, PuzzleDeleter>;
using AssignmentPtr = std::unique_ptr<rzkp_assignment, AssignmentDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Thrown to leave a command with a given exit status; the message goes to stderr.
struct Stop {
  int code;
  std::string message;
};

int exit_for(rzkp_status status) {
  switch (status) {
    case RZKP_OK: return kAccept;
    case RZKP_ERR_UNSATISFIABLE: return kUnsatisfiable;
    case RZKP_ERR_INTERNAL: return kReject;
    default: return kInputError;
  }
}

void check(rzkp_status status, const std::string& context) {
  if (status != RZKP_OK) throw Stop{exit_for(status), context + ": " + rzkp_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Stop{kInputError, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const Config& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out || !(out << text)) throw Stop{kInputError, "cannot write " + cfg.out_path};
}

PuzzlePtr load_puzzle(const Config& cfg) {
  rzkp_puzzle* p = nullptr;
  check(rzkp_puzzle_parse(read_file(cfg.puzzle_path).c_str(), &p), cfg.puzzle_path);
  return PuzzlePtr(p);
}

AssignmentPtr load_solution(const Config& cfg) {
  rzkp_assignment* a = nullptr;
  check(rzkp_assignment_parse(read_file(cfg.solution_path).c_str(), &a), cfg.solution_path);
  return AssignmentPtr(a);
}

AssignmentPtr solve(const rzkp_puzzle* puzzle) {
  rzkp_assignment* a = nullptr;
  check(rzkp_solve(puzzle, &a), "solve");
  return AssignmentPtr(a);
}

unsigned flags(const Config& cfg) {
  return (cfg.dedupe ? RZKP_DEDUPE_DIRECTIONS : 0u) | (cfg.inject_bias ? RZKP_INJECT_BIAS : 0u);
}

int cmd_solve(const Config& cfg) {
  auto puzzle = load_puzzle(cfg);
  auto solution = solve(puzzle.get());
  char* text = nullptr;
  check(rzkp_assignment_format(solution.get(), &text), "format");
  StringPtr owned(text);
  write_output(cfg, text);
  return kAccept;
}

int cmd_validate(const Config& cfg) {
  auto puzzle = load_puzzle(cfg);
  auto solution = load_solution(cfg);
  std::size_t count = 0;
  char* report = nullptr;
  check(rzkp_validate(puzzle.get(), solution.get(), &count, &report), "validate");
  StringPtr owned(report);
  write_output(cfg, count == 0 ? std::string("valid\n") : std::string(report));
  return count == 0 ? kAccept : kReject;
}

int cmd_prove(const Config& cfg) {
  auto puzzle = load_puzzle(cfg);
  auto solution = cfg.solution_path.empty() ? solve(puzzle.get()) : load_solution(cfg);
  rzkp_proof* raw = nullptr;
  check(rzkp_prove(puzzle.get(), solution.get(), cfg.seed, flags(cfg), &raw), "prove");
  std::unique_ptr<rzkp_proof, ProofDeleter> proof(raw);
  write_output(cfg, rzkp_proof_transcript(proof.get()));
  if (rzkp_proof_accepted(proof.get())) {
    std::cerr << "accept\n";
    return kAccept;
  }
  std::cerr << "reject " << rzkp_proof_reason(proof.get()) << "\n";
  return kReject;
}

int cmd_audit(const Config& cfg) {
  auto puzzle = load_puzzle(cfg);
  auto solution = cfg.solution_path.empty() ? solve(puzzle.get()) : load_solution(cfg);
  rzkp_audit_report* raw = nullptr;
  check(rzkp_audit(puzzle.get(), solution.get(), cfg.seed, cfg.trials, flags(cfg), cfg.threads,
                   &raw),
        "audit");
  std::unique_ptr<rzkp_audit_report, ReportDeleter> report(raw);
  write_output(cfg, rzkp_audit_report_text(report.get()));
  if (rzkp_audit_report_underpowered(report.get()))
    std::cerr << "warning: fewer than 1000 trials, statistics are informational\n";
  return rzkp_audit_report_pass(report.get()) ? kAccept : kReject;
}

int cmd_count(const Config& cfg) {
  auto puzzle = load_puzzle(cfg);
  rzkp_card_stats s{};
  check(rzkp_card_count(puzzle.get(), &s), "count");
  std::ostringstream out;
  out << "k=" << s.k << " m=" << s.m << " n=" << s.n << " grid_cards=" << s.grid_cards
      << " peak_aux_cards=" << s.peak_aux_cards << " total=" << s.total << "\n";
  write_output(cfg, out.str());
  return kAccept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Card-based zero-knowledge proofs for Ripple Effect puzzles"};
  app.require_subcommand(1);
  Config cfg;

  const auto add_puzzle = [&](CLI::App* sub) {
    sub->add_option("--puzzle", cfg.puzzle_path, "puzzle file")->required();
  };
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "write output here instead of stdout");
  };

  auto* solve_cmd = app.add_subcommand("solve", "print the first solution");
  add_puzzle(solve_cmd);
  add_out(solve_cmd);

  auto* validate_cmd = app.add_subcommand("validate", "check a solution against the rules");
  add_puzzle(validate_cmd);
  validate_cmd->add_option("--solution", cfg.solution_path, "solution file")->required();
  add_out(validate_cmd);

  auto* prove_cmd = app.add_subcommand("prove", "run the protocol and emit its transcript");
  add_puzzle(prove_cmd);
  auto* sol_opt = prove_cmd->add_option("--solution", cfg.solution_path, "solution file");
  auto* first_opt = prove_cmd->add_flag("--solve-first", cfg.solve_first, "solve the puzzle and prove that");
  sol_opt->excludes(first_opt);
  prove_cmd->add_option("--seed", cfg.seed, "shuffle seed");
  prove_cmd->add_flag("--dedupe-directions", cfg.dedupe, "skip left and up distance checks");
  add_out(prove_cmd);

  auto* audit_cmd = app.add_subcommand("audit", "compare real and simulated transcripts");
  add_puzzle(audit_cmd);
  audit_cmd->add_option("--solution", cfg.solution_path, "solution file (default: solve)");
  audit_cmd->add_option("--seed", cfg.seed, "base seed");
  audit_cmd->add_option("--trials", cfg.trials, "runs per side")->check(CLI::PositiveNumber);
  audit_cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  audit_cmd->add_flag("--dedupe-directions", cfg.dedupe, "skip left and up distance checks");
  audit_cmd->add_flag("--inject-bias", cfg.inject_bias)->group("");
  add_out(audit_cmd);

  auto* count_cmd = app.add_subcommand("count", "card counts for the puzzle");
  add_puzzle(count_cmd);
  add_out(count_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  if (prove_cmd->parsed() && cfg.solution_path.empty() && !cfg.solve_first) {
    std::cerr << "prove needs --solution or --solve-first\n";
    return kInputError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(cfg);
    if (validate_cmd->parsed()) return cmd_validate(cfg);
    if (prove_cmd->parsed()) return cmd_prove(cfg);
    if (audit_cmd->parsed()) return cmd_audit(cfg);
    return cmd_count(cfg);
  } catch (const Stop& stop) {
    std::cerr << stop.message << "\n";
    return stop.code;
  }
}
