#include "ripple_zkp/ripple_zkp.h"

#include <cstring>
#include <exception>
#include <string>

#include "ripple_zkp/audit.hpp"

struct rzkp_puzzle {
  ripple::Puzzle value;
};
struct rzkp_assignment {
  ripple::Assignment value;
};
struct rzkp_proof {
  ripple::RunResult result;
  std::string reason;
  std::string transcript;
};
struct rzkp_audit_report {
  ripple::AuditReport report;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

rzkp_status fail(rzkp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body and maps exceptions to status codes.
template <class Body>
rzkp_status guarded(Body body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const ripple::ParseError& e) {
    return fail(RZKP_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RZKP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RZKP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RZKP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RZKP_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_stats(const ripple::CardStats& s, rzkp_card_stats* out) {
  *out = {s.k,          s.m,         s.n,           s.grid_cards,  s.peak_aux_cards,
          s.total,      s.fixed_rows, s.appended_block, s.edge_padding};
}

bool same_shape(const ripple::Puzzle& p, const ripple::Assignment& a) {
  return p.rows() == a.rows() && p.cols() == a.cols();
}

rzkp_status shape_error(const ripple::Puzzle& p, const ripple::Assignment& a) {
  return fail(RZKP_ERR_SHAPE, "solution is " + std::to_string(a.rows()) + "x" +
                                  std::to_string(a.cols()) + " but the puzzle is " +
                                  std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
}

// Half of all simulated room reveals come out unshuffled.
std::vector<std::size_t> biased_permutation(std::size_t s, ripple::RandomSource& rng) {
  if (rng.uniform(2) == 0) {
    std::vector<std::size_t> identity(s);
    for (std::size_t i = 0; i < s; ++i) identity[i] = i;
    return identity;
  }
  return rng.permutation(s);
}

}  // namespace

extern "C" {

const char* rzkp_last_error(void) { return g_last_error.c_str(); }

void rzkp_string_free(char* s) { delete[] s; }

rzkp_status rzkp_puzzle_parse(const char* text, rzkp_puzzle** out) {
  if (!text || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new rzkp_puzzle{ripple::parse_puzzle(text)};
    return RZKP_OK;
  });
}

void rzkp_puzzle_free(rzkp_puzzle* puzzle) { delete puzzle; }

rzkp_status rzkp_puzzle_shape(const rzkp_puzzle* puzzle, int* rows, int* cols, int* k) {
  if (!puzzle) return fail(RZKP_ERR_INVALID_ARGUMENT, "null puzzle");
  if (rows) *rows = puzzle->value.rows();
  if (cols) *cols = puzzle->value.cols();
  if (k) *k = ripple::max_room_size(puzzle->value);
  return RZKP_OK;
}

rzkp_status rzkp_assignment_parse(const char* text, rzkp_assignment** out) {
  if (!text || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new rzkp_assignment{ripple::parse_assignment(text)};
    return RZKP_OK;
  });
}

void rzkp_assignment_free(rzkp_assignment* assignment) { delete assignment; }

rzkp_status rzkp_assignment_format(const rzkp_assignment* assignment, char** out) {
  if (!assignment || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(ripple::format_assignment(assignment->value));
    return RZKP_OK;
  });
}

rzkp_status rzkp_solve(const rzkp_puzzle* puzzle, rzkp_assignment** out) {
  if (!puzzle || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto found = ripple::solve(puzzle->value, 1);
    if (found.empty()) return fail(RZKP_ERR_UNSATISFIABLE, "puzzle has no solution");
    *out = new rzkp_assignment{std::move(found.front())};
    return RZKP_OK;
  });
}

rzkp_status rzkp_count_solutions(const rzkp_puzzle* puzzle, size_t limit, size_t* count) {
  if (!puzzle || !count) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *count = ripple::solve(puzzle->value, limit).size();
    return RZKP_OK;
  });
}

rzkp_status rzkp_validate(const rzkp_puzzle* puzzle, const rzkp_assignment* assignment,
                          size_t* violations, char** report) {
  if (!puzzle || !assignment) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  if (!same_shape(puzzle->value, assignment->value))
    return shape_error(puzzle->value, assignment->value);
  return guarded([&] {
    const auto found = ripple::validate(puzzle->value, assignment->value);
    if (violations) *violations = found.size();
    if (report) {
      std::string text;
      for (const auto& v : found) {
        text += std::string(ripple::to_string(v.kind));
        for (const auto& c : v.cells) text += " " + ripple::to_string(c);
        text += ": " + v.detail + "\n";
      }
      *report = copy_string(text);
    }
    return RZKP_OK;
  });
}

rzkp_status rzkp_card_count(const rzkp_puzzle* puzzle, rzkp_card_stats* out) {
  if (!puzzle || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    fill_stats(ripple::card_stats(puzzle->value), out);
    return RZKP_OK;
  });
}

rzkp_status rzkp_prove(const rzkp_puzzle* puzzle, const rzkp_assignment* assignment,
                       uint64_t seed, unsigned flags, rzkp_proof** out) {
  if (!puzzle || !assignment || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  if (!same_shape(puzzle->value, assignment->value))
    return shape_error(puzzle->value, assignment->value);
  return guarded([&] {
    ripple::ProtocolOptions options;
    options.dedupe_directions = (flags & RZKP_DEDUPE_DIRECTIONS) != 0;
    auto result = ripple::run_protocol(
        puzzle->value, {assignment->value, ripple::Honesty::Arbitrary}, seed, options);
    auto* proof = new rzkp_proof{std::move(result), {}, {}};
    proof->reason = proof->result.verdict.describe();
    proof->transcript = proof->result.transcript.serialize();
    *out = proof;
    return RZKP_OK;
  });
}

void rzkp_proof_free(rzkp_proof* proof) { delete proof; }

int rzkp_proof_accepted(const rzkp_proof* proof) {
  return proof && proof->result.verdict.accepted ? 1 : 0;
}

const char* rzkp_proof_reason(const rzkp_proof* proof) { return proof ? proof->reason.c_str() : ""; }

const char* rzkp_proof_transcript(const rzkp_proof* proof) {
  return proof ? proof->transcript.c_str() : "";
}

rzkp_status rzkp_proof_cards(const rzkp_proof* proof, rzkp_card_stats* out) {
  if (!proof || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  fill_stats(proof->result.cards, out);
  return RZKP_OK;
}

rzkp_status rzkp_audit(const rzkp_puzzle* puzzle, const rzkp_assignment* solution, uint64_t seed,
                       size_t trials, unsigned flags, unsigned threads, rzkp_audit_report** out) {
  if (!puzzle || !solution || !out) return fail(RZKP_ERR_INVALID_ARGUMENT, "null argument");
  if (trials == 0) return fail(RZKP_ERR_INVALID_ARGUMENT, "trials must be positive");
  if (!same_shape(puzzle->value, solution->value))
    return shape_error(puzzle->value, solution->value);
  return guarded([&] {
    if (!ripple::validate(puzzle->value, solution->value).empty())
      return fail(RZKP_ERR_INVALID_ARGUMENT, "audit needs a valid solution");
    ripple::ProtocolOptions options;
    options.dedupe_directions = (flags & RZKP_DEDUPE_DIRECTIONS) != 0;
    ripple::SimulatorOptions simopts;
    simopts.dedupe_directions = options.dedupe_directions;
    if (flags & RZKP_INJECT_BIAS) simopts.room_permutation = biased_permutation;
    const auto real =
        ripple::collect_real(puzzle->value, solution->value, seed, trials, options, threads);
    const auto simulated = ripple::collect_simulated(puzzle->value, seed, trials, simopts, threads);
    auto* report = new rzkp_audit_report{ripple::full_audit(real, simulated), {}};
    report->text = report->report.serialize();
    *out = report;
    return RZKP_OK;
  });
}

void rzkp_audit_report_free(rzkp_audit_report* report) { delete report; }

int rzkp_audit_report_pass(const rzkp_audit_report* report) {
  return report && report->report.pass ? 1 : 0;
}

int rzkp_audit_report_underpowered(const rzkp_audit_report* report) {
  return report && report->report.underpowered ? 1 : 0;
}

const char* rzkp_audit_report_text(const rzkp_audit_report* report) {
  return report ? report->text.c_str() : "";
}

}  // extern "C"
