#include <gtest/gtest.h>

#include <string>

#include "ripple_zkp/ripple_zkp.h"
#include "support.hpp"

namespace {

std::string data(const char* name) {
  return testsupport::read_text(std::string(RIPPLE_DATA_DIR) + "/" + name);
}

rzkp_puzzle* parse(const std::string& text) {
  rzkp_puzzle* p = nullptr;
  EXPECT_EQ(rzkp_puzzle_parse(text.c_str(), &p), RZKP_OK) << rzkp_last_error();
  return p;
}

rzkp_assignment* assignment(const std::string& text) {
  rzkp_assignment* a = nullptr;
  EXPECT_EQ(rzkp_assignment_parse(text.c_str(), &a), RZKP_OK) << rzkp_last_error();
  return a;
}

}  // namespace

TEST(CApi, ParseErrors) {
  rzkp_puzzle* p = nullptr;
  EXPECT_EQ(rzkp_puzzle_parse("2 2\nA B\nC A\n. .\n. .\n", &p), RZKP_ERR_PARSE);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(rzkp_last_error()).find("disconnected"), std::string::npos);
  EXPECT_EQ(rzkp_puzzle_parse(nullptr, &p), RZKP_ERR_INVALID_ARGUMENT);
  rzkp_assignment* a = nullptr;
  EXPECT_EQ(rzkp_assignment_parse("1 2\n3\n", &a), RZKP_ERR_PARSE);
}

TEST(CApi, SolveAndValidate) {
  rzkp_puzzle* p = parse(data("sample7x7.puzzle"));
  int rows = 0, cols = 0, k = 0;
  ASSERT_EQ(rzkp_puzzle_shape(p, &rows, &cols, &k), RZKP_OK);
  EXPECT_EQ(rows, 7);
  EXPECT_EQ(k, 6);

  rzkp_assignment* sol = nullptr;
  ASSERT_EQ(rzkp_solve(p, &sol), RZKP_OK);
  char* text = nullptr;
  ASSERT_EQ(rzkp_assignment_format(sol, &text), RZKP_OK);
  EXPECT_EQ(std::string(text), data("sample7x7.solution"));
  rzkp_string_free(text);

  size_t violations = 99;
  char* report = nullptr;
  ASSERT_EQ(rzkp_validate(p, sol, &violations, &report), RZKP_OK);
  EXPECT_EQ(violations, 0u);
  EXPECT_STREQ(report, "");
  rzkp_string_free(report);

  size_t count = 0;
  ASSERT_EQ(rzkp_count_solutions(p, 5, &count), RZKP_OK);
  EXPECT_EQ(count, 1u);

  rzkp_assignment* small = assignment("1 2\n");
  EXPECT_EQ(rzkp_validate(p, small, &violations, nullptr), RZKP_ERR_SHAPE);
  rzkp_assignment_free(small);
  rzkp_assignment_free(sol);
  rzkp_puzzle_free(p);
}

TEST(CApi, Unsatisfiable) {
  rzkp_puzzle* p = parse("1 2\nA A\n1 1\n");
  rzkp_assignment* sol = nullptr;
  EXPECT_EQ(rzkp_solve(p, &sol), RZKP_ERR_UNSATISFIABLE);
  EXPECT_EQ(sol, nullptr);
  rzkp_puzzle_free(p);
}

TEST(CApi, ProveAndCount) {
  rzkp_puzzle* p = parse(data("sample7x7.puzzle"));
  rzkp_assignment* sol = assignment(data("sample7x7.solution"));
  rzkp_proof* a = nullptr;
  rzkp_proof* b = nullptr;
  ASSERT_EQ(rzkp_prove(p, sol, 42, 0, &a), RZKP_OK);
  ASSERT_EQ(rzkp_prove(p, sol, 42, 0, &b), RZKP_OK);
  EXPECT_EQ(rzkp_proof_accepted(a), 1);
  EXPECT_STREQ(rzkp_proof_reason(a), "None");
  EXPECT_STREQ(rzkp_proof_transcript(a), rzkp_proof_transcript(b));
  rzkp_card_stats measured{};
  ASSERT_EQ(rzkp_proof_cards(a, &measured), RZKP_OK);
  EXPECT_EQ(measured.peak_aux_cards, 94u);
  EXPECT_EQ(measured.total, 388u);
  rzkp_proof_free(a);
  rzkp_proof_free(b);

  rzkp_card_stats closed{};
  ASSERT_EQ(rzkp_card_count(p, &closed), RZKP_OK);
  EXPECT_EQ(closed.total, 388u);
  EXPECT_EQ(closed.k, 6u);

  rzkp_assignment* bad = assignment("1 1 3 1 4 2 3\n1 5 2 4 1 3 1\n3 4 1 2 3 5 4\n1 2 4 3 5 1 2\n"
                                    "4 3 1 5 2 4 6\n5 1 2 1 4 3 5\n3 2 5 4 3 2 1\n");
  rzkp_proof* rejected = nullptr;
  ASSERT_EQ(rzkp_prove(p, bad, 1, 0, &rejected), RZKP_OK);
  EXPECT_EQ(rzkp_proof_accepted(rejected), 0);
  EXPECT_STREQ(rzkp_proof_reason(rejected), "DistanceHeartFound@(1,1):right");
  rzkp_proof_free(rejected);
  rzkp_assignment_free(bad);

  rzkp_assignment* wrong = assignment("1 2\n2 1\n");
  rzkp_proof* none = nullptr;
  EXPECT_EQ(rzkp_prove(p, wrong, 1, 0, &none), RZKP_ERR_SHAPE);
  rzkp_assignment_free(wrong);
  rzkp_assignment_free(sol);
  rzkp_puzzle_free(p);
}

TEST(CApi, Audit) {
  rzkp_puzzle* p = parse("1 3\nA A A\n. . .\n");
  rzkp_assignment* sol = nullptr;
  ASSERT_EQ(rzkp_solve(p, &sol), RZKP_OK);
  rzkp_audit_report* r = nullptr;
  ASSERT_EQ(rzkp_audit(p, sol, 3, 10, 0, 1, &r), RZKP_OK);
  EXPECT_EQ(rzkp_audit_report_pass(r), 1);
  EXPECT_EQ(rzkp_audit_report_underpowered(r), 1);
  EXPECT_EQ(std::string(rzkp_audit_report_text(r)).rfind("ripple-zkp-audit 1\n", 0), 0u);
  rzkp_audit_report_free(r);
  EXPECT_EQ(rzkp_audit(p, sol, 3, 0, 0, 1, &r), RZKP_ERR_INVALID_ARGUMENT);
  rzkp_assignment_free(sol);
  rzkp_puzzle_free(p);
}
