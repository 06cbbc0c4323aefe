#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "ripple_zkp/puzzle.hpp"
#include "support.hpp"

using namespace ripple;
using testsupport::sample_puzzle;
using testsupport::sample_solution;

TEST(Parse, SampleGrid) {
  const Puzzle p = sample_puzzle();
  EXPECT_EQ(p.rows(), 7);
  EXPECT_EQ(p.cols(), 7);
  EXPECT_EQ(p.room_count(), 12);
  std::vector<int> fixed;
  for (int i = 0; i < p.cell_count(); ++i)
    if (auto v = p.fixed(p.cell_at(i))) fixed.push_back(*v);
  std::sort(fixed.begin(), fixed.end());
  EXPECT_EQ(fixed, (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(p.fixed({2, 3}), 2);
  EXPECT_EQ(p.fixed({7, 7}), 1);
  EXPECT_FALSE(p.fixed({1, 1}));
}

TEST(Parse, OneByOne) {
  const Puzzle p = parse_puzzle("1 1\nA\n.\n");
  EXPECT_EQ(p.room_count(), 1);
  EXPECT_EQ(p.room_size(0), 1);
}

TEST(Parse, DisconnectedRoom) {
  try {
    parse_puzzle("2 2\nA B\nC A\n. .\n. .\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'A'"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("disconnected"), std::string::npos) << e.what();
  }
}

TEST(Parse, ReportsLocation) {
  try {
    parse_puzzle("2 2\nA A\nA\n. .\n. .\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_puzzle("1 2\nA A\n. 3\n"), ParseError);  // above room size
  EXPECT_THROW(parse_puzzle("1 2\nA A\n. 0\n"), ParseError);
  EXPECT_THROW(parse_puzzle("1 2\nA A\n. x\n"), ParseError);
  EXPECT_THROW(parse_puzzle("1 2\nA -\n. .\n"), ParseError);
  EXPECT_THROW(parse_puzzle(""), ParseError);
  EXPECT_THROW(parse_assignment("1 2\n3\n"), ParseError);
}

TEST(Parse, CommentsAndBlankLines) {
  const Puzzle p = parse_puzzle("# c\n\n1 2\n\nA A\n# mid\n. 1\n");
  EXPECT_EQ(p.fixed({1, 2}), 1);
}

TEST(Assignment, FormatRoundTrip) {
  const Assignment a = sample_solution();
  EXPECT_EQ(parse_assignment(format_assignment(a)), a);
  EXPECT_EQ(format_assignment(Assignment(1, 2, {1, 2})), "1 2\n");
}

TEST(Validate, SampleSolution) { EXPECT_TRUE(validate(sample_puzzle(), sample_solution()).empty()); }

TEST(Validate, AdjacentOnes) {
  Assignment a = sample_solution();
  ASSERT_EQ(a.at({1, 1}), 2);
  a.set({1, 1}, 1);
  const auto found = validate(sample_puzzle(), a);
  const auto hit = std::find_if(found.begin(), found.end(), [](const Violation& v) {
    return v.kind == ViolationKind::Distance && v.cells == std::vector<Cell>{{1, 1}, {1, 2}};
  });
  ASSERT_NE(hit, found.end());
  EXPECT_NE(hit->detail.find("0 cells between"), std::string::npos);
}

TEST(Validate, OneByOne) {
  EXPECT_TRUE(validate(parse_puzzle("1 1\nA\n.\n"), Assignment(1, 1, {1})).empty());
}

TEST(Validate, RoomAndFixed) {
  const Puzzle p = parse_puzzle("1 3\nA A B\n. . 1\n");
  EXPECT_TRUE(validate(p, Assignment(1, 3, {1, 2, 1})).empty());
  EXPECT_FALSE(validate(p, Assignment(1, 3, {2, 1, 1})).empty());
  const auto v = validate(p, Assignment(1, 3, {1, 1, 1}));
  EXPECT_TRUE(std::any_of(v.begin(), v.end(),
                          [](const Violation& x) { return x.kind == ViolationKind::RoomContent; }));
  const auto w = validate(parse_puzzle("1 2\nA A\n. 1\n"), Assignment(1, 2, {1, 2}));
  EXPECT_TRUE(std::any_of(w.begin(), w.end(),
                          [](const Violation& x) { return x.kind == ViolationKind::FixedMismatch; }));
}

TEST(Solve, SampleUnique) {
  const auto found = solve(sample_puzzle(), 2);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], sample_solution());
}

TEST(Solve, Tiny) {
  const auto one = solve(parse_puzzle("1 1\nA\n.\n"), 10);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].values(), std::vector<int>{1});

  const auto two = solve(testsupport::single_room(1, 2), 10);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].values(), (std::vector<int>{1, 2}));
  EXPECT_EQ(two[1].values(), (std::vector<int>{2, 1}));

  EXPECT_TRUE(solve(parse_puzzle("1 2\nA A\n1 1\n"), 10).empty());
  EXPECT_THROW(solve(testsupport::single_room(1, 2), 0), std::invalid_argument);
}

// Brute force over every per-room permutation; rule 1 admits nothing else.
std::vector<Assignment> brute_force(const Puzzle& p) {
  std::vector<std::vector<int>> perms(p.room_count());
  for (RoomId r = 0; r < p.room_count(); ++r) {
    perms[r].resize(p.room_size(r));
    for (int i = 0; i < p.room_size(r); ++i) perms[r][i] = i + 1;
  }
  std::vector<Assignment> out;
  std::function<void(RoomId)> go = [&](RoomId r) {
    if (r == p.room_count()) {
      std::vector<int> values(p.cell_count());
      for (RoomId q = 0; q < p.room_count(); ++q)
        for (std::size_t i = 0; i < perms[q].size(); ++i)
          values[p.index(p.room_cells(q)[i])] = perms[q][i];
      Assignment a(p.rows(), p.cols(), values);
      if (validate(p, a).empty()) out.push_back(a);
      return;
    }
    std::sort(perms[r].begin(), perms[r].end());
    do go(r + 1);
    while (std::next_permutation(perms[r].begin(), perms[r].end()));
  };
  go(0);
  std::sort(out.begin(), out.end(),
            [](const Assignment& a, const Assignment& b) { return a.values() < b.values(); });
  return out;
}

TEST(Solve, MatchesBruteForce) {
  std::size_t puzzles = 0;
  for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {1, 5},
                                                      {2, 3}, {3, 2}, {1, 7}, {2, 4}, {4, 2}, {1, 8}}) {
    for (const Puzzle& p : testsupport::all_partitions(r, c)) {
      ++puzzles;
      ASSERT_EQ(solve(p, 1u << 20), brute_force(p)) << r << "x" << c;
    }
  }
  EXPECT_GT(puzzles, 1000u);
}

TEST(Solve, TotalAssignmentsAgree) {
  // Values outside each room's range, checked the slow way on the smallest grids.
  for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {1, 3}, {2, 2}}) {
    for (const Puzzle& p : testsupport::all_partitions(r, c)) {
      std::vector<Assignment> all;
      testsupport::for_each_assignment(r, c, max_room_size(p), [&](const Assignment& a) {
        if (validate(p, a).empty()) all.push_back(a);
      });
      std::sort(all.begin(), all.end(),
                [](const Assignment& a, const Assignment& b) { return a.values() < b.values(); });
      ASSERT_EQ(all, brute_force(p));
    }
  }
}

TEST(MaxRoomSize, Examples) {
  EXPECT_EQ(max_room_size(sample_puzzle()), 6);
  EXPECT_EQ(max_room_size(parse_puzzle("1 1\nA\n.\n")), 1);
  EXPECT_EQ(max_room_size(testsupport::single_room(2, 3)), 6);
}
