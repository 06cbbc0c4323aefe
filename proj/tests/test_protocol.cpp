#include <gtest/gtest.h>

#include "ripple_zkp/protocol.hpp"
#include "support.hpp"

using namespace ripple;
using testsupport::sample_puzzle;
using testsupport::sample_solution;

namespace {

constexpr Direction kDirections[] = {Direction::Right, Direction::Left, Direction::Up,
                                     Direction::Down};

std::vector<Sequence> sequences(const std::vector<std::size_t>& values, std::size_t k) {
  std::vector<Sequence> out;
  for (auto v : values) out.push_back(encode(v, k));
  return out;
}

// Faces and ids of every cell, read privately.
std::vector<std::pair<Sequence, std::vector<CardId>>> snapshot(const Board& b) {
  std::vector<std::pair<Sequence, std::vector<CardId>>> out;
  for (int r = 1; r <= b.rows(); ++r)
    for (int c = 1; c <= b.cols(); ++c)
      out.emplace_back(CardInspector::faces(b.cards({r, c})), CardInspector::ids(b.cards({r, c})));
  return out;
}

Board room_board(Session& s, const std::vector<std::size_t>& values, std::size_t k) {
  Board b(1, static_cast<int>(values.size()), k);
  for (std::size_t i = 0; i < values.size(); ++i)
    b.put({1, static_cast<int>(i) + 1}, s.cards.mint(encode(values[i], k), CardRole::Grid));
  return b;
}

}  // namespace

TEST(Setup, SampleBoard) {
  Session s(1);
  const Board b = setup(sample_puzzle(), {sample_solution(), Honesty::Honest}, s);
  EXPECT_EQ(b.k(), 6u);
  for (int r = 1; r <= 7; ++r)
    for (int c = 1; c <= 7; ++c) EXPECT_EQ(b.cards({r, c}).size(), 6u);
  EXPECT_EQ(CardInspector::faces(b.cards({1, 1})), encode(2, 6));
  EXPECT_TRUE(b.placed_publicly({2, 3}));
  EXPECT_FALSE(b.placed_publicly({1, 1}));
  EXPECT_EQ(s.cards.grid_cards(), 294u);
}

TEST(Setup, OneByOne) {
  Session s(1);
  const Board b = setup(parse_puzzle("1 1\nA\n.\n"), {Assignment(1, 1, {1})}, s);
  EXPECT_EQ(to_string(CardInspector::faces(b.cards({1, 1}))), "H");
}

TEST(Setup, Errors) {
  Assignment bad = sample_solution();
  bad.set({1, 1}, 7);
  Session s(1);
  try {
    setup(sample_puzzle(), {bad, Honesty::Arbitrary}, s);
    FAIL();
  } catch (const CommitmentError& e) {
    EXPECT_EQ(e.cell(), (Cell{1, 1}));
  }
  bad.set({1, 1}, 1);
  EXPECT_THROW(setup(sample_puzzle(), {bad, Honesty::Honest}, s), std::invalid_argument);
  EXPECT_THROW(setup(sample_puzzle(), {Assignment(1, 1, {1}), Honesty::Arbitrary}, s),
               std::invalid_argument);
  // Fixed cells ignore the prover's value.
  Assignment wrong_fixed = sample_solution();
  wrong_fixed.set({2, 3}, 5);
  Session t(1);
  const Board b = setup(sample_puzzle(), {wrong_fixed, Honesty::Arbitrary}, t);
  EXPECT_EQ(decode(CardInspector::faces(b.cards({2, 3}))), 2u);
}

TEST(Uniqueness, Examples) {
  Session s(4);
  const auto none = sequences({1, 3, 0}, 4);
  EXPECT_TRUE(uniqueness_verify(encode(2, 4), none, s).accepted);
  const auto dup = sequences({2}, 4);
  const Verdict v = uniqueness_verify(encode(2, 4), dup, s);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, RejectReason::DistanceHeartFound);
  const auto zeros = sequences({0, 0, 0, 0, 0}, 4);
  EXPECT_TRUE(uniqueness_verify(encode(1, 4), zeros, s).accepted);
  EXPECT_EQ(s.cards.live_auxiliary(), 0u);
  const auto malformed = uniqueness_verify(encode(0, 4), none, s);
  EXPECT_EQ(malformed.reason, RejectReason::MalformedCommitment);
}

TEST(Uniqueness, AgreesWithDecode) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource pick(seed);
    const std::size_t b = 5;
    const std::size_t x = pick.uniform(b) + 1;
    std::vector<Sequence> others;
    bool clash = false;
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t v = pick.uniform(b + 1);
      clash = clash || v == x;
      others.push_back(encode(v, b));
    }
    Session s(seed);
    EXPECT_EQ(uniqueness_verify(encode(x, b), others, s).accepted, !clash);
  }
}

TEST(Distance, SampleEveryCheckAccepts) {
  Session s(11);
  Board b = setup(sample_puzzle(), {sample_solution()}, s);
  for (int r = 1; r <= 7; ++r)
    for (int c = 1; c <= 7; ++c)
      for (Direction d : kDirections) {
        const auto before = snapshot(b);
        const Verdict v = verify_distance_direction(b, {r, c}, d, s);
        ASSERT_TRUE(v.accepted) << r << "," << c << " " << to_string(d);
        ASSERT_EQ(snapshot(b), before);
        ASSERT_EQ(s.cards.live_auxiliary(), 0u);
      }
}

TEST(Distance, AdjacentOnesRejected) {
  const Puzzle p = testsupport::single_room(1, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Session s(seed);
    Board b = setup(p, {Assignment(1, 2, {1, 1}), Honesty::Arbitrary}, s);
    const Verdict v = verify_distance_direction(b, {1, 1}, Direction::Right, s);
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.reason, RejectReason::DistanceHeartFound);
    EXPECT_EQ(v.describe(), "DistanceHeartFound@(1,1):right");
  }
}

TEST(Distance, EdgePadding) {
  Session s(2);
  const Puzzle p = testsupport::single_room(1, 2);
  Board b = setup(p, {Assignment(1, 2, {2, 1})}, s);
  std::vector<DistanceCheckRecord> probe;
  ProtocolOptions opts;
  opts.probe = &probe;
  EXPECT_TRUE(verify_distance_direction(b, {1, 2}, Direction::Right, s, opts).accepted);
  ASSERT_EQ(probe.size(), 1u);
  EXPECT_EQ(probe[0].committed_value, 1u);
  // Both A_i are padding: fresh ids, not grid cards.
  for (const auto& ids : probe[0].a)
    for (CardId id : ids) EXPECT_GT(id, 4u);
  EXPECT_EQ(probe[0].live_aux_at_exit, 0u);
  EXPECT_EQ(s.cards.peak_auxiliary(), 2u * 2 * 2 + 4 * 2 - 2);
}

TEST(Distance, Alignment) {
  Session s(5);
  Board b = setup(sample_puzzle(), {sample_solution()}, s);
  std::vector<DistanceCheckRecord> probe;
  ProtocolOptions opts;
  opts.probe = &probe;
  ASSERT_TRUE(verify_distance_phase(b, s, opts).accepted);
  ASSERT_EQ(probe.size(), 196u);
  for (const auto& rec : probe) {
    const std::size_t x = rec.committed_value;
    ASSERT_GE(x, 1u);
    EXPECT_EQ(rec.rightmost_after_step4, rec.a[x - 1]);
    std::vector<std::vector<CardId>> expect(rec.a.begin(), rec.a.begin() + x);
    expect.insert(expect.end(), rec.b.begin(), rec.b.begin() + (6 - x));
    EXPECT_EQ(rec.selected, expect);
  }
}

TEST(Distance, PhaseCounts) {
  Session s(1);
  Board b = setup(sample_puzzle(), {sample_solution()}, s);
  ASSERT_TRUE(verify_distance_phase(b, s).accepted);
  std::size_t entered = 0;
  for (const auto& e : s.transcript.events())
    if (auto* m = std::get_if<SubprotocolMark>(&e); m && m->enter) ++entered;
  EXPECT_EQ(entered, 196u);

  Session one(1);
  Board tiny = setup(parse_puzzle("1 1\nA\n.\n"), {Assignment(1, 1, {1})}, one);
  ASSERT_TRUE(verify_distance_phase(tiny, one).accepted);
  entered = 0;
  for (const auto& e : one.transcript.events())
    if (auto* m = std::get_if<SubprotocolMark>(&e); m && m->enter) ++entered;
  EXPECT_EQ(entered, 4u);

  Session d(1);
  Board dedupe = setup(sample_puzzle(), {sample_solution()}, d);
  ProtocolOptions opts;
  opts.dedupe_directions = true;
  ASSERT_TRUE(verify_distance_phase(dedupe, d, opts).accepted);
  entered = 0;
  for (const auto& e : d.transcript.events())
    if (auto* m = std::get_if<SubprotocolMark>(&e); m && m->enter) ++entered;
  EXPECT_EQ(entered, 98u);
}

TEST(Distance, MutationRejectedAtFirstPair) {
  Assignment a = sample_solution();
  a.set({1, 1}, 1);
  const RunResult r = run_protocol(sample_puzzle(), {a, Honesty::Arbitrary}, 3);
  EXPECT_FALSE(r.verdict.accepted);
  EXPECT_EQ(r.verdict.describe(), "DistanceHeartFound@(1,1):right");
}

TEST(Room, Examples) {
  const Puzzle p = testsupport::single_room(1, 3);
  {
    Session s(1);
    Board b = room_board(s, {2, 1, 3}, 6);
    EXPECT_TRUE(verify_room(b, p, 0, s).accepted);
    const auto* all = std::get_if<RevealAll>(&s.transcript.events()[2]);
    ASSERT_NE(all, nullptr);
    std::vector<std::size_t> seen;
    for (const auto& col : all->columns) seen.push_back(*decode(col));
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, (std::vector<std::size_t>{1, 2, 3}));
  }
  {
    Session s(1);
    Board b = room_board(s, {1, 2, 2}, 6);
    const Verdict v = verify_room(b, p, 0, s);
    EXPECT_EQ(v.reason, RejectReason::RoomMultisetMismatch);
    EXPECT_EQ(v.describe(), "RoomMultisetMismatch@R1");
  }
  {
    Session s(1);
    Board b = room_board(s, {1}, 6);
    EXPECT_TRUE(verify_room(b, testsupport::single_room(1, 1), 0, s).accepted);
  }
}

TEST(Run, CompletenessAndDeterminism) {
  const Puzzle p = sample_puzzle();
  const Assignment a = sample_solution();
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_TRUE(run_protocol(p, {a}, seed).verdict.accepted);
  EXPECT_EQ(run_protocol(p, {a}, 42).transcript.serialize(),
            run_protocol(p, {a}, 42).transcript.serialize());
  EXPECT_NE(run_protocol(p, {a}, 42).transcript.serialize(),
            run_protocol(p, {a}, 43).transcript.serialize());
}

TEST(Run, MalformedCommitment) {
  Assignment a = sample_solution();
  a.set({1, 1}, 7);
  const RunResult r = run_protocol(sample_puzzle(), {a, Honesty::Arbitrary}, 1);
  EXPECT_EQ(r.verdict.reason, RejectReason::MalformedCommitment);
  EXPECT_EQ(r.verdict.cell, (Cell{1, 1}));
  a.set({1, 1}, 0);
  EXPECT_EQ(run_protocol(sample_puzzle(), {a, Honesty::Arbitrary}, 1).verdict.reason,
            RejectReason::MalformedCommitment);
}

TEST(Cards, ClosedForm) {
  const CardStats s = card_stats(sample_puzzle());
  EXPECT_EQ(s.k, 6u);
  EXPECT_EQ(s.grid_cards, 294u);
  EXPECT_EQ(s.peak_aux_cards, 94u);
  EXPECT_EQ(s.fixed_rows, 18u);
  EXPECT_EQ(s.appended_block, 40u);
  EXPECT_EQ(s.edge_padding, 36u);
  EXPECT_EQ(s.total, 388u);
  EXPECT_EQ(card_stats(parse_puzzle("1 1\nA\n.\n")).total, 5u);
  EXPECT_EQ(card_stats(testsupport::single_room(2, 3)).total, 130u);
}

TEST(Cards, MeasuredPeak) {
  const RunResult r = run_protocol(sample_puzzle(), {sample_solution()}, 8);
  EXPECT_EQ(r.cards.grid_cards, 294u);
  EXPECT_EQ(r.cards.peak_aux_cards, 94u);
  EXPECT_EQ(r.cards.total, 388u);
  const RunResult one = run_protocol(parse_puzzle("1 1\nA\n.\n"), {Assignment(1, 1, {1})}, 8);
  EXPECT_EQ(one.cards.total, 5u);
  for (auto [r2, c2] : std::vector<std::pair<int, int>>{{2, 3}, {1, 4}, {3, 3}}) {
    const Puzzle p = testsupport::single_room(r2, c2);
    const auto sol = solve(p, 1);
    if (sol.empty()) continue;
    EXPECT_EQ(run_protocol(p, {sol[0]}, 1).cards.total, card_stats(p).total) << r2 << "x" << c2;
  }
}

TEST(Run, OracleEquivalenceSmall) {
  for (auto [r, c] : std::vector<std::pair<int, int>>{
           {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {1, 4}, {2, 2}, {1, 5}, {1, 6}, {2, 3}, {3, 2}}) {
    for (const Puzzle& p : testsupport::all_partitions(r, c)) {
      std::uint64_t seed = 0;
      testsupport::for_each_assignment(r, c, max_room_size(p), [&](const Assignment& a) {
        const bool valid = validate(p, a).empty();
        const Verdict v = run_protocol(p, {a, Honesty::Arbitrary}, seed++).verdict;
        ASSERT_EQ(v.accepted, valid) << r << "x" << c << " " << format_assignment(a);
      });
    }
  }
}
