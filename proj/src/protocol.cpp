#include "ripple_zkp/protocol.hpp"

#include <algorithm>
#include <numeric>

namespace ripple {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Right: return "right";
    case Direction::Left: return "left";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "None";
    case RejectReason::DistanceHeartFound: return "DistanceHeartFound";
    case RejectReason::RoomMultisetMismatch: return "RoomMultisetMismatch";
    case RejectReason::MalformedCommitment: return "MalformedCommitment";
  }
  return "?";
}

std::string Verdict::describe() const {
  std::string out(to_string(reason));
  if (cell) {
    out += "@" + to_string(*cell);
    if (direction) out += ":" + std::string(to_string(*direction));
  } else if (room) {
    out += "@R" + std::to_string(*room + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Board

Board::Board(int rows, int cols, std::size_t k)
    : rows_(rows),
      cols_(cols),
      k_(k),
      cells_(static_cast<std::size_t>(rows * cols)),
      public_(static_cast<std::size_t>(rows * cols), false) {}

std::size_t Board::index(const Cell& c) const {
  if (!contains(c)) throw std::out_of_range("cell " + to_string(c) + " is off the board");
  return static_cast<std::size_t>((c.row - 1) * cols_ + (c.col - 1));
}

std::vector<Card> Board::take(const Cell& c) {
  auto& slot = cells_.at(index(c));
  if (slot.empty()) throw std::logic_error("cell " + to_string(c) + " is already empty");
  return std::exchange(slot, {});
}

void Board::put(const Cell& c, std::vector<Card> cards, bool publicly) {
  if (cards.size() != k_) throw std::invalid_argument("a cell holds exactly k cards");
  auto& slot = cells_.at(index(c));
  if (!slot.empty()) throw std::logic_error("cell " + to_string(c) + " is already occupied");
  slot = std::move(cards);
  if (publicly) public_[index(c)] = true;
}

// ---------------------------------------------------------------------------
// Card accounting

CardStats card_stats(const Puzzle& puzzle) {
  CardStats s;
  s.k = static_cast<std::size_t>(max_room_size(puzzle));
  s.m = static_cast<std::size_t>(puzzle.rows());
  s.n = static_cast<std::size_t>(puzzle.cols());
  s.grid_cards = s.k * s.m * s.n;
  s.fixed_rows = 3 * s.k;
  s.appended_block = (s.k - 1) * (s.k + 2);
  s.edge_padding = s.k * s.k;
  s.peak_aux_cards = s.fixed_rows + s.appended_block + s.edge_padding;
  s.total = s.grid_cards + s.peak_aux_cards;
  return s;
}

// ---------------------------------------------------------------------------
// Setup

Board setup(const Puzzle& puzzle, const ProverInput& prover, Session& session) {
  const Assignment& asg = prover.assignment;
  if (asg.rows() != puzzle.rows() || asg.cols() != puzzle.cols())
    throw std::invalid_argument("assignment shape differs from the puzzle grid");
  if (prover.honesty == Honesty::Honest && !validate(puzzle, asg).empty())
    throw std::invalid_argument("an honest prover must hold a solution");

  const auto k = static_cast<std::size_t>(max_room_size(puzzle));
  Board board(puzzle.rows(), puzzle.cols(), k);
  for (int r = 1; r <= puzzle.rows(); ++r) {
    for (int c = 1; c <= puzzle.cols(); ++c) {
      const Cell cell{r, c};
      const auto fixed = puzzle.fixed(cell);
      const int value = fixed ? *fixed : asg.at(cell);
      if (value < 0 || static_cast<std::size_t>(value) > k)
        throw CommitmentError("value " + std::to_string(value) + " at " + to_string(cell) +
                                  " cannot be encoded in " + std::to_string(k) + " cards",
                              cell);
      board.put(cell, session.cards.mint(encode(static_cast<std::size_t>(value), k), CardRole::Grid),
                fixed.has_value());
    }
  }
  return board;
}

// ---------------------------------------------------------------------------
// Uniqueness verification

Verdict verify_uniqueness(Matrix& matrix, Session& session, std::string_view step) {
  Transcript& t = session.transcript;
  const std::string prefix(step);
  pile_shift_shuffle(matrix, session);
  const auto j = single_heart(reveal_row(matrix, 2, t, prefix + ".uniq.3"));
  if (!j) {
    flip_down(matrix);
    return Verdict::reject(RejectReason::MalformedCommitment);
  }
  const auto below = reveal_segment(matrix, *j, 3, matrix.rows(), t, prefix + ".uniq.4");
  flip_down(matrix);
  if (std::find(below.begin(), below.end(), Suit::Heart) != below.end())
    return Verdict::reject(RejectReason::DistanceHeartFound);
  return Verdict::accept();
}

Verdict uniqueness_verify(const Sequence& s0, std::span<const Sequence> others,
                          Session& session) {
  const std::size_t b = s0.size();
  if (b == 0) throw std::invalid_argument("sequences must be non-empty");
  for (const auto& s : others)
    if (s.size() != b) throw std::invalid_argument("all sequences must have the same length");

  std::vector<std::vector<Card>> rows;
  rows.push_back(session.cards.mint(encode(1, b), CardRole::Auxiliary));
  rows.push_back(session.cards.mint(s0, CardRole::Auxiliary));
  for (const auto& s : others) rows.push_back(session.cards.mint(s, CardRole::Auxiliary));
  Matrix u = Matrix::from_rows("U", rows);

  session.transcript.append(SubprotocolMark{"uniqueness", "rows=" + std::to_string(u.rows()), true});
  const Verdict v = verify_uniqueness(u, session, "uniq");
  session.transcript.append(SubprotocolMark{"uniqueness", "rows=" + std::to_string(u.rows()), false});
  session.cards.retire_auxiliary(u.rows() * u.cols());
  return v;
}

// ---------------------------------------------------------------------------
// Distance condition

namespace {

Cell neighbour(const Cell& c, Direction d, int i) {
  switch (d) {
    case Direction::Right: return {c.row, c.col + i};
    case Direction::Left: return {c.row, c.col - i};
    case Direction::Up: return {c.row - i, c.col};
    case Direction::Down: return {c.row + i, c.col};
  }
  return c;
}

std::vector<std::vector<CardId>> ids_of(const std::vector<std::vector<Card>>& seqs) {
  std::vector<std::vector<CardId>> out;
  out.reserve(seqs.size());
  for (const auto& s : seqs) out.push_back(CardInspector::ids(s));
  return out;
}

Verdict located(Verdict v, const Cell& cell, Direction d) {
  v.cell = cell;
  v.direction = d;
  return v;
}

}  // namespace

Verdict verify_distance_direction(Board& board, const Cell& cell, Direction direction,
                                  Session& session, const ProtocolOptions& options) {
  Transcript& t = session.transcript;
  CardSupply& supply = session.cards;
  const std::size_t k = board.k();
  const std::size_t wide = 2 * k - 1;
  const auto ks = static_cast<long>(k);
  const std::string detail = std::to_string(cell.row) + "," + std::to_string(cell.col) + ":" +
                             std::string(to_string(direction));
  t.append(SubprotocolMark{"distance", detail, true});
  const auto finish = [&](Verdict v) {
    t.append(SubprotocolMark{"distance", detail, false});
    return v.accepted ? v : located(v, cell, direction);
  };

  DistanceCheckRecord* rec = nullptr;
  if (options.probe) {
    options.probe->push_back({});
    rec = &options.probe->back();
    rec->cell = cell;
    rec->direction = direction;
  }

  // A_0 from c; A_1..A_k from the cells in `direction`, padded with public E_k(0).
  std::vector<Card> a0 = board.take(cell);
  std::vector<std::vector<Card>> a(k);
  std::vector<std::optional<Cell>> home(k);
  std::size_t padding = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Cell target = neighbour(cell, direction, static_cast<int>(i + 1));
    if (board.contains(target)) {
      a[i] = board.take(target);
      home[i] = target;
    } else {
      a[i] = supply.mint(encode(0, k), CardRole::Auxiliary);
      ++padding;
    }
  }
  if (rec) {
    rec->committed_value = decode(CardInspector::faces(a0)).value_or(0);
    rec->a = ids_of(a);
  }

  // Step 1: Rows E_k(1), A_0, E_k(1), E_k(0), then A_1..A_k as columns.
  const auto row1 = supply.mint(encode(1, k), CardRole::Auxiliary);
  const auto row3 = supply.mint(encode(1, k), CardRole::Auxiliary);
  const auto row4 = supply.mint(encode(0, k), CardRole::Auxiliary);
  std::vector<std::vector<Card>> columns(k);
  for (std::size_t j = 0; j < k; ++j) {
    columns[j].reserve(k + 4);
    columns[j] = {row1[j], a0[j], row3[j], row4[j]};
    columns[j].insert(columns[j].end(), a[j].begin(), a[j].end());
  }
  Matrix m("M", std::move(columns));

  // Steps 2-4: align A_x with the rightmost column.
  pile_shift_shuffle(m, session);
  const auto j1 = single_heart(reveal_row(m, 2, t, "dist.3"));
  flip_down(m);
  if (!j1) return finish(Verdict::reject(RejectReason::MalformedCommitment));
  shift_columns(m, ks - static_cast<long>(*j1), t);
  if (rec) rec->rightmost_after_step4 = CardInspector::ids(m.column(k, 5, k + 4));

  // Steps 5-6.
  Matrix m1 = m.split_top(2, "M1");
  Matrix& m2 = m;
  m2.relabel("M2");
  if (!rearrangement(m1, session, "dist.6"))
    return finish(Verdict::reject(RejectReason::MalformedCommitment));

  // Step 7: append E_{k-1}(0) / E_{k-1}(1) / B_1..B_{k-1}.
  std::vector<std::vector<Card>> appended;
  for (std::size_t j = 1; j < k; ++j) {
    Sequence faces(k + 2, Suit::Club);
    if (j == 1) faces[1] = Suit::Heart;
    appended.push_back(supply.mint(faces, CardRole::Auxiliary));
  }
  if (rec) {
    for (const auto& col : appended)
      rec->b.push_back(CardInspector::ids(std::span<const Card>(col).subspan(2)));
  }
  m2.append_columns(std::move(appended));

  // Steps 8-9.
  pile_shift_shuffle(m2, session);
  const auto j2 = single_heart(reveal_row(m2, 1, t, "dist.9"));
  flip_down(m2);
  if (!j2) return finish(Verdict::reject(RejectReason::MalformedCommitment));

  // Step 10: S_i is Column j2+i-1 (mod 2k-1), Rows 3..k+2.
  const auto column_of = [&](std::size_t i) { return (*j2 - 1 + i - 1) % wide + 1; };
  std::vector<std::vector<Card>> n_rows;
  n_rows.reserve(k + 2);
  n_rows.push_back(m1.row(1));
  n_rows.push_back(m1.row(2));
  for (std::size_t i = 1; i <= k; ++i) n_rows.push_back(m2.column(column_of(i), 3, k + 2));
  if (rec) {
    for (std::size_t i = 2; i < n_rows.size(); ++i)
      rec->selected.push_back(CardInspector::ids(n_rows[i]));
  }
  Matrix n = Matrix::from_rows("N", n_rows);

  // Step 11.
  const Verdict unique = verify_uniqueness(n, session, "dist.11");
  if (!unique.accepted) return finish(unique);

  // Step 12: restore N, return A_0 to c and S_i to M_2.
  if (!rearrangement(n, session, "dist.12"))
    return finish(Verdict::reject(RejectReason::MalformedCommitment));
  board.put(cell, n.row(2), board.placed_publicly(cell));
  for (std::size_t i = 1; i <= k; ++i) m2.set_column(column_of(i), 3, n.row(i + 2));

  // Steps 13-15: bring B_1 to Column k+1 and drop the appended block.
  pile_shift_shuffle(m2, session);
  const auto row2 = reveal_row(m2, 2, t, "dist.14");
  flip_down(m2);
  // For k = 1 nothing was appended and Row 2 is a lone public Club.
  const auto j3 = k == 1 ? std::optional<std::size_t>(1) : single_heart(row2);
  if (!j3) return finish(Verdict::reject(RejectReason::MalformedCommitment));
  shift_columns(m2, ks + 1 - static_cast<long>(*j3), t);
  m2.remove_columns(k + 1, wide);
  supply.retire_auxiliary((k - 1) * (k + 2));

  // Step 16.
  if (!rearrangement(m2, session, "dist.16"))
    return finish(Verdict::reject(RejectReason::MalformedCommitment));
  for (std::size_t i = 0; i < k; ++i) {
    if (home[i]) board.put(*home[i], m2.column(i + 1, 3, k + 2), board.placed_publicly(*home[i]));
  }
  // Padding, Rows 1-2 of M_2, and the E_k(1) that travelled through N.
  supply.retire_auxiliary(padding * k + 2 * k + k);
  if (rec) rec->live_aux_at_exit = supply.live_auxiliary();
  return finish(Verdict::accept());
}

Verdict verify_distance_phase(Board& board, Session& session, const ProtocolOptions& options) {
  static constexpr Direction kAll[] = {Direction::Right, Direction::Left, Direction::Up,
                                       Direction::Down};
  for (int r = 1; r <= board.rows(); ++r) {
    for (int c = 1; c <= board.cols(); ++c) {
      for (Direction d : kAll) {
        if (options.dedupe_directions && (d == Direction::Left || d == Direction::Up)) continue;
        const Verdict v = verify_distance_direction(board, {r, c}, d, session, options);
        if (!v.accepted) return v;
      }
    }
  }
  return Verdict::accept();
}

// ---------------------------------------------------------------------------
// Room condition

Verdict verify_room(Board& board, const Puzzle& puzzle, RoomId room, Session& session) {
  Transcript& t = session.transcript;
  const auto& cells = puzzle.room_cells(room);
  const std::size_t s = cells.size();
  const std::string detail = "R" + std::to_string(room + 1) + ":size=" + std::to_string(s);
  t.append(SubprotocolMark{"room", detail, true});

  std::vector<std::vector<Card>> columns;
  columns.reserve(s);
  for (const Cell& c : cells) columns.push_back(board.take(c));
  Matrix m("R" + std::to_string(room + 1), std::move(columns));

  pile_scramble_shuffle(m, session);
  const auto revealed = reveal_all(m, t, "room.3");
  t.append(SubprotocolMark{"room", detail, false});

  std::vector<std::size_t> values;
  values.reserve(s);
  Verdict v = Verdict::accept();
  for (const auto& col : revealed) {
    const auto x = decode(col);
    if (!x) {
      v = Verdict::reject(RejectReason::MalformedCommitment);
      break;
    }
    values.push_back(*x);
  }
  if (v.accepted) {
    std::sort(values.begin(), values.end());
    std::vector<std::size_t> expected(s);
    std::iota(expected.begin(), expected.end(), std::size_t{1});
    if (values != expected) v = Verdict::reject(RejectReason::RoomMultisetMismatch);
  }
  if (!v.accepted) v.room = room;
  return v;
}

// ---------------------------------------------------------------------------
// Orchestration

Verdict run_protocol(const Puzzle& puzzle, const ProverInput& prover, Session& session,
                     const ProtocolOptions& options) {
  const auto conclude = [&](Verdict v) {
    session.transcript.append(VerdictEvent{v.accepted, v.describe()});
    return v;
  };

  std::optional<Board> board;
  try {
    board.emplace(setup(puzzle, prover, session));
  } catch (const CommitmentError& e) {
    Verdict v = Verdict::reject(RejectReason::MalformedCommitment);
    v.cell = e.cell();
    return conclude(v);
  }

  if (Verdict v = verify_distance_phase(*board, session, options); !v.accepted)
    return conclude(v);
  for (RoomId room = 0; room < puzzle.room_count(); ++room) {
    if (Verdict v = verify_room(*board, puzzle, room, session); !v.accepted) return conclude(v);
  }
  return conclude(Verdict::accept());
}

RunResult run_protocol(const Puzzle& puzzle, const ProverInput& prover, std::uint64_t seed,
                       const ProtocolOptions& options) {
  Session session(seed);
  const Verdict v = run_protocol(puzzle, prover, session, options);
  CardStats stats = card_stats(puzzle);
  stats.grid_cards = session.cards.grid_cards();
  stats.peak_aux_cards = session.cards.peak_auxiliary();
  stats.total = stats.grid_cards + stats.peak_aux_cards;
  return {v, std::move(session.transcript), stats, std::move(session.audit)};
}

}  // namespace ripple
