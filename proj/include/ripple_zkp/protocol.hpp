#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripple_zkp/cards.hpp"
#include "ripple_zkp/engine.hpp"
#include "ripple_zkp/puzzle.hpp"

namespace ripple {

enum class Honesty { Honest, Arbitrary };

/// The prover's claimed numbering. An honest prover's table must solve the puzzle;
/// an arbitrary prover may commit any table.
struct ProverInput {
  Assignment assignment;
  Honesty honesty = Honesty::Honest;
};

enum class Direction { Right, Left, Up, Down };

std::string_view to_string(Direction d);

enum class RejectReason { None, DistanceHeartFound, RoomMultisetMismatch, MalformedCommitment };

std::string_view to_string(RejectReason r);

struct Verdict {
  bool accepted = true;
  RejectReason reason = RejectReason::None;
  std::optional<Cell> cell;
  std::optional<Direction> direction;
  std::optional<RoomId> room;

  static Verdict accept() { return {}; }
  static Verdict reject(RejectReason why) { return {false, why, {}, {}, {}}; }

  /// Single token, no spaces, e.g. "DistanceHeartFound@(2,3):right".
  std::string describe() const;
};

/// Thrown by setup when a value cannot be encoded in k cards.
class CommitmentError : public std::runtime_error {
 public:
  CommitmentError(const std::string& what, Cell cell) : std::runtime_error(what), cell_(cell) {}
  Cell cell() const noexcept { return cell_; }

 private:
  Cell cell_;
};

/// Face-down E_k(x) sequences, one per grid cell.
class Board {
 public:
  Board(int rows, int cols, std::size_t k);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t k() const noexcept { return k_; }
  bool contains(const Cell& c) const noexcept {
    return c.row >= 1 && c.row <= rows_ && c.col >= 1 && c.col <= cols_;
  }

  const std::vector<Card>& cards(const Cell& c) const { return cells_.at(index(c)); }
  bool placed_publicly(const Cell& c) const { return public_.at(index(c)); }

  /// Removes the sequence from the cell. The cell stays empty until put() is called.
  std::vector<Card> take(const Cell& c);
  void put(const Cell& c, std::vector<Card> cards, bool publicly = false);
  bool occupied(const Cell& c) const { return !cells_.at(index(c)).empty(); }

 private:
  std::size_t index(const Cell& c) const;

  int rows_;
  int cols_;
  std::size_t k_;
  std::vector<std::vector<Card>> cells_;
  std::vector<bool> public_;
};

/// Card accounting. grid_cards = k*m*n; peak_aux_cards is either the closed form
/// (card_stats) or the measured peak (run_protocol).
struct CardStats {
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t grid_cards = 0;
  std::size_t peak_aux_cards = 0;
  std::size_t total = 0;
  // Closed-form breakdown of the auxiliary peak.
  std::size_t fixed_rows = 0;      // Rows 1, 3, 4 of the (k+4) x k matrix
  std::size_t appended_block = 0;  // the k-1 appended columns of height k+2
  std::size_t edge_padding = 0;    // k copies of E_k(0) when a check starts at the edge
};

CardStats card_stats(const Puzzle& puzzle);

/// Audit-side view of one distance check, captured through CardInspector ids.
/// Used by tests to assert the alignment claims after steps 4 and 10.
struct DistanceCheckRecord {
  Cell cell;
  Direction direction = Direction::Right;
  std::size_t committed_value = 0;          // decode(A_0), read privately
  std::vector<std::vector<CardId>> a;       // A_1..A_k
  std::vector<std::vector<CardId>> b;       // B_1..B_{k-1}
  std::vector<CardId> rightmost_after_step4;  // Rows 5..k+4 of Column k after step 4
  std::vector<std::vector<CardId>> selected;  // S_1..S_k at step 10
  std::size_t live_aux_at_exit = 0;
};

struct ProtocolOptions {
  /// Skip the left and up checks. Rule 2 is symmetric so right/down cover every pair.
  bool dedupe_directions = false;
  /// When set, every distance check appends a record here.
  std::vector<DistanceCheckRecord>* probe = nullptr;
};

/// Places E_k(x) on every cell: fixed cells get the puzzle's value (publicly), the
/// rest get the prover's value. Throws CommitmentError for a value above k, and
/// std::invalid_argument if the assignment's shape differs from the grid or an
/// honest prover's table is not a solution.
Board setup(const Puzzle& puzzle, const ProverInput& prover, Session& session);

/// Runs the uniqueness check on a prepared matrix: Row 1 = E_b(1), Row 2 = S_0,
/// Rows 3.. = S_1..S_a. Leaves the matrix shuffled and face-down. `step` prefixes
/// the reveal labels ("<step>.uniq.3", "<step>.uniq.4").
Verdict verify_uniqueness(Matrix& matrix, Session& session, std::string_view step);

/// Builds the matrix from plain sequences (minting auxiliary cards) and runs
/// verify_uniqueness. All sequences must share one length.
Verdict uniqueness_verify(const Sequence& s0, std::span<const Sequence> others,
                          Session& session);

/// The 16-step check that the value x on `cell` does not reappear among the first x
/// cells in `direction`. On acceptance every sequence is back on its cell.
Verdict verify_distance_direction(Board& board, const Cell& cell, Direction direction,
                                  Session& session, const ProtocolOptions& options = {});

/// All cells in row-major order, directions right, left, up, down. Stops at the
/// first rejection.
Verdict verify_distance_phase(Board& board, Session& session,
                              const ProtocolOptions& options = {});

/// Reveals the room's sequences after a pile-scramble shuffle. Consumes the cards.
Verdict verify_room(Board& board, const Puzzle& puzzle, RoomId room, Session& session);

/// setup, distance phase, room phase. Appends a final verdict event.
Verdict run_protocol(const Puzzle& puzzle, const ProverInput& prover, Session& session,
                     const ProtocolOptions& options = {});

struct RunResult {
  Verdict verdict;
  Transcript transcript;
  CardStats cards;
  AuditLog audit;
};

RunResult run_protocol(const Puzzle& puzzle, const ProverInput& prover, std::uint64_t seed,
                       const ProtocolOptions& options = {});

}  // namespace ripple
