#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ripple_zkp/cards.hpp"
#include "ripple_zkp/transcript.hpp"

namespace ripple {

/// Seeded source for the trusted shuffles. Bounded draws use rejection sampling on
/// the raw mt19937_64 stream so a seed reproduces the same run on any toolchain.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n). n must be positive.
  std::size_t uniform(std::size_t n);
  /// Uniform permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Hidden shuffle draws, kept apart from the transcript.
struct HiddenDraw {
  std::string matrix;
  ShuffleKind kind;
  std::vector<std::size_t> value;  // {r} for a pile shift, p for a scramble
};

struct AuditLog {
  bool enabled = true;
  std::vector<HiddenDraw> draws;
};

/// Everything one protocol run owns. Sessions share nothing.
struct Session {
  explicit Session(std::uint64_t seed) : rng(seed) {}

  RandomSource rng;
  Transcript transcript;
  AuditLog audit;
  CardSupply cards;
};

/// Face-down cards arranged in rows and columns, addressed 1-based as (row, column).
/// Storage is by column because shuffles move whole columns (piles).
class Matrix {
 public:
  /// Each inner vector is one column, top to bottom. All columns must have equal length.
  Matrix(std::string id, std::vector<std::vector<Card>> columns);
  /// Each inner vector is one row, left to right.
  static Matrix from_rows(std::string id, const std::vector<std::vector<Card>>& rows);

  const std::string& id() const noexcept { return id_; }
  void relabel(std::string id) { id_ = std::move(id); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  bool all_face_down() const noexcept { return face_up_count_ == 0; }

  const Card& at(std::size_t row, std::size_t col) const;
  std::vector<Card> row(std::size_t row) const;
  /// Rows first_row..last_row (inclusive) of one column.
  std::vector<Card> column(std::size_t col, std::size_t first_row, std::size_t last_row) const;
  std::vector<Card> column(std::size_t col) const { return column(col, 1, rows_); }

  /// Moves Column j to Column j + offset (mod cols). Negative offsets move left.
  void rotate(long offset);
  /// Moves Column j to Column p[j-1] + 1, i.e. p is a 0-based destination table.
  void permute(std::span<const std::size_t> destination);

  void set_column(std::size_t col, std::size_t first_row, std::span<const Card> cards);
  void append_columns(std::vector<std::vector<Card>> columns);
  /// Removes columns first..last (inclusive) and returns them.
  std::vector<std::vector<Card>> remove_columns(std::size_t first, std::size_t last);
  /// Splits off the top `count` rows as a new matrix; this keeps the rest.
  Matrix split_top(std::size_t count, std::string id);

  // Reveal primitives used by the free functions below.
  Sequence turn_up_row(std::size_t row);
  Sequence turn_up_segment(std::size_t col, std::size_t first_row, std::size_t last_row);
  std::vector<Sequence> turn_up_all();
  void turn_down_all();

 private:
  void require_face_down(std::string_view action) const;
  void mark_up(std::size_t row, std::size_t col);

  std::string id_;
  std::size_t rows_ = 0;
  std::vector<std::vector<Card>> columns_;
  std::vector<std::vector<bool>> face_up_;
  std::size_t face_up_count_ = 0;
};

/// Secret uniform cyclic shift. Returns the drawn r (for the audit side only).
std::size_t pile_shift_shuffle(Matrix& m, Session& session);
/// Secret uniform column permutation. Returns the destination table.
std::vector<std::size_t> pile_scramble_shuffle(Matrix& m, Session& session);

/// Public cyclic shift by an amount derived from revealed positions.
void shift_columns(Matrix& m, long offset, Transcript& t);

Sequence reveal_row(Matrix& m, std::size_t row, Transcript& t, std::string_view step);
Sequence reveal_segment(Matrix& m, std::size_t column, std::size_t first_row,
                        std::size_t last_row, Transcript& t, std::string_view step);
std::vector<Sequence> reveal_all(Matrix& m, Transcript& t, std::string_view step);

/// "Turn over all face-up cards."
void flip_down(Matrix& m);

/// Column of the single Heart, or nullopt when the row shows zero or several Hearts.
std::optional<std::size_t> single_heart(std::span<const Suit> faces);

/// Reverts a matrix whose Row 1 holds a rotated E_b(1) so that the Heart returns to
/// Column 1: shuffle, reveal Row 1, flip back, shift left by j-1. Returns nullopt
/// (and leaves the matrix face-down) when Row 1 does not show exactly one Heart.
std::optional<std::size_t> rearrangement(Matrix& m, Session& session, std::string_view context);

}  // namespace ripple
