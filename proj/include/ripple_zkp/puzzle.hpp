#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ripple {

/// Grid coordinate, 1-based. Row 1 is the topmost row, column 1 the leftmost.
struct Cell {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& cell);

/// Index of a room inside a Puzzle, assigned in row-major order of first appearance.
using RoomId = int;

/// Raised by the text readers. Line and column are 1-based; 0 means "not tied to a position".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A Ripple Effect instance: an m x n grid partitioned into connected rooms, with
/// some fixed cells. Immutable after construction.
class Puzzle {
 public:
  /// room_of and fixed are row-major with rows*cols entries; fixed uses 0 for an
  /// empty cell. Throws std::invalid_argument if any invariant fails (unknown
  /// room index, disconnected room, fixed value outside 1..room size).
  static Puzzle create(int rows, int cols, std::vector<RoomId> room_of,
                       std::vector<int> fixed);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int cell_count() const noexcept { return rows_ * cols_; }
  bool contains(const Cell& cell) const noexcept {
    return cell.row >= 1 && cell.row <= rows_ && cell.col >= 1 && cell.col <= cols_;
  }

  RoomId room_of(const Cell& cell) const { return room_of_[index(cell)]; }
  int room_count() const noexcept { return static_cast<int>(rooms_.size()); }
  int room_size(RoomId room) const { return static_cast<int>(rooms_.at(room).size()); }
  /// Cells of a room in row-major order.
  const std::vector<Cell>& room_cells(RoomId room) const { return rooms_.at(room); }

  std::optional<int> fixed(const Cell& cell) const;

  std::size_t index(const Cell& cell) const {
    return static_cast<std::size_t>((cell.row - 1) * cols_ + (cell.col - 1));
  }
  Cell cell_at(std::size_t index) const {
    return Cell{static_cast<int>(index) / cols_ + 1, static_cast<int>(index) % cols_ + 1};
  }

 private:
  Puzzle() = default;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<RoomId> room_of_;
  std::vector<int> fixed_;
  std::vector<std::vector<Cell>> rooms_;
};

/// A total numbering of the grid. Values are not range-checked here.
class Assignment {
 public:
  Assignment() = default;
  Assignment(int rows, int cols, std::vector<int> values);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int at(const Cell& cell) const { return values_.at(index(cell)); }
  void set(const Cell& cell, int value) { values_.at(index(cell)) = value; }
  const std::vector<int>& values() const noexcept { return values_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t index(const Cell& cell) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> values_;
};

enum class ViolationKind { RoomContent, Distance, FixedMismatch };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<Cell> cells;
  std::string detail;
};

/// Reads the puzzle text format:
///   line 1           "m n"
///   next m lines     n room labels (equal labels = same room)
///   next m lines     n tokens, "." or a positive integer (fixed cell)
/// Blank lines and lines starting with '#' are skipped.
Puzzle parse_puzzle(std::string_view text);

/// Reads m lines of n whitespace-separated integers. The shape is taken from the
/// text itself; callers compare it with the puzzle.
Assignment parse_assignment(std::string_view text);

std::string format_assignment(const Assignment& assignment);

/// Direct rule check. Empty result iff the assignment solves the puzzle.
std::vector<Violation> validate(const Puzzle& puzzle, const Assignment& assignment);

/// Complete backtracking search. Cells are filled in row-major order with values
/// tried in ascending order, so results come out in lexicographic order.
std::vector<Assignment> solve(const Puzzle& puzzle, std::size_t limit);

int max_room_size(const Puzzle& puzzle);

}  // namespace ripple
