#include "ripple_zkp/puzzle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace ripple {

std::string to_string(const Cell& cell) {
  return "(" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ")";
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + what
                                  : what),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Puzzle

namespace {

bool room_connected(const std::vector<Cell>& cells) {
  if (cells.empty()) return false;
  std::vector<bool> seen(cells.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Cell here = cells[stack.back()];
    stack.pop_back();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (seen[i]) continue;
      const int dr = std::abs(cells[i].row - here.row);
      const int dc = std::abs(cells[i].col - here.col);
      if (dr + dc == 1) {
        seen[i] = true;
        ++reached;
        stack.push_back(i);
      }
    }
  }
  return reached == cells.size();
}

}  // namespace

Puzzle Puzzle::create(int rows, int cols, std::vector<RoomId> room_of,
                      std::vector<int> fixed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (room_of.size() != count || fixed.size() != count)
    throw std::invalid_argument("room table and fixed table must cover every cell");

  Puzzle p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.room_of_ = std::move(room_of);
  p.fixed_ = std::move(fixed);

  const RoomId max_room = *std::max_element(p.room_of_.begin(), p.room_of_.end());
  if (*std::min_element(p.room_of_.begin(), p.room_of_.end()) < 0)
    throw std::invalid_argument("negative room index");
  p.rooms_.resize(static_cast<std::size_t>(max_room) + 1);
  for (std::size_t i = 0; i < count; ++i) p.rooms_[p.room_of_[i]].push_back(p.cell_at(i));

  for (std::size_t r = 0; r < p.rooms_.size(); ++r) {
    if (p.rooms_[r].empty())
      throw std::invalid_argument("room " + std::to_string(r) + " has no cells");
    if (!room_connected(p.rooms_[r]))
      throw std::invalid_argument("room " + std::to_string(r) + " is disconnected");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const int v = p.fixed_[i];
    if (v == 0) continue;
    const int size = static_cast<int>(p.rooms_[p.room_of_[i]].size());
    if (v < 0 || v > size)
      throw std::invalid_argument("fixed value " + std::to_string(v) + " at " +
                                  to_string(p.cell_at(i)) + " outside 1.." +
                                  std::to_string(size));
  }
  return p;
}

std::optional<int> Puzzle::fixed(const Cell& cell) const {
  const int v = fixed_.at(index(cell));
  if (v == 0) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(int rows, int cols, std::vector<int> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows < 1 || cols < 1 ||
      values_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw std::invalid_argument("assignment shape does not match its value count");
}

std::size_t Assignment::index(const Cell& cell) const {
  if (cell.row < 1 || cell.row > rows_ || cell.col < 1 || cell.col > cols_)
    throw std::out_of_range("cell " + to_string(cell) + " outside assignment");
  return static_cast<std::size_t>((cell.row - 1) * cols_ + (cell.col - 1));
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::RoomContent: return "RoomContent";
    case ViolationKind::Distance: return "Distance";
    case ViolationKind::FixedMismatch: return "FixedMismatch";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct Token {
  std::string_view text;
  int column;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

// Splits into non-blank, non-comment lines of whitespace tokens.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (line.tokens.empty() || line.tokens.front().text.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

int parse_int(const Token& tok, int line) {
  int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("expected an integer, found '" + std::string(tok.text) + "'", line,
                     tok.column);
  return value;
}

bool is_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Puzzle parse_puzzle(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty puzzle text", 0, 0);

  const Line& header = lines.front();
  if (header.tokens.size() != 2)
    throw ParseError("header must be 'rows cols'", header.number, 1);
  const int rows = parse_int(header.tokens[0], header.number);
  const int cols = parse_int(header.tokens[1], header.number);
  if (rows < 1) throw ParseError("row count must be positive", header.number, header.tokens[0].column);
  if (cols < 1) throw ParseError("column count must be positive", header.number, header.tokens[1].column);

  const auto needed = static_cast<std::size_t>(2 * rows + 1);
  if (lines.size() < needed) {
    const int at = lines.back().number;
    throw ParseError("expected " + std::to_string(rows) + " room lines and " +
                         std::to_string(rows) + " value lines",
                     at + 1, 1);
  }
  if (lines.size() > needed) {
    const Line& extra = lines[needed];
    throw ParseError("unexpected trailing content", extra.number, extra.tokens.front().column);
  }

  const auto check_width = [cols](const Line& line) {
    if (static_cast<int>(line.tokens.size()) != cols) {
      const int column = static_cast<int>(line.tokens.size()) > cols
                             ? line.tokens[static_cast<std::size_t>(cols)].column
                             : line.tokens.back().column;
      throw ParseError("ragged grid: expected " + std::to_string(cols) + " tokens, found " +
                           std::to_string(line.tokens.size()),
                       line.number, column);
    }
  };

  std::map<std::string, RoomId, std::less<>> labels;
  std::vector<std::string> label_names;
  std::vector<RoomId> room_of;
  std::vector<const Token*> first_token;
  room_of.reserve(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    const Line& line = lines[static_cast<std::size_t>(1 + r)];
    check_width(line);
    for (const Token& tok : line.tokens) {
      if (!is_label(tok.text))
        throw ParseError("room label must be alphanumeric: '" + std::string(tok.text) + "'",
                         line.number, tok.column);
      auto it = labels.find(tok.text);
      if (it == labels.end()) {
        it = labels.emplace(std::string(tok.text), static_cast<RoomId>(label_names.size())).first;
        label_names.emplace_back(tok.text);
      }
      room_of.push_back(it->second);
    }
  }

  std::vector<int> fixed;
  fixed.reserve(room_of.size());
  for (int r = 0; r < rows; ++r) {
    const Line& line = lines[static_cast<std::size_t>(1 + rows + r)];
    check_width(line);
    for (const Token& tok : line.tokens) {
      if (tok.text == ".") {
        fixed.push_back(0);
        continue;
      }
      const int v = parse_int(tok, line.number);
      if (v < 1)
        throw ParseError("fixed value must be positive", line.number, tok.column);
      fixed.push_back(v);
    }
  }

  // Check room-level invariants here so errors carry a location.
  std::vector<int> sizes(label_names.size(), 0);
  for (RoomId id : room_of) ++sizes[static_cast<std::size_t>(id)];
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    const int size = sizes[static_cast<std::size_t>(room_of[i])];
    if (fixed[i] > size) {
      const int r = static_cast<int>(i) / cols;
      const int c = static_cast<int>(i) % cols;
      const Line& line = lines[static_cast<std::size_t>(1 + rows + r)];
      throw ParseError("fixed value " + std::to_string(fixed[i]) + " exceeds size " +
                           std::to_string(size) + " of room '" +
                           label_names[static_cast<std::size_t>(room_of[i])] + "'",
                       line.number, line.tokens[static_cast<std::size_t>(c)].column);
    }
  }
  try {
    return Puzzle::create(rows, cols, std::move(room_of), std::move(fixed));
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    // Translate room indices back to the labels the author wrote.
    const std::string prefix = "room ";
    if (msg.rfind(prefix, 0) == 0) {
      const auto space = msg.find(' ', prefix.size());
      const auto id = std::stoul(msg.substr(prefix.size(), space - prefix.size()));
      msg = "room '" + label_names.at(id) + "'" + msg.substr(space);
    }
    throw ParseError(msg, 0, 0);
  }
}

Assignment parse_assignment(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty solution text", 0, 0);
  const auto cols = lines.front().tokens.size();
  std::vector<int> values;
  for (const Line& line : lines) {
    if (line.tokens.size() != cols)
      throw ParseError("ragged grid: expected " + std::to_string(cols) + " values, found " +
                           std::to_string(line.tokens.size()),
                       line.number, line.tokens.back().column);
    for (const Token& tok : line.tokens) values.push_back(parse_int(tok, line.number));
  }
  return Assignment(static_cast<int>(lines.size()), static_cast<int>(cols), std::move(values));
}

std::string format_assignment(const Assignment& assignment) {
  std::ostringstream out;
  for (int r = 1; r <= assignment.rows(); ++r) {
    for (int c = 1; c <= assignment.cols(); ++c) {
      if (c > 1) out << ' ';
      out << assignment.at({r, c});
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Rules

std::vector<Violation> validate(const Puzzle& puzzle, const Assignment& assignment) {
  std::vector<Violation> out;

  for (RoomId room = 0; room < puzzle.room_count(); ++room) {
    const auto& cells = puzzle.room_cells(room);
    std::vector<int> values;
    values.reserve(cells.size());
    for (const Cell& c : cells) values.push_back(assignment.at(c));
    std::sort(values.begin(), values.end());
    std::vector<int> expected(cells.size());
    std::iota(expected.begin(), expected.end(), 1);
    if (values != expected) {
      std::ostringstream detail;
      detail << "room R" << room + 1 << " of size " << cells.size() << " holds {";
      for (std::size_t i = 0; i < values.size(); ++i) detail << (i ? "," : "") << values[i];
      detail << "}";
      out.push_back({ViolationKind::RoomContent, cells, detail.str()});
    }
  }

  // Each unordered pair is visited once: the partner is always right of or below `a`.
  for (int r = 1; r <= puzzle.rows(); ++r) {
    for (int c = 1; c <= puzzle.cols(); ++c) {
      const Cell a{r, c};
      const int x = assignment.at(a);
      const auto check = [&](const Cell& b, int between) {
        if (assignment.at(b) == x && between < x) {
          out.push_back({ViolationKind::Distance, {a, b},
                         "value " + std::to_string(x) + " at " + to_string(a) + " and " +
                             to_string(b) + " with " + std::to_string(between) +
                             " cells between"});
        }
      };
      for (int c2 = c + 1; c2 <= puzzle.cols(); ++c2) check({r, c2}, c2 - c - 1);
      for (int r2 = r + 1; r2 <= puzzle.rows(); ++r2) check({r2, c}, r2 - r - 1);
    }
  }

  for (std::size_t i = 0; i < static_cast<std::size_t>(puzzle.cell_count()); ++i) {
    const Cell cell = puzzle.cell_at(i);
    if (auto f = puzzle.fixed(cell); f && *f != assignment.at(cell)) {
      out.push_back({ViolationKind::FixedMismatch, {cell},
                     "fixed " + std::to_string(*f) + " at " + to_string(cell) + " but got " +
                         std::to_string(assignment.at(cell))});
    }
  }
  return out;
}

namespace {

class Solver {
 public:
  Solver(const Puzzle& puzzle, std::size_t limit)
      : puzzle_(puzzle),
        limit_(limit),
        values_(static_cast<std::size_t>(puzzle.cell_count()), 0),
        used_(static_cast<std::size_t>(puzzle.room_count())) {
    for (RoomId room = 0; room < puzzle.room_count(); ++room)
      used_[static_cast<std::size_t>(room)].assign(
          static_cast<std::size_t>(puzzle.room_size(room)) + 1, false);
  }

  std::vector<Assignment> run() {
    search(0);
    return std::move(found_);
  }

 private:
  // Looks back along the row and column at already-filled cells only.
  bool distance_ok(const Cell& cell, int x) const {
    for (int d = 1; d <= x && cell.col - d >= 1; ++d)
      if (value({cell.row, cell.col - d}) == x) return false;
    for (int d = 1; d <= x && cell.row - d >= 1; ++d)
      if (value({cell.row - d, cell.col}) == x) return false;
    return true;
  }

  int value(const Cell& cell) const { return values_[puzzle_.index(cell)]; }

  void search(std::size_t index) {
    if (found_.size() >= limit_) return;
    if (index == values_.size()) {
      found_.emplace_back(puzzle_.rows(), puzzle_.cols(), values_);
      return;
    }
    const Cell cell = puzzle_.cell_at(index);
    const auto room = static_cast<std::size_t>(puzzle_.room_of(cell));
    auto& used = used_[room];
    const int size = static_cast<int>(used.size()) - 1;
    const auto fixed = puzzle_.fixed(cell);
    const int lo = fixed ? *fixed : 1;
    const int hi = fixed ? *fixed : size;
    for (int v = lo; v <= hi; ++v) {
      if (used[static_cast<std::size_t>(v)] || !distance_ok(cell, v)) continue;
      used[static_cast<std::size_t>(v)] = true;
      values_[index] = v;
      search(index + 1);
      values_[index] = 0;
      used[static_cast<std::size_t>(v)] = false;
      if (found_.size() >= limit_) return;
    }
  }

  const Puzzle& puzzle_;
  std::size_t limit_;
  std::vector<int> values_;
  std::vector<std::vector<bool>> used_;
  std::vector<Assignment> found_;
};

}  // namespace

std::vector<Assignment> solve(const Puzzle& puzzle, std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("solve limit must be at least 1");
  return Solver(puzzle, limit).run();
}

int max_room_size(const Puzzle& puzzle) {
  int k = 0;
  for (RoomId room = 0; room < puzzle.room_count(); ++room)
    k = std::max(k, puzzle.room_size(room));
  return k;
}

}  // namespace ripple
