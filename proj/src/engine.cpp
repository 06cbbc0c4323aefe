#include "ripple_zkp/engine.hpp"

#include <limits>
#include <stdexcept>

namespace ripple {

// ---------------------------------------------------------------------------
// RandomSource

std::size_t RandomSource::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform draw over an empty range");
  using U = std::uint64_t;
  const U bound = static_cast<U>(n);
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const U limit = std::numeric_limits<U>::max() - std::numeric_limits<U>::max() % bound;
  U x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

std::vector<std::size_t> RandomSource::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform(i)]);
  return p;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::string id, std::vector<std::vector<Card>> columns)
    : id_(std::move(id)), columns_(std::move(columns)) {
  rows_ = columns_.empty() ? 0 : columns_.front().size();
  for (const auto& col : columns_)
    if (col.size() != rows_) throw std::invalid_argument("matrix columns differ in length");
  face_up_.assign(columns_.size(), std::vector<bool>(rows_, false));
}

Matrix Matrix::from_rows(std::string id, const std::vector<std::vector<Card>>& rows) {
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  std::vector<std::vector<Card>> columns(width);
  for (auto& col : columns) col.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != width) throw std::invalid_argument("matrix rows differ in length");
    for (std::size_t j = 0; j < width; ++j) columns[j].push_back(row[j]);
  }
  return Matrix(std::move(id), std::move(columns));
}

const Card& Matrix::at(std::size_t row, std::size_t col) const {
  if (row < 1 || row > rows_ || col < 1 || col > cols())
    throw std::out_of_range("matrix " + id_ + " has no position (" + std::to_string(row) + "," +
                            std::to_string(col) + ")");
  return columns_[col - 1][row - 1];
}

std::vector<Card> Matrix::row(std::size_t row) const {
  std::vector<Card> out;
  out.reserve(cols());
  for (std::size_t j = 1; j <= cols(); ++j) out.push_back(at(row, j));
  return out;
}

std::vector<Card> Matrix::column(std::size_t col, std::size_t first_row,
                                 std::size_t last_row) const {
  std::vector<Card> out;
  for (std::size_t i = first_row; i <= last_row; ++i) out.push_back(at(i, col));
  return out;
}

void Matrix::require_face_down(std::string_view action) const {
  if (face_up_count_ != 0)
    throw std::logic_error(std::string(action) + " on matrix " + id_ + " with face-up cards");
}

void Matrix::rotate(long offset) {
  require_face_down("rotate");
  const auto b = static_cast<long>(cols());
  if (b == 0) return;
  const long r = ((offset % b) + b) % b;
  std::vector<std::vector<Card>> moved(columns_.size());
  for (long j = 0; j < b; ++j) moved[static_cast<std::size_t>((j + r) % b)] = std::move(columns_[j]);
  columns_ = std::move(moved);
}

void Matrix::permute(std::span<const std::size_t> destination) {
  require_face_down("permute");
  if (destination.size() != cols()) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> hit(cols(), false);
  std::vector<std::vector<Card>> moved(columns_.size());
  for (std::size_t j = 0; j < destination.size(); ++j) {
    const std::size_t to = destination[j];
    if (to >= cols() || hit[to]) throw std::invalid_argument("not a permutation");
    hit[to] = true;
    moved[to] = std::move(columns_[j]);
  }
  columns_ = std::move(moved);
}

void Matrix::set_column(std::size_t col, std::size_t first_row, std::span<const Card> cards) {
  require_face_down("set_column");
  if (col < 1 || col > cols() || first_row < 1 || first_row - 1 + cards.size() > rows_)
    throw std::out_of_range("set_column outside matrix " + id_);
  for (std::size_t i = 0; i < cards.size(); ++i) columns_[col - 1][first_row - 1 + i] = cards[i];
}

void Matrix::append_columns(std::vector<std::vector<Card>> columns) {
  require_face_down("append_columns");
  for (auto& col : columns) {
    if (col.size() != rows_) throw std::invalid_argument("appended column has wrong height");
    columns_.push_back(std::move(col));
    face_up_.emplace_back(rows_, false);
  }
}

std::vector<std::vector<Card>> Matrix::remove_columns(std::size_t first, std::size_t last) {
  require_face_down("remove_columns");
  if (first > last) return {};
  if (first < 1 || last > cols()) throw std::out_of_range("remove_columns outside matrix " + id_);
  std::vector<std::vector<Card>> out(std::make_move_iterator(columns_.begin() + (first - 1)),
                                     std::make_move_iterator(columns_.begin() + last));
  columns_.erase(columns_.begin() + (first - 1), columns_.begin() + last);
  face_up_.resize(columns_.size());
  return out;
}

Matrix Matrix::split_top(std::size_t count, std::string id) {
  require_face_down("split");
  if (count > rows_) throw std::out_of_range("split below the bottom of matrix " + id_);
  std::vector<std::vector<Card>> top(cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    top[j].assign(columns_[j].begin(), columns_[j].begin() + static_cast<long>(count));
    columns_[j].erase(columns_[j].begin(), columns_[j].begin() + static_cast<long>(count));
  }
  rows_ -= count;
  face_up_.assign(columns_.size(), std::vector<bool>(rows_, false));
  return Matrix(std::move(id), std::move(top));
}

void Matrix::mark_up(std::size_t row, std::size_t col) {
  auto&& flag = face_up_[col - 1][row - 1];
  if (flag) throw std::logic_error("card already face up in matrix " + id_);
  flag = true;
  ++face_up_count_;
}

Sequence Matrix::turn_up_row(std::size_t row) {
  Sequence out;
  out.reserve(cols());
  for (std::size_t j = 1; j <= cols(); ++j) {
    out.push_back(at(row, j).face_);
    mark_up(row, j);
  }
  return out;
}

Sequence Matrix::turn_up_segment(std::size_t col, std::size_t first_row, std::size_t last_row) {
  Sequence out;
  for (std::size_t i = first_row; i <= last_row; ++i) {
    out.push_back(at(i, col).face_);
    mark_up(i, col);
  }
  return out;
}

std::vector<Sequence> Matrix::turn_up_all() {
  std::vector<Sequence> out;
  out.reserve(cols());
  for (std::size_t j = 1; j <= cols(); ++j) {
    Sequence col;
    col.reserve(rows_);
    for (std::size_t i = 1; i <= rows_; ++i) {
      col.push_back(at(i, j).face_);
      mark_up(i, j);
    }
    out.push_back(std::move(col));
  }
  return out;
}

void Matrix::turn_down_all() {
  for (auto& col : face_up_) col.assign(col.size(), false);
  face_up_count_ = 0;
}

// ---------------------------------------------------------------------------
// Operations

std::size_t pile_shift_shuffle(Matrix& m, Session& session) {
  const std::size_t r = m.cols() == 0 ? 0 : session.rng.uniform(m.cols());
  m.rotate(static_cast<long>(r));
  session.transcript.append(ShuffleEvent{m.id(), ShuffleKind::PileShift});
  if (session.audit.enabled) session.audit.draws.push_back({m.id(), ShuffleKind::PileShift, {r}});
  return r;
}

std::vector<std::size_t> pile_scramble_shuffle(Matrix& m, Session& session) {
  auto p = session.rng.permutation(m.cols());
  m.permute(p);
  session.transcript.append(ShuffleEvent{m.id(), ShuffleKind::PileScramble});
  if (session.audit.enabled) session.audit.draws.push_back({m.id(), ShuffleKind::PileScramble, p});
  return p;
}

void shift_columns(Matrix& m, long offset, Transcript& t) {
  m.rotate(offset);
  t.append(PublicShift{m.id(), offset});
}

Sequence reveal_row(Matrix& m, std::size_t row, Transcript& t, std::string_view step) {
  Sequence faces = m.turn_up_row(row);
  t.append(RevealRow{m.id(), std::string(step), row, faces});
  return faces;
}

Sequence reveal_segment(Matrix& m, std::size_t column, std::size_t first_row,
                        std::size_t last_row, Transcript& t, std::string_view step) {
  Sequence faces = m.turn_up_segment(column, first_row, last_row);
  t.append(RevealSegment{m.id(), std::string(step), column, first_row, last_row, faces});
  return faces;
}

std::vector<Sequence> reveal_all(Matrix& m, Transcript& t, std::string_view step) {
  auto columns = m.turn_up_all();
  t.append(RevealAll{m.id(), std::string(step), m.rows(), m.cols(), columns});
  return columns;
}

void flip_down(Matrix& m) { m.turn_down_all(); }

std::optional<std::size_t> single_heart(std::span<const Suit> faces) {
  const auto pos = decode(faces);
  if (!pos || *pos == 0) return std::nullopt;
  return pos;
}

std::optional<std::size_t> rearrangement(Matrix& m, Session& session, std::string_view context) {
  pile_shift_shuffle(m, session);
  const std::string step = std::string(context) + ".rearr";
  const auto j = single_heart(reveal_row(m, 1, session.transcript, step));
  flip_down(m);
  if (!j) return std::nullopt;
  shift_columns(m, -static_cast<long>(*j - 1), session.transcript);
  return j;
}

}  // namespace ripple
