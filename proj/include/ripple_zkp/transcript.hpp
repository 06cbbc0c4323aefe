#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ripple_zkp/cards.hpp"

namespace ripple {

enum class ShuffleKind { PileShift, PileScramble };

std::string_view to_string(ShuffleKind kind);

// Every event carries only what the verifier sees. Shuffle draws never appear here.

struct RevealRow {
  std::string matrix;
  std::string step;
  std::size_t row = 0;
  Sequence faces;
};

struct RevealSegment {
  std::string matrix;
  std::string step;
  std::size_t column = 0;
  std::size_t first_row = 0;
  std::size_t last_row = 0;  // inclusive; first_row > last_row means empty
  Sequence faces;
};

struct RevealAll {
  std::string matrix;
  std::string step;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Sequence> columns;  // each top to bottom
};

struct PublicShift {
  std::string matrix;
  long offset = 0;  // positive moves columns to the right
};

struct ShuffleEvent {
  std::string matrix;
  ShuffleKind kind = ShuffleKind::PileShift;
};

struct SubprotocolMark {
  std::string name;
  std::string detail;
  bool enter = true;
};

struct VerdictEvent {
  bool accept = false;
  std::string reason;
};

using Event = std::variant<RevealRow, RevealSegment, RevealAll, PublicShift, ShuffleEvent,
                           SubprotocolMark, VerdictEvent>;

/// Append-only log of verifier-observable events.
///
/// Serialized form: a header line "ripple-zkp-transcript 1" followed by one event
/// per line, "<type> key=value ..." with a fixed field order:
///
///   mark enter|exit name=<s> detail=<s>
///   shuffle matrix=<id> kind=pile_shift|pile_scramble
///   reveal_row matrix=<id> step=<s> row=<i> faces=<CH..>
///   reveal_segment matrix=<id> step=<s> column=<j> rows=<a>-<b> faces=<CH..>
///   reveal_all matrix=<id> step=<s> rows=<a> cols=<b> faces=<col1>/<col2>/...
///   public_shift matrix=<id> offset=<+n|-n>
///   verdict outcome=accept|reject reason=<s>
///
/// Faces are 'C' for Club and 'H' for Heart. Values never contain spaces.
class Transcript {
 public:
  void append(Event event) { events_.push_back(std::move(event)); }
  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  std::string serialize() const;

  /// Event shapes only: faces, shift offsets and revealed segment columns are
  /// dropped, widths kept. Equal skeletons mean the verifier saw the same sequence
  /// of actions, whatever the cards showed.
  std::string skeleton() const;

  /// Throws std::runtime_error on any unknown or malformed line.
  static Transcript parse(std::string_view text);

 private:
  std::vector<Event> events_;
};

std::string serialize_event(const Event& event);
std::string skeleton_line(const Event& event);

}  // namespace ripple
