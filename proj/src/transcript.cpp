#include "ripple_zkp/transcript.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ripple {

namespace {

constexpr std::string_view kHeader = "ripple-zkp-transcript 1";

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string join_columns(const std::vector<Sequence>& columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out.push_back('/');
    out += to_string(columns[i]);
  }
  return out;
}

std::string signed_offset(long v) { return (v >= 0 ? "+" : "") + std::to_string(v); }

}  // namespace

std::string_view to_string(ShuffleKind kind) {
  return kind == ShuffleKind::PileShift ? "pile_shift" : "pile_scramble";
}

std::string serialize_event(const Event& event) {
  return std::visit(
      Overloaded{
          [](const RevealRow& e) {
            return "reveal_row matrix=" + e.matrix + " step=" + e.step +
                   " row=" + std::to_string(e.row) + " faces=" + to_string(e.faces);
          },
          [](const RevealSegment& e) {
            return "reveal_segment matrix=" + e.matrix + " step=" + e.step +
                   " column=" + std::to_string(e.column) + " rows=" +
                   std::to_string(e.first_row) + "-" + std::to_string(e.last_row) +
                   " faces=" + to_string(e.faces);
          },
          [](const RevealAll& e) {
            return "reveal_all matrix=" + e.matrix + " step=" + e.step +
                   " rows=" + std::to_string(e.rows) + " cols=" + std::to_string(e.cols) +
                   " faces=" + join_columns(e.columns);
          },
          [](const PublicShift& e) {
            return "public_shift matrix=" + e.matrix + " offset=" + signed_offset(e.offset);
          },
          [](const ShuffleEvent& e) {
            return "shuffle matrix=" + e.matrix + " kind=" + std::string(to_string(e.kind));
          },
          [](const SubprotocolMark& e) {
            return std::string("mark ") + (e.enter ? "enter" : "exit") + " name=" + e.name +
                   " detail=" + e.detail;
          },
          [](const VerdictEvent& e) {
            return std::string("verdict outcome=") + (e.accept ? "accept" : "reject") +
                   " reason=" + e.reason;
          },
      },
      event);
}

std::string skeleton_line(const Event& event) {
  return std::visit(
      Overloaded{
          [](const RevealRow& e) {
            return "reveal_row matrix=" + e.matrix + " step=" + e.step +
                   " row=" + std::to_string(e.row) + " width=" + std::to_string(e.faces.size());
          },
          [](const RevealSegment& e) {
            return "reveal_segment matrix=" + e.matrix + " step=" + e.step + " rows=" +
                   std::to_string(e.first_row) + "-" + std::to_string(e.last_row);
          },
          [](const RevealAll& e) {
            return "reveal_all matrix=" + e.matrix + " step=" + e.step +
                   " rows=" + std::to_string(e.rows) + " cols=" + std::to_string(e.cols);
          },
          [](const PublicShift& e) { return "public_shift matrix=" + e.matrix; },
          [](const ShuffleEvent& e) { return serialize_event(e); },
          [](const SubprotocolMark& e) { return serialize_event(e); },
          [](const VerdictEvent& e) {
            return std::string("verdict outcome=") + (e.accept ? "accept" : "reject");
          },
      },
      event);
}

std::string Transcript::serialize() const {
  std::string out(kHeader);
  out.push_back('\n');
  for (const Event& e : events_) {
    out += serialize_event(e);
    out.push_back('\n');
  }
  return out;
}

std::string Transcript::skeleton() const {
  std::string out;
  for (const Event& e : events_) {
    out += skeleton_line(e);
    out.push_back('\n');
  }
  return out;
}

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t number) : number_(number) {
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto end = std::min(line.find(' ', pos), line.size());
      if (end > pos) tokens_.emplace_back(line.substr(pos, end - pos));
      pos = end + 1;
    }
  }

  std::string_view word(std::size_t i) const {
    if (i >= tokens_.size()) fail("missing token");
    return tokens_[i];
  }

  // Fields must appear exactly in the documented order.
  std::string field(std::size_t i, std::string_view key) const {
    const std::string_view tok = word(i);
    if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
      fail("expected field '" + std::string(key) + "'");
    return std::string(tok.substr(key.size() + 1));
  }

  std::size_t number_field(std::size_t i, std::string_view key) const {
    return to_number<std::size_t>(field(i, key));
  }

  template <class T>
  T to_number(std::string_view s) const {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad number");
    return v;
  }

  void expect_count(std::size_t n) const {
    if (tokens_.size() != n) fail("unexpected field count");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("transcript line " + std::to_string(number_) + ": " + what);
  }

 private:
  std::vector<std::string_view> tokens_;
  std::size_t number_;
};

Sequence faces_of(const LineReader& r, const std::string& s) {
  try {
    return sequence_from_string(s);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
}

}  // namespace

Transcript Transcript::parse(std::string_view text) {
  Transcript t;
  std::size_t pos = 0;
  std::size_t number = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) throw std::runtime_error("not a ripple-zkp transcript");
      header_seen = true;
      continue;
    }
    LineReader r(line, number);
    const std::string_view type = r.word(0);
    if (type == "reveal_row") {
      r.expect_count(5);
      t.append(RevealRow{r.field(1, "matrix"), r.field(2, "step"), r.number_field(3, "row"),
                         faces_of(r, r.field(4, "faces"))});
    } else if (type == "reveal_segment") {
      r.expect_count(6);
      RevealSegment e{r.field(1, "matrix"), r.field(2, "step"), r.number_field(3, "column"), 0,
                      0, faces_of(r, r.field(5, "faces"))};
      const std::string rows = r.field(4, "rows");
      const auto dash = rows.find('-');
      if (dash == std::string::npos) r.fail("rows must be a-b");
      e.first_row = r.to_number<std::size_t>(std::string_view(rows).substr(0, dash));
      e.last_row = r.to_number<std::size_t>(std::string_view(rows).substr(dash + 1));
      t.append(std::move(e));
    } else if (type == "reveal_all") {
      r.expect_count(6);
      RevealAll e{r.field(1, "matrix"), r.field(2, "step"), r.number_field(3, "rows"),
                  r.number_field(4, "cols"), {}};
      const std::string faces = r.field(5, "faces");
      std::size_t p = 0;
      while (p <= faces.size()) {
        const auto slash = std::min(faces.find('/', p), faces.size());
        e.columns.push_back(faces_of(r, faces.substr(p, slash - p)));
        p = slash + 1;
      }
      if (e.columns.size() != e.cols) r.fail("column count does not match cols");
      for (const auto& col : e.columns)
        if (col.size() != e.rows) r.fail("column length does not match rows");
      t.append(std::move(e));
    } else if (type == "public_shift") {
      r.expect_count(3);
      t.append(PublicShift{r.field(1, "matrix"), r.to_number<long>(r.field(2, "offset"))});
    } else if (type == "shuffle") {
      r.expect_count(3);
      const std::string kind = r.field(2, "kind");
      ShuffleKind k = ShuffleKind::PileShift;
      if (kind == "pile_scramble") k = ShuffleKind::PileScramble;
      else if (kind != "pile_shift") r.fail("unknown shuffle kind");
      t.append(ShuffleEvent{r.field(1, "matrix"), k});
    } else if (type == "mark") {
      r.expect_count(4);
      const std::string_view edge = r.word(1);
      if (edge != "enter" && edge != "exit") r.fail("mark must be enter or exit");
      t.append(SubprotocolMark{r.field(2, "name"), r.field(3, "detail"), edge == "enter"});
    } else if (type == "verdict") {
      r.expect_count(3);
      const std::string outcome = r.field(1, "outcome");
      if (outcome != "accept" && outcome != "reject") r.fail("unknown outcome");
      t.append(VerdictEvent{outcome == "accept", r.field(2, "reason")});
    } else {
      r.fail("unknown event type '" + std::string(type) + "'");
    }
  }
  if (!header_seen) throw std::runtime_error("not a ripple-zkp transcript");
  return t;
}

}  // namespace ripple
