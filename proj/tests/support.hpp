#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ripple_zkp/puzzle.hpp"

#ifndef RIPPLE_DATA_DIR
#error "RIPPLE_DATA_DIR must point at the data directory"
#endif

namespace testsupport {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ripple::Puzzle sample_puzzle() {
  return ripple::parse_puzzle(read_text(std::string(RIPPLE_DATA_DIR) + "/sample7x7.puzzle"));
}

inline ripple::Assignment sample_solution() {
  return ripple::parse_assignment(read_text(std::string(RIPPLE_DATA_DIR) + "/sample7x7.solution"));
}

// One room covering the whole grid, no fixed cells.
inline ripple::Puzzle single_room(int rows, int cols) {
  return ripple::Puzzle::create(rows, cols, std::vector<ripple::RoomId>(rows * cols, 0),
                                std::vector<int>(rows * cols, 0));
}

inline bool connected(int rows, int cols, const std::vector<int>& label) {
  const int n = rows * cols;
  std::vector<int> root(n);
  for (int i = 0; i < n; ++i) root[i] = i;
  std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
  for (int i = 0; i < n; ++i) {
    if (i % cols + 1 < cols && label[i] == label[i + 1]) root[find(i)] = find(i + 1);
    if (i + cols < n && label[i] == label[i + cols]) root[find(i)] = find(i + cols);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (label[i] == label[j] && find(i) != find(j)) return false;
  return true;
}

// Every partition of the grid into connected rooms, no fixed cells.
inline std::vector<ripple::Puzzle> all_partitions(int rows, int cols) {
  const int n = rows * cols;
  std::vector<ripple::Puzzle> out;
  std::vector<int> label(n, 0);
  // Restricted growth strings enumerate set partitions once each.
  std::function<void(int, int)> go = [&](int i, int used) {
    if (i == n) {
      if (connected(rows, cols, label))
        out.push_back(ripple::Puzzle::create(rows, cols, label, std::vector<int>(n, 0)));
      return;
    }
    for (int v = 0; v <= used; ++v) {
      label[i] = v;
      go(i + 1, std::max(used, v + 1));
    }
  };
  go(0, 0);
  return out;
}

// Calls f on every table with values in 1..hi.
inline void for_each_assignment(int rows, int cols, int hi,
                                const std::function<void(const ripple::Assignment&)>& f) {
  std::vector<int> values(rows * cols, 1);
  for (;;) {
    f(ripple::Assignment(rows, cols, values));
    std::size_t i = 0;
    while (i < values.size() && values[i] == hi) values[i++] = 1;
    if (i == values.size()) return;
    ++values[i];
  }
}

}  // namespace testsupport
