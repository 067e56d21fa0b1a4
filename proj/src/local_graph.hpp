#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "gbp/model.hpp"

namespace gbp::detail {

// Dense bitset graph on the vertices of one habitat. Habitats are small, so
// distance-two questions reduce to row intersections.
class LocalGraph {
 public:
  explicit LocalGraph(int n) : n_(n), words_((n + 63) / 64), rows_(static_cast<size_t>(n) * words_, 0) {}

  int size() const { return n_; }

  void add_edge(int a, int b) {
    set(a, b, true);
    set(b, a, true);
  }
  void remove_edge(int a, int b) {
    set(a, b, false);
    set(b, a, false);
  }
  bool has_edge(int a, int b) const { return (row(a)[b / 64] >> (b % 64)) & 1U; }

  bool common_neighbor(int a, int b) const {
    const std::uint64_t* ra = row(a);
    const std::uint64_t* rb = row(b);
    for (int w = 0; w < words_; ++w)
      if (ra[w] & rb[w]) return true;
    return false;
  }

  bool diameter_at_most_two() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (!has_edge(a, b) && !common_neighbor(a, b)) return false;
    return true;
  }

  // Exact diameter by BFS; kUnreachable when disconnected.
  int diameter() const {
    int best = 0;
    std::vector<int> dist(n_);
    std::vector<int> queue(n_);
    for (int s = 0; s < n_; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      int head = 0, tail = 0;
      dist[s] = 0;
      queue[tail++] = s;
      while (head < tail) {
        const int x = queue[head++];
        for (int y = 0; y < n_; ++y)
          if (dist[y] < 0 && has_edge(x, y)) {
            dist[y] = dist[x] + 1;
            queue[tail++] = y;
          }
      }
      if (tail < n_) return kUnreachable;
      best = std::max(best, dist[queue[tail - 1]]);
    }
    return best;
  }

  bool connected_without(int skip) const {
    int start = skip == 0 ? 1 : 0;
    if (n_ - (skip >= 0 ? 1 : 0) <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n_; ++y)
        if (y != skip && !seen[y] && has_edge(x, y)) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    return count == n_ - (skip >= 0 ? 1 : 0);
  }

  int degree(int a) const {
    int d = 0;
    for (int w = 0; w < words_; ++w) d += std::popcount(row(a)[w]);
    return d;
  }

 private:
  void set(int a, int b, bool on) {
    std::uint64_t& word = rows_[static_cast<size_t>(a) * words_ + b / 64];
    const std::uint64_t bit = std::uint64_t{1} << (b % 64);
    word = on ? (word | bit) : (word & ~bit);
  }
  const std::uint64_t* row(int a) const { return rows_.data() + static_cast<size_t>(a) * words_; }

  int n_;
  int words_;
  std::vector<std::uint64_t> rows_;
};

// Position of v in a sorted habitat, or -1.
inline int local_index(std::span<const VertexId> habitat, VertexId v) {
  const auto it = std::lower_bound(habitat.begin(), habitat.end(), v);
  return (it != habitat.end() && *it == v) ? static_cast<int>(it - habitat.begin()) : -1;
}

}  // namespace gbp::detail
