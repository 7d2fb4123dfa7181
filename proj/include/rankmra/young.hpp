#pragma once

// Standard Young tableaux, hook-length dimensions and the eig statistic that
// sorts tableaux into the detail spaces W^k.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankmra/combinatorics.hpp"

namespace rankmra {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i && p[i] > p[i - 1]) return false;
  }
  return true;
}

/// "[3,1]"
inline std::string to_string(const Partition& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

/// Partitions of n in reverse lexicographic order: (n), (n-1,1), ...
inline std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto& self, int rest, int cap) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, cap); k >= 1; --k) {
      cur.push_back(k);
      self(self, rest - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

class YoungTableau {
 public:
  YoungTableau() = default;
  explicit YoungTableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
    Partition s = shape();
    if (!is_partition(s)) throw std::invalid_argument("YoungTableau: row lengths are not a partition");
    std::vector<int> all;
    for (const auto& r : rows_) all.insert(all.end(), r.begin(), r.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i] != static_cast<int>(i) + 1) throw std::invalid_argument("YoungTableau: entries must be 1..n");
  }

  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

  int size() const {
    int s = 0;
    for (const auto& r : rows_) s += static_cast<int>(r.size());
    return s;
  }

  Partition shape() const {
    Partition p;
    for (const auto& r : rows_) p.push_back(static_cast<int>(r.size()));
    return p;
  }

  /// Entries increase along rows and down columns.
  bool is_standard() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (j && rows_[i][j] <= rows_[i][j - 1]) return false;
        if (i && rows_[i][j] <= rows_[i - 1][j]) return false;
      }
    return true;
  }

  friend bool operator==(const YoungTableau&, const YoungTableau&) = default;

 private:
  std::vector<std::vector<int>> rows_;
};

/// Standard Young tableaux of the given shape, generated by placing 1..n in
/// turn at an addable corner.
inline std::vector<YoungTableau> enumerate_syt(const Partition& shape) {
  if (!is_partition(shape)) throw std::invalid_argument("enumerate_syt: not a partition");
  const int n = std::accumulate(shape.begin(), shape.end(), 0);
  std::vector<YoungTableau> out;
  std::vector<std::vector<int>> rows(shape.size());
  auto rec = [&](auto& self, int v) -> void {
    if (v > n) {
      out.emplace_back(rows);
      return;
    }
    for (std::size_t i = 0; i < shape.size(); ++i) {
      const bool room = static_cast<int>(rows[i].size()) < shape[i];
      const bool above_ok = i == 0 || rows[i - 1].size() > rows[i].size();
      if (room && above_ok) {
        rows[i].push_back(v);
        self(self, v + 1);
        rows[i].pop_back();
      }
    }
  };
  rec(rec, 1);
  return out;
}

/// All standard Young tableaux of size n (1 <= n <= 10), grouped by shape in
/// the order of partitions(n).
inline std::vector<YoungTableau> enumerate_syt(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("enumerate_syt: n must be in [1, 10]");
  std::vector<YoungTableau> out;
  for (const auto& p : partitions(n)) {
    auto part = enumerate_syt(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// Number of standard Young tableaux of shape `shape`, by the hook-length formula.
inline std::uint64_t hook_dim(const Partition& shape) {
  if (!is_partition(shape)) throw std::invalid_argument("hook_dim: not a partition");
  const int n = std::accumulate(shape.begin(), shape.end(), 0);
  std::uint64_t hooks = 1;
  for (std::size_t i = 0; i < shape.size(); ++i)
    for (int j = 0; j < shape[i]; ++j) {
      int below = 0;
      for (std::size_t r = i + 1; r < shape.size() && shape[r] > j; ++r) ++below;
      hooks *= static_cast<std::uint64_t>(shape[i] - j - 1 + below + 1);
    }
  return factorial(n) / hooks;
}

/// Reads the maximal hook subtableau holding 1..l+m (first row 1..l, then
/// l+1..l+m down the first column) and returns l for even m, l-1 for odd m.
inline int eig(const YoungTableau& q) {
  if (!q.is_standard()) throw std::invalid_argument("eig: tableau is not standard");
  const auto& rows = q.rows();
  if (rows.empty()) throw std::invalid_argument("eig: empty tableau");
  int l = 0;
  while (l < static_cast<int>(rows[0].size()) && rows[0][static_cast<std::size_t>(l)] == l + 1) ++l;
  int m = 0;
  while (m + 1 < static_cast<int>(rows.size()) && rows[static_cast<std::size_t>(m) + 1][0] == l + m + 1) ++m;
  return m % 2 == 0 ? l : l - 1;
}

}  // namespace rankmra
