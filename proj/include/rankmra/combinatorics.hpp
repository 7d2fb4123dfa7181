#pragma once

// Small exact counting helpers shared by the library and its tests.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rankmra {

inline std::uint64_t factorial(int k) {
  if (k < 0 || k > 20) throw std::out_of_range("factorial: argument outside [0, 20]");
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Number of fixed-point free permutations of a k-element set, via
/// d_k = (k-1)(d_{k-1} + d_{k-2}) with d_0 = 1, d_1 = 0.
inline std::uint64_t derangement_number(int k) {
  if (k < 0 || k > 20) throw std::out_of_range("derangement_number: argument outside [0, 20]");
  std::vector<std::uint64_t> d{1, 0};
  for (int i = 2; i <= k; ++i) d.push_back(static_cast<std::uint64_t>(i - 1) * (d[i - 1] + d[i - 2]));
  return d[static_cast<std::size_t>(k)];
}

}  // namespace rankmra
