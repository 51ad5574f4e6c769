#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace nodim {

// binomial(n, k) with saturation at `cap`; returns cap+1 when the true value
// exceeds cap so callers can guard exhaustive loops without overflow.
inline std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > cap) return cap + 1;
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r > cap ? cap + 1 : r;
}

inline double binomial_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Stirling numbers of the second kind, saturated at `cap`.
inline std::uint64_t stirling2_capped(int n, int k, std::uint64_t cap) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0 || k > n) return 0;
  std::vector<std::uint64_t> prev(static_cast<std::size_t>(k) + 1, 0), cur(prev);
  prev[0] = 1;  // row n=0
  for (int i = 1; i <= n; ++i) {
    cur.assign(cur.size(), 0);
    for (int j = 1; j <= k && j <= i; ++j) {
      std::uint64_t v = prev[static_cast<std::size_t>(j - 1)];
      const std::uint64_t w = prev[static_cast<std::size_t>(j)];
      if (w > cap / static_cast<std::uint64_t>(j)) {
        v = cap + 1;
      } else {
        v += static_cast<std::uint64_t>(j) * w;
      }
      cur[static_cast<std::size_t>(j)] = v > cap ? cap + 1 : v;
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(k)];
}

// Calls `visit` with every k-subset of {0..n-1} in lexicographic order.
// `visit` returning false aborts the enumeration.
inline void for_each_combination(int n, int k,
                                 const std::function<bool(const std::vector<int>&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!visit(c)) return;
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Partitions of {0..n-1} into exactly k nonempty blocks, encoded as a
// restricted growth string: part[i] in [0, k) is the block of element i.
// `visit` returning false aborts.
inline void for_each_set_partition(int n, int k,
                                   const std::function<bool(const std::vector<int>&)>& visit) {
  if (n <= 0 || k <= 0 || k > n) return;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<bool(int, int)> rec = [&](int i, int maxv) -> bool {
    if (i == n) {
      if (maxv + 1 == k) return visit(a);
      return true;
    }
    // Prune: remaining slots must be able to reach k blocks.
    if (maxv + 1 + (n - i) < k) return true;
    const int hi = std::min(maxv + 1, k - 1);
    for (int v = 0; v <= hi; ++v) {
      a[static_cast<std::size_t>(i)] = v;
      if (!rec(i + 1, std::max(maxv, v))) return false;
    }
    return true;
  };
  rec(0, -1);
}

}  // namespace nodim
