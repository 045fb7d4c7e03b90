#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Number of Gelfand-Tsetlin patterns with top row given by the partition of
// the sl_{n+1} weight `fund` (fundamental-weight coordinates).
inline std::uint64_t gt_count(const std::vector<long long>& fund) {
  const std::size_t n = fund.size() + 1;
  std::vector<long long> top(n, 0);
  for (std::size_t i = n - 1; i-- > 0;) top[i] = top[i + 1] + fund[i];
  std::function<std::uint64_t(const std::vector<long long>&)> count =
      [&](const std::vector<long long>& row) -> std::uint64_t {
    if (row.size() == 1) return 1;
    std::uint64_t total = 0;
    std::vector<long long> next(row.size() - 1);
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
      if (k == next.size()) {
        total += count(next);
        return;
      }
      for (long long x = row[k + 1]; x <= row[k]; ++x) {
        next[k] = x;
        fill(k + 1);
      }
    };
    fill(0);
    return total;
  };
  return count(top);
}

}  // namespace oracle
