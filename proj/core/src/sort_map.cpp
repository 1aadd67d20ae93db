#include "pllid/sort_map.hpp"

#include <algorithm>
#include <numeric>

namespace pllid {

SortMap build_sort_map(std::span<const double> keys) {
  const std::size_t n = keys.size();
  SortMap map;
  map.q_inv.resize(n);
  std::iota(map.q_inv.begin(), map.q_inv.end(), std::size_t{0});
  std::stable_sort(map.q_inv.begin(), map.q_inv.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  map.q.resize(n);
  map.p.assign(n, SortMap::kNoPredecessor);
  for (std::size_t r = 0; r < n; ++r) {
    map.q[map.q_inv[r]] = r;
    if (r > 0) map.p[map.q_inv[r]] = map.q_inv[r - 1];
  }
  return map;
}

bool strictly_increasing(std::span<const double> keys) {
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (!(keys[i] > keys[i - 1])) return false;
  }
  return true;
}

}  // namespace pllid
