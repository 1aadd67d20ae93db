#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace pllid {

/// Permutation ordering samples by increasing phase.
///
/// q[n] is the rank of sample n, q_inv[r] the sample at rank r, and p[n] the
/// sample one rank below n (kNoPredecessor for the lowest-ranked sample).
struct SortMap {
  static constexpr std::size_t kNoPredecessor = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> q;
  std::vector<std::size_t> q_inv;
  std::vector<std::size_t> p;

  std::size_t size() const { return q.size(); }
};

/// Stable sort by key: equal keys keep their original relative order.
SortMap build_sort_map(std::span<const double> keys);

/// True when keys are strictly increasing in their original order, in which
/// case the sort map is the identity and carries no information.
bool strictly_increasing(std::span<const double> keys);

}  // namespace pllid
