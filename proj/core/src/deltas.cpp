#include "pllid/deltas.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pllid/error.hpp"

namespace pllid {

DeltaSystem build_deltas_integrated(const StateEnsemble& ens, const SortMap& map, int k_order) {
  if (k_order < 1) throw std::invalid_argument("Taylor order must be >= 1");
  const std::size_t n = ens.size();
  if (map.size() != n) throw std::invalid_argument("sort map and ensemble sizes differ");
  const std::size_t width = static_cast<std::size_t>(k_order) + 1;
  if (n < 2) throw DegenerateFitError("integrated method needs at least 2 samples, got " + std::to_string(n));

  DeltaSystem sys;
  sys.method = FitMethod::Integrated;
  sys.n_terms = k_order;
  const auto rows = static_cast<Eigen::Index>(n - 1);
  sys.rows.resize(rows, static_cast<Eigen::Index>(width));
  sys.targets.resize(rows);
  sys.index.resize(n - 1);
  sys.predecessor.resize(n - 1);

  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t cur = map.q_inv[r];
    const std::size_t prev = map.q_inv[r - 1];
    const auto row = static_cast<Eigen::Index>(r - 1);
    sys.index[r - 1] = cur;
    sys.predecessor[r - 1] = prev;
    sys.rows(row, 0) = ens.eta[cur] - ens.eta[prev];
    const double tc = ens.t[cur];
    const double tp = ens.t[prev];
    double pc = 1.0;
    double pp = 1.0;
    for (int k = 1; k <= k_order; ++k) {
      pc *= tc;
      pp *= tp;
      sys.rows(row, k) = pc - pp;
    }
    sys.targets(row) = ens.zeta[cur] - ens.zeta[prev];
  }
  return sys;
}

DeltaSystem build_deltas_legacy(const StateEnsemble& ens, const SortMap& map, double y_floor) {
  if (!ens.has_second_derivative()) throw std::invalid_argument("legacy method needs the second derivative");
  if (!(y_floor >= 0.0)) throw std::invalid_argument("y_floor must be non-negative");
  const std::size_t n = ens.size();
  if (map.size() != n) throw std::invalid_argument("sort map and ensemble sizes differ");

  const double b = ens.b_trial;
  std::vector<std::size_t> keep_cur;
  std::vector<std::size_t> keep_prev;
  keep_cur.reserve(n);
  keep_prev.reserve(n);
  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t cur = map.q_inv[r];
    const std::size_t prev = map.q_inv[r - 1];
    if (std::abs(ens.eta[cur] + b) < y_floor || std::abs(ens.eta[prev] + b) < y_floor) continue;
    keep_cur.push_back(cur);
    keep_prev.push_back(prev);
  }
  if (keep_cur.empty()) throw DegenerateFitError("every legacy increment was excluded by y_floor");

  DeltaSystem sys;
  sys.method = FitMethod::Legacy;
  sys.n_terms = 1;
  const auto rows = static_cast<Eigen::Index>(keep_cur.size());
  sys.rows.resize(rows, 2);
  sys.targets.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::size_t c = keep_cur[static_cast<std::size_t>(i)];
    const std::size_t p = keep_prev[static_cast<std::size_t>(i)];
    const double inv_c = 1.0 / (ens.eta[c] + b);
    const double inv_p = 1.0 / (ens.eta[p] + b);
    sys.rows(i, 0) = inv_c - inv_p;
    sys.rows(i, 1) = ens.zeta[c] * inv_c - ens.zeta[p] * inv_p;
    sys.targets(i) = ens.dzeta[c] * inv_c - ens.dzeta[p] * inv_p;
  }
  sys.index = std::move(keep_cur);
  sys.predecessor = std::move(keep_prev);
  return sys;
}

}  // namespace pllid
