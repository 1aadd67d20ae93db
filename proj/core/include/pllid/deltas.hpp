#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "pllid/ensemble.hpp"
#include "pllid/sort_map.hpp"

namespace pllid {

enum class FitMethod { Legacy, Integrated };

/// Increment regression between rank neighbours.
///
/// Row i pairs sample `index[i]` with its predecessor `predecessor[i]`; rows
/// follow rank order. The fitted relation is rows * beta - targets = delta.
struct DeltaSystem {
  Eigen::MatrixXd rows;
  Eigen::VectorXd targets;
  std::vector<std::size_t> index;
  std::vector<std::size_t> predecessor;
  int n_terms = 0;
  FitMethod method = FitMethod::Integrated;

  std::size_t size() const { return static_cast<std::size_t>(targets.size()); }
  std::size_t width() const { return static_cast<std::size_t>(rows.cols()); }
};

/// Integrated-equation increments: row (d_eta, h_1, ..., h_K) with
/// h_k = t_n^k - t_p^k, target d_zeta.
DeltaSystem build_deltas_integrated(const StateEnsemble& ens, const SortMap& map, int k_order);

/// Direct-equation increments: row (d(1/y), d(z/y)), target d(z'/y), with
/// y = eta + b_trial. Pairs where either |y| < y_floor are dropped.
DeltaSystem build_deltas_legacy(const StateEnsemble& ens, const SortMap& map, double y_floor);

}  // namespace pllid
