#include "pllid/shift_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace pllid {

std::size_t ScanGrid::size() const {
  if (!(step > 0.0) || !(b_max >= b_min)) return 0;
  return static_cast<std::size_t>(std::floor((b_max - b_min) / step + 1e-9)) + 1;
}

void ScanGrid::validate() const {
  if (!std::isfinite(b_min) || !std::isfinite(b_max) || !std::isfinite(step)) {
    throw std::invalid_argument("scan grid bounds must be finite");
  }
  if (!(b_min < b_max)) throw std::invalid_argument("scan grid needs b_min < b_max");
  if (!(step > 0.0)) throw std::invalid_argument("scan grid step must be positive");
  if (size() < 10) throw std::invalid_argument("scan grid needs at least 10 points");
}

ScanGrid default_grid(const TimeSeries& eta, std::size_t points) {
  eta.validate();
  if (points < 10) throw std::invalid_argument("scan grid needs at least 10 points");
  const double n = static_cast<double>(eta.size());
  double mean = 0.0;
  for (double v : eta.values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : eta.values) var += (v - mean) * (v - mean);
  const double half_width = 3.0 * std::sqrt(var / n);
  if (!(half_width > 0.0)) throw std::invalid_argument("cannot derive a scan grid from a constant series");
  ScanGrid grid;
  grid.b_min = -mean - half_width;
  grid.b_max = -mean + half_width;
  grid.step = 2.0 * half_width / static_cast<double>(points - 1);
  return grid;
}

ScanResult scan_ensemble(const StateEnsemble& ens, const ScanGrid& grid, const ScanOptions& opts) {
  grid.validate();
  const std::size_t n = grid.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ScanResult result;
  result.b_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.b_values[i] = grid.at(i);
  result.l_values.assign(n, nan);
  result.beta1_abs.assign(n, nan);
  result.beta0.assign(n, nan);
  std::vector<char> monotonic(n, 0);
  std::vector<char> valid(n, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const FitResult fit = fit_integrated(ens, result.b_values[i], opts.k_order, opts.condition_limit);
        result.l_values[i] = fit.l_value;
        result.beta0[i] = fit.beta(0);
        result.beta1_abs[i] = std::abs(fit.beta(1));
        monotonic[i] = fit.monotonic_phase ? 1 : 0;
        valid[i] = 1;
      } catch (const std::exception&) {
        valid[i] = 0;
      }
    }
  };

  unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    work(0, n);
  } else {
    // Each worker owns a contiguous block of grid points; no shared writes.
    std::vector<std::jthread> pool;
    const std::size_t block = (n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += block) {
      pool.emplace_back(work, begin, std::min(n, begin + block));
    }
  }

  result.monotonic_flags.assign(monotonic.begin(), monotonic.end());
  result.valid.assign(valid.begin(), valid.end());
  result.slope_index = detect_slope(result, opts.drop_factor);
  ShiftChoice choice = choose_shift(result);
  result.chosen_index = choice.index;
  result.chosen_b = choice.b;
  result.minima = std::move(choice.minima);
  return result;
}

ScanResult scan(const TimeSeries& eta, const ScanGrid& grid, double t_renorm, const ScanOptions& opts) {
  // The ensemble does not depend on the trial shift; only the sort key does.
  const StateEnsemble ens = assemble_states(eta, 0.0, t_renorm, false);
  return scan_ensemble(ens, grid, opts);
}

namespace {

bool usable(const ScanResult& s, std::size_t i) {
  return (s.valid.empty() || s.valid[i]) && std::isfinite(s.l_values[i]);
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace

std::optional<std::size_t> detect_slope(const ScanResult& scan, double drop_factor) {
  if (!(drop_factor > 1.0)) throw std::invalid_argument("drop factor must exceed 1");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (usable(scan, i)) idx.push_back(i);
  }
  if (idx.size() < 2) return std::nullopt;

  std::vector<double> suffix_min(idx.size());
  suffix_min.back() = scan.l_values[idx.back()];
  for (std::size_t j = idx.size() - 1; j-- > 0;) {
    suffix_min[j] = std::min(suffix_min[j + 1], scan.l_values[idx[j]]);
  }

  const double steep = std::sqrt(drop_factor);
  std::vector<double> left;
  left.reserve(idx.size());
  for (std::size_t j = 1; j < idx.size(); ++j) {
    left.push_back(scan.l_values[idx[j - 1]]);
    const double before = scan.l_values[idx[j - 1]];
    const double here = scan.l_values[idx[j]];
    if (!(before >= steep * here) || !(before > 0.0)) continue;
    if (suffix_min[j] <= median(left) / drop_factor) return idx[j];
  }
  return std::nullopt;
}

ShiftChoice choose_shift(const ScanResult& scan) {
  ShiftChoice choice;
  const std::size_t n = scan.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!usable(scan, i - 1) || !usable(scan, i) || !usable(scan, i + 1)) continue;
    const double v = scan.beta1_abs[i];
    if (v < scan.beta1_abs[i - 1] && v < scan.beta1_abs[i + 1]) choice.minima.push_back(i);
  }
  for (auto it = choice.minima.rbegin(); it != choice.minima.rend(); ++it) {
    const std::size_t i = *it;
    if (scan.slope_index && i >= *scan.slope_index) continue;
    if (!scan.monotonic_flags.empty() && scan.monotonic_flags[i]) continue;
    choice.index = i;
    choice.b = scan.b_values[i];
    break;
  }
  return choice;
}

}  // namespace pllid
