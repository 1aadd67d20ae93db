#include "pllid/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pllid {
namespace {

// fc * window at the -3 dB point of four cascaded degree-4 passes is ~1.30;
// the margin keeps the realised cutoff at or below the requested one.
constexpr double kCutoffWindowProduct = 1.31;
constexpr int kLowpassDegree = 4;
constexpr int kLowpassPasses = 4;
constexpr std::size_t kMinWindow = 7;

}  // namespace

SavitzkyGolay::SavitzkyGolay(std::size_t window, int degree) : window_(window), degree_(degree) {
  if (window % 2 == 0 || degree < 0 || window <= static_cast<std::size_t>(degree) + 1) {
    throw std::invalid_argument("Savitzky-Golay needs an odd window longer than degree + 1");
  }
  const Eigen::Index M = static_cast<Eigen::Index>(window);
  const Eigen::Index cols = degree + 1;
  const double half = static_cast<double>(window / 2);
  Eigen::MatrixXd vander(M, cols);
  for (Eigen::Index i = 0; i < M; ++i) {
    const double x = (static_cast<double>(i) - half) / half;
    double power = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      vander(i, j) = power;
      power *= x;
    }
  }
  // Hat matrix Q Q^T of the thin QR factor; row j evaluates the fit at sample j.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(vander);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(M, cols);
  const Eigen::MatrixXd hat = q * q.transpose();
  weights_.resize(window * window);
  for (Eigen::Index r = 0; r < M; ++r) {
    for (Eigen::Index c = 0; c < M; ++c) weights_[static_cast<std::size_t>(r * M + c)] = hat(r, c);
  }
}

std::vector<double> SavitzkyGolay::apply(const std::vector<double>& x) const {
  const std::size_t n = x.size();
  if (n < window_) {
    throw std::invalid_argument("series of " + std::to_string(n) + " samples is shorter than the smoothing window " +
                                std::to_string(window_));
  }
  const std::size_t half = window_ / 2;
  std::vector<double> out(n);
  auto dot = [&](std::size_t row, std::size_t start) {
    const double* w = &weights_[row * window_];
    double acc = 0.0;
    for (std::size_t k = 0; k < window_; ++k) acc += w[k] * x[start + k];
    return acc;
  };
  for (std::size_t i = 0; i < half; ++i) out[i] = dot(i, 0);
  for (std::size_t i = half; i + half < n; ++i) out[i] = dot(half, i - half);
  for (std::size_t i = n - half; i < n; ++i) out[i] = dot(i - (n - window_), n - window_);
  return out;
}

LowpassDesign design_lowpass(double cutoff) {
  if (!(cutoff > 0.0 && cutoff < 0.5)) {
    throw std::invalid_argument("cutoff must lie in (0, 0.5) cycles per sample, got " + std::to_string(cutoff));
  }
  auto window = static_cast<std::size_t>(std::ceil(kCutoffWindowProduct / cutoff));
  window = std::max(window, kMinWindow);
  if (window % 2 == 0) ++window;
  return {window, kLowpassDegree, kLowpassPasses};
}

TimeSeries lowpass_smooth(const TimeSeries& series, double cutoff) {
  const LowpassDesign design = design_lowpass(cutoff);
  series.validate();
  const SavitzkyGolay filter(design.window, design.degree);
  std::vector<double> x = series.values;
  for (int pass = 0; pass < design.passes; ++pass) {
    // Alternate direction so each forward pass is paired with a backward one.
    if (pass % 2 == 1) std::reverse(x.begin(), x.end());
    x = filter.apply(x);
    if (pass % 2 == 1) std::reverse(x.begin(), x.end());
  }
  return {series.t0, series.dt, std::move(x)};
}

}  // namespace pllid
