#pragma once

#include <cstddef>
#include <vector>

#include "pllid/time_series.hpp"

namespace pllid {

/// Savitzky-Golay smoothing weights for a window of `window` samples and a
/// polynomial of degree `degree`. Row j holds the weights that evaluate the
/// local least-squares polynomial at window position j, so the middle row is
/// the usual symmetric interior filter and the others handle record edges.
class SavitzkyGolay {
public:
  SavitzkyGolay(std::size_t window, int degree);

  std::size_t window() const { return window_; }
  int degree() const { return degree_; }
  double weight(std::size_t row, std::size_t k) const { return weights_[row * window_ + k]; }

  /// One pass over the whole record, same length as the input.
  std::vector<double> apply(const std::vector<double>& x) const;

private:
  std::size_t window_;
  int degree_;
  std::vector<double> weights_;
};

struct LowpassDesign {
  std::size_t window = 0;
  int degree = 4;
  int passes = 4;
};

/// Window for a normalized cutoff (cycles per sample, 0 < cutoff < 0.5).
/// Four passes of the degree-4 filter put the -3 dB point at or below the
/// cutoff and keep everything above twice the cutoff at least 40 dB down.
LowpassDesign design_lowpass(double cutoff);

/// Zero-phase low-pass: the symmetric smoother run forward and backward twice.
/// Length, t0 and dt are preserved.
TimeSeries lowpass_smooth(const TimeSeries& series, double cutoff);

}  // namespace pllid
