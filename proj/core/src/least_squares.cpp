#include "pllid/least_squares.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "pllid/error.hpp"

namespace pllid {

Eigen::VectorXd residuals(const DeltaSystem& sys, const Eigen::VectorXd& beta) {
  return sys.rows * beta - sys.targets;
}

FitResult solve_least_squares(const DeltaSystem& sys, double condition_limit) {
  const Eigen::Index rows = sys.rows.rows();
  const Eigen::Index cols = sys.rows.cols();
  if (cols == 0 || rows < cols + 1) {
    throw DegenerateFitError("least squares needs at least " + std::to_string(cols + 1) + " rows, got " +
                             std::to_string(rows));
  }
  if (!sys.rows.allFinite() || !sys.targets.allFinite()) {
    throw NumericalError("least-squares system contains non-finite entries");
  }

  // Equilibrate columns so powers of t do not dominate the conditioning.
  Eigen::VectorXd scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double norm = sys.rows.col(j).norm();
    scale(j) = norm > 0.0 ? norm : 1.0;
  }
  const Eigen::MatrixXd scaled = sys.rows * scale.cwiseInverse().asDiagonal();

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  const Eigen::VectorXd coef = qr.solve(sys.targets);

  FitResult result;
  result.method = sys.method;
  result.n_points = static_cast<std::size_t>(rows);
  result.beta = coef.cwiseQuotient(scale);

  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  result.condition = smin > 0.0 ? std::max(1.0, smax / smin) : std::numeric_limits<double>::infinity();

  const Eigen::VectorXd res = scaled * coef - sys.targets;
  result.l_value = res.squaredNorm();
  result.valid = qr.rank() == cols && result.condition <= condition_limit;
  return result;
}

}  // namespace pllid
