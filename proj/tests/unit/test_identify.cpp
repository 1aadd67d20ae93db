#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles/normal_equations.hpp"
#include "pllid/deltas.hpp"
#include "pllid/ensemble.hpp"
#include "pllid/error.hpp"
#include "pllid/fit.hpp"
#include "pllid/least_squares.hpp"
#include "pllid/model.hpp"
#include "pllid/smoothing.hpp"
#include "pllid/sort_map.hpp"
#include "support/reference.hpp"

using namespace pllid;

namespace {

const DimensionlessParams k1b{4.77, 9.53, 0.062, 1.0};

const Trajectory& record_1b() {
  static const Trajectory traj = testsupport::synthetic_record(k1b, 3000.0);
  return traj;
}

StateEnsemble hand_ensemble() {
  StateEnsemble ens;
  ens.t = {-1.0, 0.0, 1.0};
  ens.eta = {2.0, 1.0, 3.0};
  ens.zeta = {0.0, 1.0, 2.0};
  ens.psi = {0.2, 0.1, 0.3};
  ens.phase = ens.psi;
  ens.dt = 1.0;
  return ens;
}

DeltaSystem random_system(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  DeltaSystem sys;
  sys.rows.resize(rows, cols);
  sys.targets.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) sys.rows(i, j) = g(rng) * std::pow(10.0, static_cast<double>(j));
    sys.targets(i) = g(rng);
  }
  return sys;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("identify") {
  TEST_CASE("sort map by hand") {
    const std::vector<double> keys{0.3, 0.1, 0.2};
    const auto map = build_sort_map(keys);
    CHECK(map.q == std::vector<std::size_t>{2, 0, 1});
    CHECK(map.q_inv == std::vector<std::size_t>{1, 2, 0});
    CHECK(map.p[0] == 2);
    CHECK(map.p[2] == 1);
    CHECK(map.p[1] == SortMap::kNoPredecessor);
  }

  TEST_CASE("sorted keys give the identity") {
    const std::vector<double> keys{-1.0, 0.0, 0.5, 2.0, 7.0};
    const auto map = build_sort_map(keys);
    for (std::size_t n = 0; n < keys.size(); ++n) {
      CHECK(map.q[n] == n);
      if (n > 0) CHECK(map.p[n] == n - 1);
    }
    CHECK(strictly_increasing(keys));
    CHECK_FALSE(strictly_increasing(std::vector<double>{0.0, 1.0, 1.0}));
    CHECK_FALSE(strictly_increasing(std::vector<double>{0.0, 2.0, 1.0}));
  }

  TEST_CASE("equal keys keep their order") {
    const std::vector<double> keys{1.0, 0.0, 1.0, 0.0, 1.0};
    const auto map = build_sort_map(keys);
    CHECK(map.q_inv == std::vector<std::size_t>{1, 3, 0, 2, 4});
  }

  TEST_CASE("sort map laws on random keys") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coarse(0, 50);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> keys(200);
      for (double& k : keys) k = coarse(rng) * 0.1;
      const auto map = build_sort_map(keys);
      std::vector<std::size_t> ranks = map.q;
      std::sort(ranks.begin(), ranks.end());
      for (std::size_t i = 0; i < ranks.size(); ++i) CHECK(ranks[i] == i);
      for (std::size_t n = 0; n < keys.size(); ++n) {
        CHECK(map.q_inv[map.q[n]] == n);
        if (map.q[n] > 0) CHECK(map.p[n] == map.q_inv[map.q[n] - 1]);
      }
      for (std::size_t r = 1; r < keys.size(); ++r) CHECK(keys[map.q_inv[r - 1]] <= keys[map.q_inv[r]]);
    }
  }

  TEST_CASE("integrated increments by hand") {
    // Chain 0.1 -> 0.2 -> 0.3 visits samples 1, 0, 2.
    const auto ens = hand_ensemble();
    const auto sys = build_deltas_integrated(ens, build_sort_map(ens.phase), 1);
    REQUIRE(sys.size() == 2);
    CHECK(sys.width() == 2);
    CHECK(sys.rows(0, 0) == 1.0);
    CHECK(sys.rows(0, 1) == -1.0);
    CHECK(sys.targets(0) == -1.0);
    CHECK(sys.rows(1, 0) == 1.0);
    CHECK(sys.rows(1, 1) == 2.0);
    CHECK(sys.targets(1) == 2.0);
    CHECK(sys.index == std::vector<std::size_t>{0, 2});
    CHECK(sys.predecessor == std::vector<std::size_t>{1, 0});
  }

  TEST_CASE("higher Taylor orders add power differences") {
    const auto ens = hand_ensemble();
    const auto sys = build_deltas_integrated(ens, build_sort_map(ens.phase), 3);
    CHECK(sys.width() == 4);
    // Sample 2 after sample 0: t^k differences 1 - (-1)^k.
    CHECK(sys.rows(1, 1) == 2.0);
    CHECK(sys.rows(1, 2) == 0.0);
    CHECK(sys.rows(1, 3) == 2.0);
  }

  TEST_CASE("constant observable leaves only time columns") {
    StateEnsemble ens;
    ens.t = {-1.5, -0.5, 0.5, 1.5};
    ens.eta = {2.0, 2.0, 2.0, 2.0};
    ens.zeta = {0.0, 0.0, 0.0, 0.0};
    ens.psi = {0.4, 0.1, 0.3, 0.2};
    ens.phase = ens.psi;
    const auto sys = build_deltas_integrated(ens, build_sort_map(ens.phase), 2);
    for (std::size_t i = 0; i < sys.size(); ++i) {
      CHECK(sys.rows(static_cast<Eigen::Index>(i), 0) == 0.0);
      CHECK(sys.targets(static_cast<Eigen::Index>(i)) == 0.0);
      CHECK(sys.rows(static_cast<Eigen::Index>(i), 1) != 0.0);
    }
  }

  TEST_CASE("too few rows for the requested order") {
    const auto ens = hand_ensemble();
    CHECK(build_deltas_integrated(ens, build_sort_map(ens.phase), 2).size() == 2);
    CHECK_THROWS_AS(fit_integrated(ens, 0.0, 2), DegenerateFitError);
    CHECK_THROWS_AS(fit_integrated(ens, 0.0, 1), DegenerateFitError);
    CHECK_THROWS_AS(fit_integrated(ens, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(fit_integrated(ens, 0.0, 6), std::invalid_argument);
  }

  TEST_CASE("increments telescope along rank order") {
    const auto ens = assemble_states(record_1b().y, 0.0, 1.0, false);
    const auto map = build_sort_map(ens.phase);
    const auto sys = build_deltas_integrated(ens, map, 2);
    const Eigen::Vector3d beta(-0.3, 1e-3, 2e-6);
    const auto delta = residuals(sys, beta);
    auto pointwise = [&](std::size_t n) {
      return beta(0) * ens.eta[n] + beta(1) * ens.t[n] + beta(2) * ens.t[n] * ens.t[n] - ens.zeta[n];
    };
    long double sum = 0.0L;
    for (Eigen::Index i = 0; i < delta.size(); ++i) sum += delta(i);
    const double ends = pointwise(map.q_inv.back()) - pointwise(map.q_inv.front());
    CHECK(static_cast<double>(sum) == doctest::Approx(ends).epsilon(1e-9).scale(1.0));
    long double eta_sum = 0.0L;
    for (Eigen::Index i = 0; i < sys.rows.rows(); ++i) eta_sum += sys.rows(i, 0);
    CHECK(static_cast<double>(eta_sum) ==
          doctest::Approx(ens.eta[map.q_inv.back()] - ens.eta[map.q_inv.front()]).epsilon(1e-9).scale(1.0));
  }

  TEST_CASE("legacy increments") {
    SUBCASE("flat state gives zero rows") {
      StateEnsemble ens;
      ens.t = {-1.0, 0.0, 1.0, 2.0};
      ens.eta = {1.0, 1.0, 1.0, 1.0};
      ens.zeta = {0.0, 0.0, 0.0, 0.0};
      ens.dzeta = {0.0, 0.0, 0.0, 0.0};
      ens.psi = {0.3, 0.1, 0.2, 0.4};
      ens.phase = ens.psi;
      const auto sys = build_deltas_legacy(ens, build_sort_map(ens.phase), 0.0);
      CHECK(sys.size() == 3);
      CHECK(sys.rows.isZero(0.0));
      CHECK(sys.targets.isZero(0.0));
    }
    SUBCASE("rows touching small y are dropped") {
      StateEnsemble ens;
      ens.t = {-2.0, -1.0, 0.0, 1.0, 2.0};
      ens.eta = {1.0, 0.5, 0.01, -0.5, -1.0};
      ens.zeta = {0.1, 0.2, 0.3, 0.4, 0.5};
      ens.dzeta = {1.0, 1.0, 1.0, 1.0, 1.0};
      ens.psi = {0.0, 1.0, 2.0, 3.0, 4.0};
      ens.phase = ens.psi;
      const auto sys = build_deltas_legacy(ens, build_sort_map(ens.phase), 0.1);
      CHECK(sys.index == std::vector<std::size_t>{1, 4});
      CHECK(sys.predecessor == std::vector<std::size_t>{0, 3});
      CHECK(sys.rows(0, 0) == doctest::Approx(1.0 / 0.5 - 1.0));
      CHECK_THROWS_AS(build_deltas_legacy(ens, build_sort_map(ens.phase), 10.0), DegenerateFitError);
    }
    SUBCASE("needs the second derivative") {
      const auto ens = hand_ensemble();
      CHECK_THROWS_AS(build_deltas_legacy(ens, build_sort_map(ens.phase), 0.0), std::invalid_argument);
    }
  }

  TEST_CASE("least squares on constructed systems") {
    SUBCASE("consistent system is solved exactly") {
      std::mt19937_64 rng(1);
      auto sys = random_system(rng, 50, 3);
      const Eigen::Vector3d truth(0.5, -2.0, 1e-3);
      sys.targets = sys.rows * truth;
      const auto fit = solve_least_squares(sys);
      CHECK(fit.valid);
      CHECK(fit.l_value <= 1e-20 * sys.targets.squaredNorm());
      for (int j = 0; j < 3; ++j) CHECK(fit.beta(j) == doctest::Approx(truth(j)).epsilon(1e-10));
    }
    SUBCASE("orthogonal target in one column") {
      DeltaSystem sys;
      sys.rows.resize(4, 1);
      sys.rows << 1, 1, 0, 0;
      sys.targets.resize(4);
      sys.targets << 0, 0, 3, 4;
      const auto fit = solve_least_squares(sys);
      CHECK(std::abs(fit.beta(0)) < 1e-15);
      CHECK(fit.l_value == doctest::Approx(25.0));
      CHECK(fit.n_points == 4);
    }
    SUBCASE("too few rows") {
      DeltaSystem sys;
      sys.rows.resize(2, 2);
      sys.rows << 1, 2, 3, 4;
      sys.targets.resize(2);
      sys.targets << 1, 1;
      CHECK_THROWS_AS(solve_least_squares(sys), DegenerateFitError);
    }
    SUBCASE("rank deficiency is flagged, coefficients still returned") {
      DeltaSystem sys;
      sys.rows.resize(5, 2);
      sys.rows << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;
      sys.targets.resize(5);
      sys.targets << 1, 2, 3, 4, 5;
      const auto fit = solve_least_squares(sys);
      CHECK_FALSE(fit.valid);
      CHECK(fit.beta.size() == 2);
      CHECK(fit.beta.allFinite());
    }
    SUBCASE("non-finite input") {
      DeltaSystem sys;
      sys.rows = Eigen::MatrixXd::Ones(4, 1);
      sys.targets = Eigen::VectorXd::Ones(4);
      sys.targets(2) = std::nan("");
      CHECK_THROWS_AS(solve_least_squares(sys), NumericalError);
    }
  }

  TEST_CASE("least squares agrees with the normal-equation oracle and is optimal") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const auto sys = random_system(rng, 200, 4);
      const auto fit = solve_least_squares(sys);
      CHECK(fit.valid);
      CHECK(fit.condition >= 1.0);
      CHECK(fit.l_value >= 0.0);

      std::vector<std::vector<double>> rows(200, std::vector<double>(4));
      std::vector<double> y(200);
      for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 4; ++j) rows[i][j] = sys.rows(i, j);
        y[i] = sys.targets(i);
      }
      const auto ref = oracle::normal_equations(rows, y);
      for (int j = 0; j < 4; ++j) CHECK(fit.beta(j) == doctest::Approx(ref[j]).epsilon(1e-8).scale(1e-12));

      const Eigen::VectorXd res = residuals(sys, fit.beta);
      CHECK(res.squaredNorm() == doctest::Approx(fit.l_value).epsilon(1e-12));
      for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(res.dot(sys.rows.col(j))) < 1e-8 * res.norm() * sys.rows.col(j).norm());
        for (double f : {0.99, 1.01}) {
          Eigen::VectorXd b = fit.beta;
          b(j) *= f;
          CHECK(residuals(sys, b).squaredNorm() >= fit.l_value);
        }
      }
    }
  }

  TEST_CASE("integrated fit recovers regime 1b") {
    const auto ens = assemble_states(record_1b().y, 0.0, 1.0, false);
    const auto fit = fit_integrated(ens, 0.0, 1);
    CHECK(fit.valid);
    CHECK_FALSE(fit.monotonic_phase);
    CHECK(fit.method == FitMethod::Integrated);
    CHECK(fit.n_points == ens.size() - 1);
    CHECK(rel(-fit.beta(0), 0.31457) < 0.02);
    CHECK(rel(fit.beta(1), 1.364e-3) < 0.10);
  }

  TEST_CASE("higher Taylor orders keep beta0") {
    const auto ens = assemble_states(record_1b().y, 0.0, 1.0, false);
    for (int k = 2; k <= kMaxTaylorOrder; ++k) {
      const auto fit = fit_integrated(ens, 0.0, k);
      CHECK(fit.beta.size() == k + 1);
      CHECK(rel(-fit.beta(0), 0.31457) < 0.02);
    }
  }

  TEST_CASE("time rescaling covariance") {
    const auto base = fit_integrated(assemble_states(record_1b().y, 0.0, 1.0, false), 0.0, 1);
    const auto scaled = fit_integrated(assemble_states(record_1b().y, 0.0, 2.0, false), 0.0, 1);
    CHECK(rel(scaled.beta(0), base.beta(0) / 2.0) < 1e-6);
    CHECK(rel(scaled.beta(1), base.beta(1) / 4.0) < 1e-6);
  }

  TEST_CASE("shifting the observable against the trial shift leaves L unchanged") {
    const double c = 0.8;
    TimeSeries moved = record_1b().y;
    for (double& v : moved.values) v += c;
    for (double b : {-0.2, 0.0, 0.05}) {
      const auto a = fit_integrated(assemble_states(record_1b().y, b, 1.0, false), b, 1);
      const auto m = fit_integrated(assemble_states(moved, b - c, 1.0, false), b - c, 1);
      CHECK(rel(m.l_value, a.l_value) < 1e-9);
    }
  }

  TEST_CASE("monotonic candidate phase is flagged") {
    const auto ens = assemble_states(record_1b().y, 0.0, 1.0, false);
    const auto fit = fit_integrated(ens, 5.0, 1);
    CHECK(fit.monotonic_phase);
    CHECK(strictly_increasing(candidate_phase(ens, 5.0)));
    CHECK_FALSE(fit_integrated(ens, 0.0, 1).monotonic_phase);
  }

  TEST_CASE("legacy fit recovers regime 1b and agrees with the integrated fit") {
    const auto ens = assemble_states(record_1b().y, 0.0, 1.0, true);
    const auto legacy = fit_legacy(ens, default_y_floor(ens));
    const auto integrated = fit_integrated(ens, 0.0, 1);
    const auto alpha = effective_params(k1b);
    CHECK(legacy.method == FitMethod::Legacy);
    CHECK(rel(legacy.beta(1), alpha.alpha1) < 0.02);
    CHECK(rel(legacy.beta(0), alpha.alpha0) < 0.02);
    CHECK(rel(integrated.beta(0), legacy.beta(1)) < 0.05);
  }

  TEST_CASE("default y floor is five percent of the peak") {
    StateEnsemble ens;
    ens.eta = {0.5, -2.0, 1.0};
    ens.b_trial = 0.5;
    CHECK(default_y_floor(ens) == doctest::Approx(0.075));
  }

  TEST_CASE("noise hurts the legacy method more") {
    // 10 dB SNR white noise, then the same smoothing for both methods.
    const auto& clean = record_1b().y;
    double mean = 0.0, var = 0.0;
    for (double v : clean.values) mean += v;
    mean /= static_cast<double>(clean.size());
    for (double v : clean.values) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / static_cast<double>(clean.size()) / 10.0);
    const auto alpha = effective_params(k1b);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, sigma);
    double err_integrated = 0.0, err_legacy = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      TimeSeries noisy = clean;
      for (double& v : noisy.values) v += noise(rng);
      const auto smooth = lowpass_smooth(noisy, 0.02);
      const auto ens = assemble_states(smooth, 0.0, 1.0, true);
      err_integrated += rel(fit_integrated(ens, 0.0, 1).beta(0), alpha.alpha1);
      err_legacy += rel(fit_legacy(ens, default_y_floor(ens)).beta(1), alpha.alpha1);
    }
    MESSAGE("mean relative error of alpha1: integrated " << err_integrated / 3 << ", legacy " << err_legacy / 3);
    CHECK(err_legacy > err_integrated);
  }

  TEST_CASE("nonlinear function reconstruction") {
    const auto ens = assemble_states(record_1b().y, 0.0, 1.0, false);
    const auto fit = fit_integrated(ens, 0.0, 1);
    const auto pointwise = reconstruct_f4(ens, 0.0, fit, F4Source::Pointwise);
    const auto cumulative = reconstruct_f4(ens, 0.0, fit, F4Source::Cumulative);
    REQUIRE(pointwise.size() == ens.size());
    REQUIRE(cumulative.size() == ens.size());
    CHECK(std::is_sorted(pointwise.psi_sorted.begin(), pointwise.psi_sorted.end()));
    CHECK(pointwise.psi_sorted == cumulative.psi_sorted);
    CHECK(cumulative.f4_values.front() == 0.0);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < pointwise.size(); ++i) {
      const double d = pointwise.f4_values[i] - cumulative.f4_values[i];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    CHECK(hi - lo < 1e-10);

    // Sine with a linear trend: remove the trend and the rest oscillates with
    // amplitude 1/eps2 = 1/9.53.
    const double slope = 1.0 / (4.77 * 9.53);
    double amp_lo = INFINITY, amp_hi = -INFINITY;
    for (std::size_t i = 0; i < pointwise.size(); ++i) {
      const double r = pointwise.f4_values[i] - slope * pointwise.psi_sorted[i];
      amp_lo = std::min(amp_lo, r);
      amp_hi = std::max(amp_hi, r);
    }
    CHECK(0.5 * (amp_hi - amp_lo) == doctest::Approx(1.0 / 9.53).epsilon(0.05));

    FitResult legacy = fit;
    legacy.method = FitMethod::Legacy;
    CHECK_THROWS_AS(reconstruct_f4(ens, 0.0, legacy), std::invalid_argument);
  }
}
