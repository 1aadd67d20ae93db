#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "pllid/config.hpp"
#include "pllid/params.hpp"

using namespace pllid;

namespace {

PhysicalSetup regime_1b() {
  PhysicalSetup s;
  s.omega_rg = 16e6;
  s.m = 17000;
  s.omega_0 = 5e6;
  s.n = 5000;
  s.omega_h = 29.8e6;
  s.r1 = 2000;
  s.c1 = 4.0e-7;
  s.r2 = 4000;
  s.c2 = 4.0e-7;
  return s;
}

}  // namespace

TEST_SUITE("params") {
  TEST_CASE("renormalisation constant of regime 2c") {
    PhysicalSetup s = regime_1b();
    s.omega_h = 83.9e6;
    s.n = 10000;
    CHECK(to_dimensionless(s).t_renorm == doctest::Approx(8390.0).epsilon(1e-12));
  }

  TEST_CASE("filter constant from resistance and capacitance") {
    // 5960 * 2000 * 4e-7 = 4.768
    const auto dp = to_dimensionless(regime_1b());
    CHECK(dp.t_renorm == doctest::Approx(5960.0));
    CHECK(dp.eps1 == doctest::Approx(4.768).epsilon(1e-12));
    CHECK(std::abs(dp.eps1 - 4.77) < 0.005);
  }

  TEST_CASE("detuning of regime 1b matches the table magnitude") {
    const auto dp = to_dimensionless(regime_1b());
    // 2 pi (16e6/17000 - 5e6/5000) / 5960
    const double expected = 2.0 * std::numbers::pi * (16e6 / 17000.0 - 1000.0) / 5960.0;
    CHECK(dp.gamma == doctest::Approx(expected).epsilon(1e-14));
    CHECK(dp.gamma < 0.0);
    CHECK(std::abs(std::abs(dp.gamma) - 0.062) < 5e-4);
  }

  TEST_CASE("effective parameters") {
    SUBCASE("regime 1b") {
      const auto a = effective_params({4.77, 9.53, 0.062, 1.0});
      CHECK(a.alpha1 == doctest::Approx(-0.31457).epsilon(2e-5));
      CHECK(a.alpha0 == doctest::Approx(1.3638e-3).epsilon(1e-4));
    }
    SUBCASE("unit filter, no detuning") {
      const auto a = effective_params({1.0, 1.0, 0.0, 1.0});
      CHECK(a.alpha0 == 0.0);
      CHECK(a.alpha1 == -2.0);
    }
    SUBCASE("regime 2c") {
      const auto a = effective_params({10.1, 16.8, 0.044, 1.0});
      CHECK(a.alpha1 == doctest::Approx(-0.15853).epsilon(2e-5));
      CHECK(a.alpha0 == doctest::Approx(2.593e-4).epsilon(2e-4));
    }
  }

  TEST_CASE("alpha1 identity and sign hold for random filters") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> eps(0.01, 100.0), gam(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const DimensionlessParams dp{eps(rng), eps(rng), gam(rng), 1.0};
      const auto a = effective_params(dp);
      const double lhs = a.alpha1 * dp.eps1 * dp.eps2 + dp.eps1 + dp.eps2;
      CHECK(std::abs(lhs) <= 1e-12 * (dp.eps1 + dp.eps2));
      CHECK(a.alpha1 < 0.0);
    }
  }

  TEST_CASE("inversion recovers hold band and detuning") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int i = 0; i < 200; ++i) {
      PhysicalSetup s = regime_1b();
      s.omega_h *= u(rng);
      s.omega_0 *= u(rng);
      s.r1 *= u(rng);
      s.c2 *= u(rng);
      const auto back = invert_dimensionless(to_dimensionless(s), s);
      const double detuning = 2.0 * std::numbers::pi * (s.omega_rg / s.m - s.omega_0 / s.n);
      CHECK(back.omega_h == doctest::Approx(s.omega_h).epsilon(1e-12));
      CHECK(back.detuning == doctest::Approx(detuning).epsilon(1e-9));
    }
  }

  TEST_CASE("non-positive fields are rejected") {
    double PhysicalSetup::*fields[] = {&PhysicalSetup::omega_rg, &PhysicalSetup::omega_0, &PhysicalSetup::omega_h,
                                       &PhysicalSetup::r1,       &PhysicalSetup::c1,      &PhysicalSetup::r2,
                                       &PhysicalSetup::c2};
    for (auto f : fields) {
      PhysicalSetup s = regime_1b();
      s.*f = 0.0;
      CHECK_THROWS_AS(to_dimensionless(s), std::invalid_argument);
      s.*f = -1.0;
      CHECK_THROWS_AS(to_dimensionless(s), std::invalid_argument);
    }
    PhysicalSetup s = regime_1b();
    s.m = 0;
    CHECK_THROWS_AS(to_dimensionless(s), std::invalid_argument);
    s = regime_1b();
    s.n = -3;
    CHECK_THROWS_AS(to_dimensionless(s), std::invalid_argument);
    CHECK_THROWS_AS(effective_params({0.0, 1.0, 0.0, 1.0}), std::invalid_argument);
  }

  TEST_CASE("bundled regimes load with unique names") {
    const auto bundle = load_regime_bundle(PLLID_REGIME_DIR);
    REQUIRE(bundle.size() == 7);
    std::set<std::string> names;
    for (const auto& cfg : bundle) {
      names.insert(cfg.name);
      CHECK_NOTHROW(cfg.physical.validate());
    }
    CHECK(names == std::set<std::string>{"1b", "2c", "3d", "4", "5e", "6", "Cf"});
  }
}
