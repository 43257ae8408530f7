#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slp/errors.hpp"
#include "slp/special_fn.hpp"

using namespace slp;

namespace {

constexpr double kPi = std::numbers::pi;

double j_half(double x) { return std::sqrt(2.0 / (kPi * x)) * std::sin(x); }
double y_half(double x) { return -std::sqrt(2.0 / (kPi * x)) * std::cos(x); }
double j_three_halves(double x) {
  return std::sqrt(2.0 / (kPi * x)) * (std::sin(x) / x - std::cos(x));
}
double y_three_halves(double x) {
  return -std::sqrt(2.0 / (kPi * x)) * (std::cos(x) / x + std::sin(x));
}

}  // namespace

TEST(Gamma, Examples) {
  EXPECT_NEAR(gamma_fn(0.5), std::sqrt(kPi), 1e-14);
  EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-3.0), DomainError);
  EXPECT_NEAR(gamma_fn(-0.5), -2.0 * std::sqrt(kPi), 1e-13);
}

TEST(Gamma, RelativeAccuracyAgainstStd) {
  for (int i = 0; i <= 600; ++i) {
    const double x = 0.1 + (30.0 - 0.1) * i / 600.0;
    const double ref = std::tgamma(x);
    EXPECT_LE(std::fabs(gamma_fn(x) - ref), 1e-12 * std::fabs(ref)) << x;
  }
}

TEST(BesselJ, Examples) {
  EXPECT_NEAR(bessel_j(0.5, kPi / 2), 2.0 / kPi, 1e-12);
  EXPECT_NEAR(bessel_j(0.0, 1e-9), 1.0, 1e-15);
  EXPECT_NEAR(bessel_j(1.5, 1.0), 0.2402978392, 1e-10);
  EXPECT_THROW(bessel_j(1.0, 0.0), DomainError);
  EXPECT_THROW(bessel_j(-1.0, 1.0), DomainError);
}

TEST(BesselJ, AbsoluteAccuracyAgainstStd) {
  for (int i = 0; i <= 50; ++i) {
    const double nu = 5.0 * i / 50.0;
    for (int j = 1; j <= 500; ++j) {
      const double x = 50.0 * j / 500.0;
      EXPECT_NEAR(bessel_j(nu, x), std::cyl_bessel_j(nu, x), 1e-10) << nu << " " << x;
    }
  }
}

TEST(BesselY, Examples) {
  EXPECT_NEAR(bessel_y(0.5, kPi), std::sqrt(2.0) / kPi, 1e-12);
  EXPECT_NEAR(bessel_y(0.5, kPi / 2), 0.0, 1e-12);
  EXPECT_NEAR(bessel_y(1.0, 1.0), -0.7812128213, 1e-9);
}

// |Y| reaches 1e10 near x = 0.05 for nu = 5, so the bound is scaled there.
TEST(BesselY, AccuracyAgainstStd) {
  for (int i = 0; i <= 50; ++i) {
    const double nu = 5.0 * i / 50.0;
    for (int j = 0; j <= 500; ++j) {
      const double x = 0.05 + (50.0 - 0.05) * j / 500.0;
      const double ref = std::cyl_neumann(nu, x);
      EXPECT_NEAR(bessel_y(nu, x), ref, 1e-9 * std::max(1.0, std::fabs(ref))) << nu << " " << x;
    }
  }
}

TEST(Bessel, WronskianAndRecurrence) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unu(0.0, 4.0), ux(0.5, 40.0);
  for (int i = 0; i < 200; ++i) {
    const double nu = unu(rng), x = ux(rng);
    const double w = bessel_j(nu + 1, x) * bessel_y(nu, x) - bessel_j(nu, x) * bessel_y(nu + 1, x);
    EXPECT_LE(std::fabs(w - 2.0 / (kPi * x)), 1e-9) << nu << " " << x;
    // recurrence at order nu + 1 keeps every order non-negative
    const double o = nu + 1.0;
    const double rec = bessel_j(o - 1, x) + bessel_j(o + 1, x) - 2.0 * o / x * bessel_j(o, x);
    EXPECT_LE(std::fabs(rec), 1e-9) << nu << " " << x;
    const double recy = bessel_y(o - 1, x) + bessel_y(o + 1, x) - 2.0 * o / x * bessel_y(o, x);
    EXPECT_LE(std::fabs(recy), 1e-9 * std::max(1.0, std::fabs(bessel_y(o + 1, x)))) << nu << " " << x;
  }
}

TEST(Bessel, HalfOrderClosedForms) {
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.1 + (20.0 - 0.1) * i / 400.0;
    EXPECT_NEAR(bessel_j(0.5, x), j_half(x), 1e-10) << x;
    EXPECT_NEAR(bessel_y(0.5, x), y_half(x), 1e-10) << x;
    EXPECT_NEAR(bessel_j(1.5, x), j_three_halves(x), 1e-10) << x;
    EXPECT_NEAR(bessel_y(1.5, x), y_three_halves(x), 1e-10) << x;
  }
}

// omega = sqrt(tau) Z_nu(tau) with nu = sqrt(4k+1)/2 solves tau^2 w'' + (tau^2 - k) w = 0.
TEST(Bessel, PaineBesselEquationResidual) {
  for (double k : {0.75, 2.0}) {
    const double nu = 0.5 * std::sqrt(4.0 * k + 1.0);
    for (int kind = 0; kind < 2; ++kind) {
      auto w = [&](double s) {
        return std::sqrt(s) * (kind == 0 ? bessel_j(nu, s) : bessel_y(nu, s));
      };
      for (int i = 0; i <= 90; ++i) {
        const double tau = 1.0 + 9.0 * i / 90.0;
        const double h = 1e-3;
        const double w2 = (-w(tau + 2 * h) + 16 * w(tau + h) - 30 * w(tau) + 16 * w(tau - h) -
                           w(tau - 2 * h)) /
                          (12 * h * h);
        EXPECT_LE(std::fabs(tau * tau * w2 + (tau * tau - k) * w(tau)), 1e-6) << k << " " << tau;
      }
    }
  }
}

TEST(Bessel, Zeros) {
  const auto z = bessel_zeros(BesselKind::j, 0.0, 0.0, 10.0);
  ASSERT_EQ(z.size(), 3u);
  EXPECT_NEAR(z[0], 2.404825557695773, 1e-12);
  EXPECT_NEAR(z[2], 8.653727912911013, 1e-12);
  const auto zy = bessel_zeros(BesselKind::y, 1.0, 0.0, 6.0);
  ASSERT_EQ(zy.size(), 2u);
  EXPECT_NEAR(zy[0], 2.197141326031017, 1e-12);
}

TEST(Bowman, ResidualOfCertifiedSolution) {
  BowmanParams bp;
  bp.p_bar = -0.5;
  bp.alpha_bar = 1.0;
  bp.beta_bar_sq = -0.75;
  bp.r_bar = 1.0;
  EXPECT_DOUBLE_EQ(bp.q_bar(), 1.0);
  EXPECT_LE(std::fabs(bessel_ode_residual(bp, 1.0, 0.0, 2.0)), 1e-6);
  EXPECT_LE(std::fabs(bessel_ode_residual(bp, 0.3, -1.2, 2.0)), 1e-6);
  EXPECT_EQ(bessel_ode_residual(bp, 0.0, 0.0, 2.0), 0.0);
}

TEST(Bowman, WrongOrderIsRejected) {
  BowmanParams bp;
  bp.p_bar = -0.5;
  bp.beta_bar_sq = -0.75;
  auto wrong = [&](double s) { return std::pow(s, -bp.p_bar) * bessel_j(bp.q_bar() + 1.0, s); };
  EXPECT_GT(std::fabs(bowman_residual(bp, wrong, 2.0)), 1e-2);
}

TEST(Bowman, ComplexOrderRejected) {
  BowmanParams bp;
  bp.p_bar = 0.5;
  bp.beta_bar_sq = 1.0;
  EXPECT_THROW(bp.q_bar(), InputError);
}
