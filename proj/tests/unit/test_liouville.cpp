#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "slp/eigensolver.hpp"
#include "slp/errors.hpp"
#include "slp/liouville.hpp"

using namespace slp;

namespace {

constexpr double kPi = std::numbers::pi;

CanonicalSLP make(const char* p, const char* q, const char* r, double a, double b) {
  CanonicalSLP c;
  c.p = Expression::parse(p);
  c.q = Expression::parse(q);
  c.r = Expression::parse(r);
  c.a = a;
  c.b = b;
  return c;
}

// k = 1, m = 0.1, C1 = 2 with a = 0: x + sqrt(0.2) = 2 sqrt((t + 0.1)/2).
CanonicalSLP case4_problem() {
  const double b = std::sqrt(2 * kPi + 0.2) - std::sqrt(0.2);
  return make("(x+0.4472135954999579)^3", "4*(x+0.4472135954999579)",
              "(x+0.4472135954999579)^5", 0.0, b);
}

double case4_t(double x) {
  const double s = x + std::sqrt(0.2);
  return 0.5 * s * s - 0.1;
}

double paine(double t) { return 1.0 / ((t + 0.1) * (t + 0.1)); }

}  // namespace

TEST(BuildMap, IdentityAndConstantScaling) {
  const auto id = build_map(make("1", "0", "1", 0, kPi));
  EXPECT_EQ(id.alpha, 0.0);
  EXPECT_NEAR(id.beta, kPi, 1e-13);
  for (double x : {0.3, 1.0, 2.7}) EXPECT_NEAR(id.t_of_x(x), x, 1e-13);
  const auto two = build_map(make("1", "0", "4", 0, 1));
  EXPECT_NEAR(two.beta - two.alpha, 2.0, 1e-13);
  for (double x : {0.1, 0.5, 0.9}) EXPECT_NEAR(two.t_of_x(x), 2 * x, 1e-13);
  EXPECT_TRUE(id.tabulated());
  EXPECT_FALSE(id.exact);
}

TEST(BuildMap, Case4EndpointByQuadrature) {
  const auto m = build_map(case4_problem());
  EXPECT_NEAR(m.beta, kPi, 1e-9);
  EXPECT_EQ(m.t_of_x(m.a), m.alpha);
  EXPECT_EQ(m.t_of_x(m.b), m.beta);
  for (double x : {0.01, 0.5, 1.3, 2.0}) EXPECT_NEAR(m.t_of_x(x), case4_t(x), 1e-10);
}

TEST(BuildMap, Offset) {
  const auto m = build_map(make("1", "0", "1", 0, 1), 1e-12, 5.0);
  EXPECT_EQ(m.alpha, 5.0);
  EXPECT_NEAR(m.beta, 6.0, 1e-13);
}

TEST(BuildMap, MonotoneTabulation) {
  const auto m = build_map(case4_problem());
  ASSERT_EQ(static_cast<int>(m.ts.size()), kMapGridPoints);
  for (std::size_t i = 1; i < m.ts.size(); ++i) EXPECT_GT(m.ts[i], m.ts[i - 1]);
  // the monotone interpolant stays between neighbouring nodes
  for (std::size_t i = 0; i + 1 < m.xs.size(); i += 64) {
    const double mid = m.interpolate(0.5 * (m.xs[i] + m.xs[i + 1]));
    EXPECT_GE(mid, m.ts[i]);
    EXPECT_LE(mid, m.ts[i + 1]);
  }
}

TEST(BuildMap, RoundTripInX) {
  const auto m = build_map(make("2+sin(3*x)", "0", "1+x^2", 0, 4));
  for (int i = 0; i <= 200; ++i) {
    const double x = 4.0 * i / 200.0;
    EXPECT_NEAR(m.x_of_t(m.t_of_x(x)), x, 1e-10) << x;
  }
}

TEST(BuildMap, Errors) {
  EXPECT_THROW(build_map(make("1", "0", "x-0.5", 0, 1)), ValidationError);
  EXPECT_THROW(build_map(make("1", "0", "1", 0, 1), 0.0), InputError);
  EXPECT_THROW(build_map(make("(x-0.30001)^2", "0", "1", 0, 1)), NumericalError);
}

TEST(InvariantAtX, ConstantCoefficients) {
  const auto c0 = make("1", "0", "1", 0, 1);
  const auto m0 = build_map(c0);
  EXPECT_EQ(invariant_at_x(c0, m0, 0.4), 0.0);
  const auto c5 = make("1", "5", "1", 0, 1);
  EXPECT_EQ(invariant_at_x(c5, build_map(c5), 0.7), 5.0);
  EXPECT_THROW(invariant_at_x(c5, build_map(c5), 1.5), InputError);
}

TEST(InvariantAtX, Case4) {
  const auto c = case4_problem();
  const auto m = build_map(c);
  EXPECT_NEAR(invariant_at_x(c, m, 0.5), paine(m.t_of_x(0.5)), 1e-8);
  EXPECT_NEAR(invariant_at_x(c, m, 0.5), paine(case4_t(0.5)), 1e-8);
}

TEST(ForwardTransform, IdentityProblem) {
  const auto f = forward_transform(make("1", "0", "1", 0, kPi));
  EXPECT_EQ(f.schrodinger.alpha, 0.0);
  EXPECT_NEAR(f.schrodinger.beta, kPi, 1e-13);
  EXPECT_TRUE(f.schrodinger.left.is_dirichlet());
  EXPECT_TRUE(f.schrodinger.right.is_dirichlet());
  for (double t : {0.0, 1.0, 3.0}) EXPECT_EQ(f.schrodinger.invariant(t), 0.0);
}

TEST(ForwardTransform, Case4ReproducesPaine) {
  const auto f = forward_transform(case4_problem());
  double worst = 0.0;
  for (int j = 1; j <= 101; ++j) {
    const double t = kPi * j / 102.0;
    worst = std::max(worst, std::fabs(f.schrodinger.invariant(t) - paine(t)));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(ForwardTransform, Case1ReproducesPaine) {
  // k = 2, r0 = 1, x0 = 0: p = (5x)^(8/5), t = (5x)^(1/5) - 0.1
  const double a = std::pow(0.1, 5) / 5, b = std::pow(kPi + 0.1, 5) / 5;
  const auto f = forward_transform(make("(5*x)^1.6", "0", "1", a, b));
  EXPECT_NEAR(f.schrodinger.beta, kPi, 1e-9);
  double worst = 0.0;
  for (int j = 1; j <= 101; ++j) {
    const double t = kPi * j / 102.0;
    worst = std::max(worst, std::fabs(f.schrodinger.invariant(t) - 2.0 / ((t + 0.1) * (t + 0.1))));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(ForwardTransform, RobinCoefficients) {
  auto c = make("(1+x)^2", "0", "1", 0, 1);
  c.left = {2.0, 1.0};
  c.right = {0.0, 1.0};
  const auto f = forward_transform(c);
  // w = (1+x)^(-1/2): delta2 = d0 w^2 - d1 p w w'
  EXPECT_NEAR(f.schrodinger.left.d0, 2.0 + 0.5, 1e-12);
  EXPECT_EQ(f.schrodinger.left.d1, 1.0);
  const double w = 1 / std::sqrt(2.0), w1 = -0.5 * std::pow(2.0, -1.5);
  EXPECT_NEAR(f.schrodinger.right.d0, -4.0 * w * w1, 1e-12);
  EXPECT_EQ(f.schrodinger.right.d1, 1.0);
}

TEST(ReduceConstantCoeff, Examples) {
  const auto s0 = reduce_constant_coeff(make("1", "0", "1", 0, kPi));
  EXPECT_EQ(s0.alpha, 0.0);
  EXPECT_DOUBLE_EQ(s0.beta, kPi);
  EXPECT_EQ(s0.invariant(1.0), 0.0);

  const auto s1 = reduce_constant_coeff(make("4", "1", "1", 0, 1));
  EXPECT_DOUBLE_EQ(s1.beta, 0.5);
  EXPECT_DOUBLE_EQ(s1.invariant(0.2), 1.0);

  const auto s2 = reduce_constant_coeff(make("1", "x", "4", 0, 1));
  EXPECT_DOUBLE_EQ(s2.beta, 2.0);
  for (double t : {0.0, 0.8, 2.0}) EXPECT_DOUBLE_EQ(s2.invariant(t), t / 8.0);
}

// Both forms must share a spectrum; this pins Q = q/r.
TEST(ReduceConstantCoeff, SpectrumPreserved) {
  for (const auto& c : {make("4", "1", "1", 0, 1), make("1", "x", "4", 0, 1), make("3", "x^2", "2", 0, 2)}) {
    SolveOptions o;
    o.n = 1000;
    o.count = 4;
    const auto a = solve_spectrum(c, o);
    const auto b = solve_spectrum(reduce_constant_coeff(c), o);
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i],
                  5 * (a.error_estimates[i] + b.error_estimates[i]) + 1e-9);
    }
  }
}

TEST(ReduceConstantCoeff, RejectsVariableCoefficients) {
  EXPECT_THROW(reduce_constant_coeff(make("1+x", "0", "1", 0, 1)), InputError);
  EXPECT_THROW(reduce_constant_coeff(make("1", "0", "x+1", 0, 1)), InputError);
}

TEST(InvertMap, Examples) {
  const auto id = build_map(make("1", "0", "1", 0, kPi));
  EXPECT_NEAR(invert_map(id, 1.0), 1.0, 1e-12);
  EXPECT_EQ(invert_map(id, id.alpha), id.a);
  EXPECT_EQ(invert_map(id, id.beta), id.b);
  EXPECT_THROW(invert_map(id, -0.1), InputError);
  EXPECT_THROW(invert_map(id, 4.0), InputError);

  const auto m = build_map(case4_problem());
  const double b = std::sqrt(2 * kPi + 0.2) - std::sqrt(0.2);
  EXPECT_NEAR(invert_map(m, kPi), b, 1e-10);
  for (double t : {0.05, 0.7, 1.9, 3.0}) {
    const double x = invert_map(m, t);
    EXPECT_LE(std::fabs(m.t_of_x(x) - t), 1e-12 * (1 + t));
  }
}

TEST(LiouvilleNodes, UniformInT) {
  const auto m = build_map(case4_problem());
  const auto nodes = liouville_nodes(m, 9);
  ASSERT_EQ(nodes.size(), 11u);
  EXPECT_EQ(nodes.front(), m.a);
  EXPECT_EQ(nodes.back(), m.b);
  for (int i = 1; i <= 9; ++i) EXPECT_NEAR(m.t_of_x(nodes[i]), m.beta * i / 10.0, 1e-11);
}

TEST(ClosedFormMap, UsesExpressions) {
  const auto c = case4_problem();
  const auto m = closed_form_map(c, Expression::parse("0.5*(x+0.4472135954999579)^2-0.1"),
                                 Expression::parse("2*sqrt((t+0.1)/2)-0.4472135954999579", "t"), 0.0,
                                 kPi);
  EXPECT_TRUE(m.exact);
  EXPECT_FALSE(m.tabulated());
  EXPECT_NEAR(m.t_of_x(1.0), case4_t(1.0), 1e-14);
  EXPECT_NEAR(m.x_of_t(m.t_of_x(1.0)), 1.0, 1e-14);
}
