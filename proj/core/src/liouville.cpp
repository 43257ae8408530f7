#include "slp/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "slp/quadrature.hpp"

namespace slp {

namespace {

Expression map_integrand(const CanonicalSLP& problem) { return sqrt(problem.r / problem.p); }

Expression map_weight(const CanonicalSLP& problem) {
  return pow(problem.p * problem.r, Expression(-0.25));
}

double hermite(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * m1;
}

// Fritsch-Carlson limiting of node slopes so each cubic piece is monotone.
std::vector<double> limit_slopes(const std::vector<double>& xs, const std::vector<double>& ys,
                                 std::vector<double> m) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double delta = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (delta == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double al = m[i] / delta, be = m[i + 1] / delta;
    const double tau2 = al * al + be * be;
    if (tau2 > 9.0) {
      const double tau = 3.0 / std::sqrt(tau2);
      m[i] = tau * al * delta;
      m[i + 1] = tau * be * delta;
    }
  }
  return m;
}

}  // namespace

double TransformMap::t_of_x(double x) const {
  if (x == a) return alpha;
  if (x == b) return beta;
  if (t_expr) return (*t_expr)(x);
  const int last = static_cast<int>(xs.size()) - 1;
  const double h = (b - a) / last;
  const int j = std::clamp(static_cast<int>(std::lround((x - a) / h)), 0, last);
  if (x == xs[j]) return ts[j];
  auto f = [this](double s) { return dt_dx(s); };
  return ts[j] + integrate(f, xs[j], x, quad_tol).value;
}

double TransformMap::interpolate(double x) const {
  if (!tabulated()) return t_of_x(x);
  const int last = static_cast<int>(xs.size()) - 1;
  const double h = (b - a) / last;
  const int j = std::clamp(static_cast<int>(std::floor((x - a) / h)), 0, last - 1);
  return hermite(xs[j], xs[j + 1], ts[j], ts[j + 1], slopes[j], slopes[j + 1], x);
}

double TransformMap::x_of_t(double t) const {
  if (t == alpha) return a;
  if (t == beta) return b;
  if (x_expr) return (*x_expr)(t);

  // Bracket by the node table, then seed from the monotone interpolant.
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const int j = std::clamp(static_cast<int>(it - ts.begin()) - 1, 0, static_cast<int>(xs.size()) - 2);
  double lo = xs[j], hi = xs[j + 1];
  {
    double l = lo, r = hi;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (l + r);
      if (hermite(xs[j], xs[j + 1], ts[j], ts[j + 1], slopes[j], slopes[j + 1], mid) < t) {
        l = mid;
      } else {
        r = mid;
      }
    }
    const double x0 = 0.5 * (l + r);
    double x = x0;
    const double goal = 1e-12 * (1.0 + std::fabs(t));
    for (int k = 0; k < 100; ++k) {
      const double g = t_of_x(x) - t;
      if (std::fabs(g) <= goal) return x;
      if (g < 0.0) {
        lo = x;
      } else {
        hi = x;
      }
      double next = x - g / dt_dx(x);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == x) return x;
      x = next;
    }
    return x;
  }
}

TransformMap build_map(const CanonicalSLP& problem, double quad_tol, double offset) {
  if (!(quad_tol > 0.0)) throw InputError("quadrature tolerance must be positive");
  require_valid(problem);
  TransformMap m;
  m.a = problem.a;
  m.b = problem.b;
  m.alpha = offset;
  m.exact = false;
  m.w = map_weight(problem);
  m.dt_dx = map_integrand(problem);
  m.quad_tol = quad_tol;

  const int n = kMapGridPoints;
  m.xs.resize(n);
  m.ts.resize(n);
  std::vector<double> deriv(n);
  const double h = (m.b - m.a) / (n - 1);
  for (int i = 0; i < n; ++i) m.xs[i] = i + 1 == n ? m.b : m.a + i * h;

  auto f = [&](double s) {
    double v = 0.0;
    try {
      v = m.dt_dx(s);
    } catch (const DomainError& e) {
      // p vanishing between validation samples: sqrt(r/p) is not integrable there
      throw QuadratureError("map integrand singular near " + format_number(s) + ": " + e.what());
    }
    if (!(v > 0.0)) {
      throw ValidationError("r/p not positive at " + format_number(s) + " during map integration");
    }
    return v;
  };
  NeumaierSum acc;
  acc.add(offset);
  m.ts[0] = offset;
  deriv[0] = f(m.xs[0]);
  for (int i = 1; i < n; ++i) {
    acc.add(integrate(f, m.xs[i - 1], m.xs[i], quad_tol).value);
    m.ts[i] = acc.value();
    deriv[i] = f(m.xs[i]);
    if (!(m.ts[i] > m.ts[i - 1])) throw NumericalError("map is not strictly increasing");
  }
  m.beta = m.ts[n - 1];
  m.slopes = limit_slopes(m.xs, m.ts, std::move(deriv));
  return m;
}

TransformMap closed_form_map(const CanonicalSLP& problem, Expression t_of_x, Expression x_of_t,
                             double alpha, double beta) {
  TransformMap m;
  m.a = problem.a;
  m.b = problem.b;
  m.alpha = alpha;
  m.beta = beta;
  m.exact = true;
  m.w = map_weight(problem);
  m.dt_dx = map_integrand(problem);
  m.t_expr = std::move(t_of_x);
  m.x_expr = std::move(x_of_t);
  return m;
}

InvariantFunction::InvariantFunction(const CanonicalSLP& problem)
    : p_(problem.p),
      p1_(problem.p.derivative()),
      p2_(p1_.derivative()),
      q_(problem.q),
      r_(problem.r),
      r1_(problem.r.derivative()),
      r2_(r1_.derivative()) {}

double InvariantFunction::operator()(double x) const {
  // Expanded through L = w'/w = -(p'/p + r'/r)/4, so that
  // 2w'^2/w^2 - w''/w = L^2 - L' and x_tt = (p/r)'/2.
  const double p = p_(x), p1 = p1_(x), p2 = p2_(x);
  const double r = r_(x), r1 = r1_(x), r2 = r2_(x);
  const double q = q_(x);
  const double lp = p1 / p, lr = r1 / r;
  const double L = -0.25 * (lp + lr);
  const double dL = -0.25 * (p2 / p - lp * lp + r2 / r - lr * lr);
  const double xtt = 0.5 * (p1 * r - p * r1) / (r * r);
  const double v = q / r + (L * L - dL) * (p / r) - L * xtt;
  if (!std::isfinite(v)) throw DomainError("I(x)", x, "non-finite invariant");
  return v;
}

double invariant_at_x(const CanonicalSLP& problem, const TransformMap& map, double x) {
  if (x < map.a || x > map.b) throw InputError("x outside the map domain");
  return InvariantFunction(problem)(x);
}

ForwardResult forward_transform(const CanonicalSLP& problem, double quad_tol) {
  TransformMap map = build_map(problem, quad_tol);
  auto inv = std::make_shared<InvariantFunction>(problem);
  auto shared_map = std::make_shared<TransformMap>(map);
  auto fn = std::make_shared<ExternalFn>();
  fn->name = "I";
  fn->f = [inv, shared_map](double t) { return (*inv)(shared_map->x_of_t(t)); };

  SchrodingerSLP s;
  s.invariant = Expression::external(fn, Expression::variable("t"));
  s.alpha = map.alpha;
  s.beta = map.beta;

  // delta2 = delta0 w^2 - delta1 p w w'; the derivative coefficient stays delta1.
  const Expression w1 = map.w.derivative();
  auto transform_bc = [&](const BoundaryCoeffs& bc, double x) {
    if (bc.is_dirichlet()) return BoundaryCoeffs{1.0, 0.0};
    const double w = map.w(x);
    return BoundaryCoeffs{bc.d0 * w * w - bc.d1 * problem.p(x) * w * w1(x), bc.d1};
  };
  s.left = transform_bc(problem.left, problem.a);
  s.right = transform_bc(problem.right, problem.b);
  return {std::move(s), std::move(map)};
}

SchrodingerSLP reduce_constant_coeff(const CanonicalSLP& problem) {
  if (!problem.p.is_constant() || !problem.r.is_constant()) {
    throw InputError("reduce_constant_coeff requires constant p and r");
  }
  const double p = problem.p(0.0), r = problem.r(0.0);
  if (!(p > 0.0) || !(r > 0.0)) throw InputError("constant p and r must be positive");
  const double eta = std::sqrt(r / p);
  const Expression t = Expression::variable("t");
  SchrodingerSLP s;
  s.invariant = problem.q.compose(t / Expression(eta)) / Expression(r);
  s.alpha = eta * problem.a;
  s.beta = eta * problem.b;
  auto bc = [&](const BoundaryCoeffs& c) {
    if (c.is_dirichlet()) return BoundaryCoeffs{1.0, 0.0};
    return BoundaryCoeffs{c.d0, c.d1 * p * eta};
  };
  s.left = bc(problem.left);
  s.right = bc(problem.right);
  return s;
}

double invert_map(const TransformMap& map, double t) {
  const double slack = 1e-12 * (1.0 + std::fabs(t));
  if (t < map.alpha - slack || t > map.beta + slack) {
    throw InputError("t = " + format_number(t) + " outside [" + format_number(map.alpha) + ", " +
                     format_number(map.beta) + "]");
  }
  return map.x_of_t(std::clamp(t, map.alpha, map.beta));
}

std::vector<double> liouville_nodes(const TransformMap& map, int n) {
  std::vector<double> nodes(n + 2);
  const double h = (map.beta - map.alpha) / (n + 1);
  nodes.front() = map.a;
  nodes.back() = map.b;
  for (int i = 1; i <= n; ++i) nodes[i] = map.x_of_t(map.alpha + i * h);
  return nodes;
}

}  // namespace slp
