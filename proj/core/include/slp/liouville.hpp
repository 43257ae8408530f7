#pragma once

#include <optional>
#include <vector>

#include "slp/problem.hpp"

namespace slp {

// x <-> t correspondence with dt/dx = +sqrt(r/p) and w = (p r)^(-1/4).
// Either closed-form (expressions supplied by a constructor) or tabulated on
// a uniform x-grid with local quadrature corrections between nodes.
struct TransformMap {
  double a = 0.0, b = 1.0;
  double alpha = 0.0, beta = 1.0;
  bool exact = false;
  Expression w;
  Expression dt_dx;  // sqrt(r/p)

  std::optional<Expression> t_expr;  // closed form t(x)
  std::optional<Expression> x_expr;  // closed form x(t)

  std::vector<double> xs, ts, slopes;  // tabulation nodes and exact node slopes
  double quad_tol = 1e-12;

  bool tabulated() const { return !t_expr.has_value(); }

  // Endpoints are pinned: t_of_x(a) == alpha, t_of_x(b) == beta.
  double t_of_x(double x) const;
  double x_of_t(double t) const;
  // Monotone cubic (Fritsch-Carlson) interpolant through the tabulation.
  double interpolate(double x) const;
};

inline constexpr int kMapGridPoints = 2049;

TransformMap build_map(const CanonicalSLP& problem, double quad_tol = 1e-12, double offset = 0.0);

// Closed-form map; alpha and beta are taken as given.
TransformMap closed_form_map(const CanonicalSLP& problem, Expression t_of_x, Expression x_of_t,
                             double alpha, double beta);

// I(x) = q/r + [2w'^2/w^2 - w''/w](p/r) - (w'/w) x_tt, x_tt = sqrt(p/r) d/dx sqrt(p/r).
class InvariantFunction {
 public:
  explicit InvariantFunction(const CanonicalSLP& problem);
  double operator()(double x) const;

 private:
  Expression p_, p1_, p2_, q_, r_, r1_, r2_;
};

double invariant_at_x(const CanonicalSLP& problem, const TransformMap& map, double x);

struct ForwardResult {
  SchrodingerSLP schrodinger;
  TransformMap map;
};

ForwardResult forward_transform(const CanonicalSLP& problem, double quad_tol = 1e-12);

// Constant p and r: t = eta x, eta = sqrt(r/p), Q(t) = q(t/eta)/r.
SchrodingerSLP reduce_constant_coeff(const CanonicalSLP& problem);

// x with |t(x) - t| <= 1e-12 (1 + |t|).
double invert_map(const TransformMap& map, double t);

// n interior nodes uniform in t, plus both endpoints, mapped back to x.
std::vector<double> liouville_nodes(const TransformMap& map, int n);

}  // namespace slp
