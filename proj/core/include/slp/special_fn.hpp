#pragma once

#include <cmath>
#include <vector>

namespace slp {

// Gamma function. Throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

// Bessel functions of real order nu >= 0 and argument x > 0.
double bessel_j(double nu, double x);
double bessel_y(double nu, double x);

enum class BesselKind { j, y };

// Positive zeros of J_nu or Y_nu inside (lo, hi], ascending.
std::vector<double> bessel_zeros(BesselKind kind, double nu, double lo, double hi);

// x^2 y'' + (2p+1) x y' + (a^2 x^{2r} + b2) y = 0 has solutions
// x^{-p} Z_{q/r}(a x^r / r) with q^2 = p^2 - b2.
struct BowmanParams {
  double p_bar = 0.0;
  double alpha_bar = 1.0;
  double beta_bar_sq = 0.0;
  double r_bar = 1.0;

  double q_bar() const;
};

// ODE residual of x^{-p}[c1 J_{q/r}(a x^r/r) + c2 Y_{q/r}(a x^r/r)] at x,
// derivatives by five-point differences.
double bessel_ode_residual(const BowmanParams& bp, double c1, double c2, double x);

// Same residual for an arbitrary candidate y(x).
template <class F>
double bowman_residual(const BowmanParams& bp, F&& y, double x, double h = 1e-3) {
  const double ym2 = y(x - 2 * h), ym1 = y(x - h), y0 = y(x), yp1 = y(x + h), yp2 = y(x + 2 * h);
  const double d1 = (ym2 - 8 * ym1 + 8 * yp1 - yp2) / (12 * h);
  const double d2 = (-ym2 + 16 * ym1 - 30 * y0 + 16 * yp1 - yp2) / (12 * h * h);
  double xr = 1.0;
  if (bp.r_bar == 1.0) {
    xr = x * x;
  } else {
    xr = std::pow(x, 2 * bp.r_bar);
  }
  return x * x * d2 + (2 * bp.p_bar + 1) * x * d1 +
         (bp.alpha_bar * bp.alpha_bar * xr + bp.beta_bar_sq) * y0;
}

}  // namespace slp
