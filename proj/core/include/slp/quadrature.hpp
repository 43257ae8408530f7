#pragma once

#include <functional>

namespace slp {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // sum of per-interval |K15 - G7|
  int intervals = 0;
};

// Globally adaptive Gauss-Kronrod 7/15. Subdivides the worst interval until
// the summed error estimate is below max(abs_tol, rel_tol*|value|).
// Throws QuadratureError naming the worst interval on non-convergence.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     double rel_tol = 0.0, int max_intervals = 4000);

// Compensated (Neumaier) running sum.
class NeumaierSum {
 public:
  void add(double v);
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace slp
