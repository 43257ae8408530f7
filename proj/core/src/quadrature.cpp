#include "slp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "slp/errors.hpp"
#include "slp/expr.hpp"

namespace slp {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  k *= h;
  g *= h;
  if (!std::isfinite(k)) {
    throw QuadratureError("integrand not finite on [" + format_number(a) + ", " + format_number(b) + "]");
  }
  return {a, b, k, std::fabs(k - g)};
}

}  // namespace

void NeumaierSum::add(double v) {
  const double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    c_ += (sum_ - t) + v;
  } else {
    c_ += (v - t) + sum_;
  }
  sum_ = t;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                     double rel_tol, int max_intervals) {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol > 0.0 || rel_tol > 0.0)) {
    throw InputError("quadrature tolerances must be non-negative and not both zero");
  }
  if (max_intervals < 1) throw InputError("max_intervals must be positive");
  if (a == b) return {};
  std::priority_queue<Piece> heap;
  Piece first = gk15(f, a, b);
  heap.push(first);
  double total = first.value;
  double err = first.error;
  int count = 1;
  auto tol = [&] { return std::max(abs_tol, rel_tol * std::fabs(total)); };
  while (err > tol()) {
    if (count >= max_intervals) {
      const Piece& w = heap.top();
      throw QuadratureError("quadrature did not converge; worst interval [" + format_number(w.a) +
                            ", " + format_number(w.b) + "] error " + format_number(w.error));
    }
    Piece w = heap.top();
    heap.pop();
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > std::min(w.a, w.b) && mid < std::max(w.a, w.b))) {
      throw QuadratureError("quadrature interval underflow near " + format_number(w.a));
    }
    Piece l = gk15(f, w.a, mid);
    Piece r = gk15(f, mid, w.b);
    total += l.value + r.value - w.value;
    err += l.error + r.error - w.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  // Recompute the total with compensated summation to drop the drift from
  // incremental updates.
  NeumaierSum sum;
  double e = 0.0;
  while (!heap.empty()) {
    sum.add(heap.top().value);
    e += heap.top().error;
    heap.pop();
  }
  return {sum.value(), e, count};
}

}  // namespace slp
