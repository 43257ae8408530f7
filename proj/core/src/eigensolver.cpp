#include "slp/eigensolver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "slp/liouville.hpp"

namespace slp {

namespace {

void require_dirichlet(const BoundaryCoeffs& l, const BoundaryCoeffs& r) {
  if (!l.is_dirichlet() || !r.is_dirichlet()) {
    throw InputError("only Dirichlet boundary conditions are supported by the eigensolver");
  }
}

void require_n(int n) {
  if (n < 3) throw InputError("grid size n must be at least 3, got " + std::to_string(n));
}

double positive_at(const Expression& f, const char* name, double x) {
  const double v = f(x);
  if (!(v > 0.0)) {
    throw ValidationError(std::string(name) + " must be positive, got " + format_number(v) +
                          " at " + format_number(x));
  }
  return v;
}

}  // namespace

SymTridiag discretize_schrodinger(const SchrodingerSLP& problem, int n) {
  require_n(n);
  require_dirichlet(problem.left, problem.right);
  const double h = (problem.beta - problem.alpha) / (n + 1);
  const double ih2 = 1.0 / (h * h);
  SymTridiag t;
  t.diag.resize(n);
  t.offdiag.assign(n - 1, -ih2);
  for (int i = 0; i < n; ++i) {
    const double ti = problem.alpha + (i + 1) * h;
    t.diag[i] = 2.0 * ih2 + problem.invariant(ti);
  }
  return t;
}

SymTridiag discretize_canonical(const CanonicalSLP& problem, int n) {
  require_n(n);
  require_dirichlet(problem.left, problem.right);
  const double h = (problem.b - problem.a) / (n + 1);
  const double ih2 = 1.0 / (h * h);
  std::vector<double> pm(n + 1), r(n), q(n);
  for (int i = 0; i <= n; ++i) pm[i] = positive_at(problem.p, "p", problem.a + (i + 0.5) * h);
  for (int i = 0; i < n; ++i) {
    const double x = problem.a + (i + 1) * h;
    r[i] = positive_at(problem.r, "r", x);
    q[i] = problem.q(x);
  }
  SymTridiag t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (int i = 0; i < n; ++i) t.diag[i] = ((pm[i] + pm[i + 1]) * ih2 + q[i]) / r[i];
  for (int i = 0; i + 1 < n; ++i) t.offdiag[i] = -pm[i + 1] * ih2 / std::sqrt(r[i] * r[i + 1]);
  return t;
}

SymTridiag discretize_canonical(const CanonicalSLP& problem, const std::vector<double>& nodes) {
  require_dirichlet(problem.left, problem.right);
  const int n = static_cast<int>(nodes.size()) - 2;
  require_n(n);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw InputError("mesh nodes must be strictly increasing");
  }
  // flux coefficient on each cell [x_j, x_{j+1}], j = 0..n
  std::vector<double> c(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double dx = nodes[j + 1] - nodes[j];
    c[j] = positive_at(problem.p, "p", nodes[j] + 0.5 * dx) / dx;
  }
  std::vector<double> w(n);
  SymTridiag t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = nodes[i + 1];
    const double hh = 0.5 * (nodes[i + 2] - nodes[i]);
    w[i] = hh * positive_at(problem.r, "r", x);
    t.diag[i] = (c[i] + c[i + 1] + hh * problem.q(x)) / w[i];
  }
  for (int i = 0; i + 1 < n; ++i) t.offdiag[i] = -c[i + 1] / std::sqrt(w[i] * w[i + 1]);
  return t;
}

int sturm_count(const SymTridiag& t, double sigma) {
  const int n = t.size();
  double bmax = 1.0;
  for (double b : t.offdiag) bmax = std::max(bmax, b * b);
  const double pivmin = DBL_MIN * bmax;
  int count = 0;
  double d = t.diag[0] - sigma;
  if (std::fabs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    const double b = t.offdiag[i - 1];
    d = (t.diag[i] - sigma) - b * b / d;
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> eig_bisect(const SymTridiag& t, int count, double tol) {
  const int n = t.size();
  if (count < 1 || count > n) {
    throw InputError("eigenvalue count must be in [1, " + std::to_string(n) + "], got " +
                     std::to_string(count));
  }
  if (!(tol > 0.0)) throw InputError("bisection tolerance must be positive");
  double gl = t.diag[0], gu = t.diag[0];
  for (int i = 0; i < n; ++i) {
    double rad = 0.0;
    if (i > 0) rad += std::fabs(t.offdiag[i - 1]);
    if (i + 1 < n) rad += std::fabs(t.offdiag[i]);
    gl = std::min(gl, t.diag[i] - rad);
    gu = std::max(gu, t.diag[i] + rad);
  }
  const double pad = 2.0 * DBL_EPSILON * std::max(std::fabs(gl), std::fabs(gu)) + tol;
  gl -= pad;
  gu += pad;

  std::vector<double> out;
  out.reserve(count);
  double floor_lo = gl;
  for (int j = 1; j <= count; ++j) {
    double lo = floor_lo, hi = gu;
    int it = 0;
    while (hi - lo > tol) {
      if (++it > 200) {
        throw NumericalError("bisection did not converge for eigenvalue " + std::to_string(j));
      }
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
      if (sturm_count(t, mid) >= j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
    floor_lo = lo;
  }
  return out;
}

namespace {

// n interior points have spacing L/(n+1); the refined grid halves it exactly.
int refined(int n) { return 2 * n + 1; }

std::vector<double> solve_once(const SchrodingerSLP& p, int n, const SolveOptions& o) {
  return eig_bisect(discretize_schrodinger(p, n), o.count, o.tol);
}

Spectrum assemble(std::vector<double> coarse, const std::vector<double>* fine, int n, double tol) {
  Spectrum s;
  s.grid_size = n;
  if (fine) {
    s.extrapolated = true;
    s.eigenvalues.resize(coarse.size());
    s.error_estimates.resize(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      s.eigenvalues[i] = (4.0 * (*fine)[i] - coarse[i]) / 3.0;
      s.error_estimates[i] = std::fabs((*fine)[i] - coarse[i]) / 3.0;
    }
  } else {
    s.eigenvalues = std::move(coarse);
    s.error_estimates.assign(s.eigenvalues.size(), tol);
  }
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    if (!(s.eigenvalues[i] > s.eigenvalues[i - 1])) {
      throw NumericalError("computed eigenvalues are not strictly increasing at index " +
                           std::to_string(i));
    }
  }
  return s;
}

}  // namespace

Spectrum solve_spectrum(const SchrodingerSLP& problem, const SolveOptions& opts) {
  auto coarse = solve_once(problem, opts.n, opts);
  if (!opts.richardson) return assemble(std::move(coarse), nullptr, opts.n, opts.tol);
  auto fine = solve_once(problem, refined(opts.n), opts);
  return assemble(std::move(coarse), &fine, opts.n, opts.tol);
}

Spectrum solve_spectrum(const CanonicalSLP& problem, const SolveOptions& opts) {
  if (opts.grid == GridKind::uniform) {
    auto coarse = eig_bisect(discretize_canonical(problem, opts.n), opts.count, opts.tol);
    if (!opts.richardson) return assemble(std::move(coarse), nullptr, opts.n, opts.tol);
    auto fine = eig_bisect(discretize_canonical(problem, refined(opts.n)), opts.count, opts.tol);
    return assemble(std::move(coarse), &fine, opts.n, opts.tol);
  }
  const TransformMap map = build_map(problem, opts.quad_tol);
  auto coarse =
      eig_bisect(discretize_canonical(problem, liouville_nodes(map, opts.n)), opts.count, opts.tol);
  if (!opts.richardson) return assemble(std::move(coarse), nullptr, opts.n, opts.tol);
  auto fine = eig_bisect(discretize_canonical(problem, liouville_nodes(map, refined(opts.n))),
                         opts.count, opts.tol);
  return assemble(std::move(coarse), &fine, opts.n, opts.tol);
}

}  // namespace slp
