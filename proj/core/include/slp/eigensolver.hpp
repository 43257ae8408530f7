#pragma once

#include <vector>

#include "slp/problem.hpp"

namespace slp {

struct SymTridiag {
  std::vector<double> diag;     // n
  std::vector<double> offdiag;  // n - 1

  int size() const { return static_cast<int>(diag.size()); }
};

// Three-point scheme on the interior of a uniform grid, h = (beta - alpha)/(n + 1).
SymTridiag discretize_schrodinger(const SchrodingerSLP& problem, int n);

// Conservative midpoint-flux scheme on a uniform interior grid, symmetrized
// as D^{-1/2} A D^{-1/2} with D = diag(r).
SymTridiag discretize_canonical(const CanonicalSLP& problem, int n);

// Same scheme on an arbitrary strictly increasing node set including both
// endpoints; interior nodes are the unknowns.
SymTridiag discretize_canonical(const CanonicalSLP& problem, const std::vector<double>& nodes);

// Number of eigenvalues strictly below sigma.
int sturm_count(const SymTridiag& t, double sigma);

// The `count` smallest eigenvalues, each bracketed to width <= tol.
std::vector<double> eig_bisect(const SymTridiag& t, int count, double tol = 1e-10);

enum class GridKind { uniform, liouville };

struct SolveOptions {
  int n = 2000;
  int count = 5;
  bool richardson = true;
  double tol = 1e-10;
  // Canonical problems only: liouville places nodes uniformly in t.
  GridKind grid = GridKind::uniform;
  double quad_tol = 1e-12;
};

Spectrum solve_spectrum(const SchrodingerSLP& problem, const SolveOptions& opts = {});
Spectrum solve_spectrum(const CanonicalSLP& problem, const SolveOptions& opts = {});

}  // namespace slp
