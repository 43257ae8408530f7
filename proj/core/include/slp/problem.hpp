#pragma once

#include <string>
#include <vector>

#include "slp/expr.hpp"

namespace slp {

// d0 u - d1 p u' = 0 at the endpoint. Dirichlet is (1, 0).
struct BoundaryCoeffs {
  double d0 = 1.0;
  double d1 = 0.0;

  bool is_dirichlet() const { return d1 == 0.0 && d0 != 0.0; }
};

// -(p u')' + q u = lambda r u on [a, b].
struct CanonicalSLP {
  Expression p{1.0};
  Expression q{0.0};
  Expression r{1.0};
  double a = 0.0;
  double b = 1.0;
  BoundaryCoeffs left;
  BoundaryCoeffs right;
};

// -v'' + I(t) v = lambda v on [alpha, beta].
struct SchrodingerSLP {
  Expression invariant{0.0};
  double alpha = 0.0;
  double beta = 1.0;
  BoundaryCoeffs left;
  BoundaryCoeffs right;
};

// I(t) = k / (t + m)^2 on (0, pi), Dirichlet.
struct PaineSpec {
  double k = 1.0;
  double m = 0.1;
};

struct Spectrum {
  std::vector<double> eigenvalues;
  int grid_size = 0;
  bool extrapolated = false;
  std::vector<double> error_estimates;
};

struct Violation {
  std::string what;
  double at = 0.0;  // location, when meaningful
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

inline constexpr int kPositivitySamples = 201;

ValidationReport validate(const CanonicalSLP& problem, int samples = kPositivitySamples);
ValidationReport validate(const SchrodingerSLP& problem, int samples = kPositivitySamples);
ValidationReport validate(const PaineSpec& spec);

// Throws ValidationError carrying the report summary.
void require_valid(const CanonicalSLP& problem);
void require_valid(const SchrodingerSLP& problem);

SchrodingerSLP paine_schrodinger(const PaineSpec& spec);

}  // namespace slp
