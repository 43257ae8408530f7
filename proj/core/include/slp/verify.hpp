#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slp/eigensolver.hpp"
#include "slp/paine_inverse.hpp"

namespace slp {

inline constexpr double kRoundtripTol = 1e-8;
inline constexpr double kBudgetFactor = 5.0;

struct SpectralOptions {
  int n = 2000;
  int count = 5;
  double tol = 1e-10;
  double quad_tol = 1e-12;
  GridKind canonical_grid = GridKind::liouville;
};

struct SpectralComparison {
  Spectrum canonical;
  Spectrum schrodinger;
  std::vector<double> gaps;     // |lambda_c - lambda_s|
  std::vector<double> budgets;  // 5 (err_c + err_s)
  std::string canonical_grid;   // "liouville" or "uniform"
  std::vector<std::string> warnings;

  bool within_budget() const;
};

// Richardson-extrapolated spectra of both forms. A canonical Liouville mesh
// that cannot be built falls back to a uniform mesh with a warning.
SpectralComparison compare_spectra(const CanonicalSLP& canonical, const SchrodingerSLP& schrodinger,
                                   const SpectralOptions& opts = {});

// sup over interior t_j = pi j/(samples+1) of |I(x(t_j)) - k/(t_j+m)^2|.
double roundtrip_invariant(const InverseResult& result, const PaineSpec& spec, int samples = 101);

// (t, |residual|) pairs; failed evaluations are reported as +inf.
std::vector<std::pair<double, double>> asymptotic_profile(const InverseResult& result,
                                                          const PaineSpec& spec,
                                                          int samples = 101);

struct VerificationReport {
  std::string case_label;
  bool exact = false;
  double roundtrip_residual = 0.0;
  std::vector<double> spectral_gaps;
  std::vector<double> budgets;
  Spectrum canonical;
  Spectrum schrodinger;
  std::string canonical_grid;
  std::vector<std::string> trust_warnings;
  bool passed = false;
  std::vector<std::pair<std::string, double>> parameters;
};

VerificationReport spectral_match(const InverseResult& result, const PaineSpec& spec, int count = 5,
                                  int n = 2000);

}  // namespace slp
