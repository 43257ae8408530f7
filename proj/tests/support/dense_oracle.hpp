#pragma once

// Dense symmetric eigenvalues (Eigen) used as an independent reference for
// the tridiagonal bisection.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "slp/eigensolver.hpp"

namespace slp::testing {

inline std::vector<double> dense_eigenvalues(const SymTridiag& t) {
  const int n = t.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = t.diag[i];
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = t.offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + n};
}

inline SymTridiag random_tridiag(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  SymTridiag t;
  for (int i = 0; i < n; ++i) t.diag.push_back(u(rng));
  for (int i = 0; i + 1 < n; ++i) t.offdiag.push_back(u(rng));
  return t;
}

inline SymTridiag leading_block(const SymTridiag& t, int n) {
  SymTridiag s;
  s.diag.assign(t.diag.begin(), t.diag.begin() + n);
  s.offdiag.assign(t.offdiag.begin(), t.offdiag.begin() + (n - 1));
  return s;
}

}  // namespace slp::testing
