#include "slp/problem.hpp"

#include <cmath>
#include <numbers>

namespace slp {

namespace {

void check_interval(double lo, double hi, const char* name, ValidationReport& rep) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    rep.violations.push_back({std::string(name) + " endpoints must be finite", 0.0});
  } else if (!(lo < hi)) {
    rep.violations.push_back({std::string(name) + " requires left endpoint < right endpoint", lo});
  }
}

void check_bc(const BoundaryCoeffs& bc, const char* side, ValidationReport& rep) {
  if (!std::isfinite(bc.d0) || !std::isfinite(bc.d1) || (bc.d0 == 0.0 && bc.d1 == 0.0)) {
    rep.violations.push_back({std::string(side) + " boundary coefficients are degenerate", 0.0});
  }
}

// Samples f on [lo, hi]; reports the first evaluation failure and the first
// point where a positivity requirement fails.
void sample(const Expression& f, const char* name, bool positive, double lo, double hi, int n,
            ValidationReport& rep) {
  for (int i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    double v = 0.0;
    try {
      v = f(x);
    } catch (const DomainError& e) {
      rep.violations.push_back({std::string(name) + " cannot be evaluated: " + e.what(), x});
      return;
    }
    if (positive && !(v > 0.0)) {
      rep.violations.push_back({std::string(name) + " must be positive, got " + format_number(v), x});
      return;
    }
  }
}

}  // namespace

std::string ValidationReport::summary() const {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.what + " (at " + format_number(v.at) + ")";
  }
  return s;
}

ValidationReport validate(const CanonicalSLP& problem, int samples) {
  ValidationReport rep;
  check_interval(problem.a, problem.b, "interval", rep);
  check_bc(problem.left, "left", rep);
  check_bc(problem.right, "right", rep);
  if (!rep.ok()) return rep;
  const int n = std::max(samples, kPositivitySamples);
  sample(problem.p, "p", true, problem.a, problem.b, n, rep);
  sample(problem.r, "r", true, problem.a, problem.b, n, rep);
  sample(problem.q, "q", false, problem.a, problem.b, n, rep);
  return rep;
}

ValidationReport validate(const SchrodingerSLP& problem, int samples) {
  ValidationReport rep;
  check_interval(problem.alpha, problem.beta, "interval", rep);
  check_bc(problem.left, "left", rep);
  check_bc(problem.right, "right", rep);
  if (!rep.ok()) return rep;
  sample(problem.invariant, "I", false, problem.alpha, problem.beta,
         std::max(samples, kPositivitySamples), rep);
  return rep;
}

ValidationReport validate(const PaineSpec& spec) {
  ValidationReport rep;
  if (!(spec.k > 0.0) || !std::isfinite(spec.k)) rep.violations.push_back({"k must be positive", spec.k});
  if (!(spec.m > 0.0) || !std::isfinite(spec.m)) rep.violations.push_back({"m must be positive", spec.m});
  return rep;
}

void require_valid(const CanonicalSLP& problem) {
  const auto rep = validate(problem);
  if (!rep.ok()) throw ValidationError(rep.summary());
}

void require_valid(const SchrodingerSLP& problem) {
  const auto rep = validate(problem);
  if (!rep.ok()) throw ValidationError(rep.summary());
}

SchrodingerSLP paine_schrodinger(const PaineSpec& spec) {
  const auto rep = validate(spec);
  if (!rep.ok()) throw ValidationError(rep.summary());
  const Expression t = Expression::variable("t");
  SchrodingerSLP s;
  s.invariant = Expression(spec.k) / pow(t + Expression(spec.m), Expression(2.0));
  s.alpha = 0.0;
  s.beta = std::numbers::pi;
  return s;
}

}  // namespace slp
