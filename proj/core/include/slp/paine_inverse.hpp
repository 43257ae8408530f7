#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slp/liouville.hpp"
#include "slp/problem.hpp"
#include "slp/special_fn.hpp"

namespace slp {

enum class RootKind { real_distinct, equal, complex };

// Roots of rho^2 - rho - (k - q0) = 0.
struct IndicialRoots {
  double discriminant = 0.0;  // 1 + 4 (k - q0)
  RootKind kind = RootKind::real_distinct;
  double rho1 = 0.0;  // larger real root, or the real part
  double rho2 = 0.0;
  double mu = 0.0;  // imaginary part when complex
};

inline constexpr double kEqualRootTol = 1e-12;

IndicialRoots indicial_roots(double k, double q0);

enum class Branch { plus, minus };
enum class K34Form { power, exponential };
enum class Case2Variant { automatic, a1, a2, b, c1, c2 };

struct Validity {
  std::string expansion_point;  // "exact" for closed-form constructions
  std::optional<std::pair<double, double>> trust_region_t;
  std::vector<std::string> warnings;
};

struct InverseResult {
  CanonicalSLP canonical;
  TransformMap map;
  bool exact = false;
  Validity validity;
  std::string case_label;
  std::vector<std::pair<std::string, double>> extras;

  double extra(const std::string& name) const;
};

InverseResult case1_build(const PaineSpec& spec, double r0, double x0 = 0.0,
                          Branch branch = Branch::plus, K34Form k34 = K34Form::power);

InverseResult case2_build(const PaineSpec& spec, double q0, double x0 = 0.0,
                          Case2Variant variant = Case2Variant::automatic,
                          Branch branch = Branch::plus);

InverseResult case3_build(const PaineSpec& spec, double q0, double r0, double shift,
                          BesselKind kind);

// Without x0 the left endpoint is placed at a = 0.
InverseResult case4_build(const PaineSpec& spec, double c1, std::optional<double> x0 = std::nullopt);

InverseResult case4_general(const PaineSpec& spec, double c1, double n_r,
                            std::optional<double> x0 = std::nullopt);

// Exponents of the q = 0 construction: 2rho+1, 4rho/(2rho+1), (2rho-1)/(2rho+1).
struct Case1Exponents {
  double two_rho_plus_one;
  double p_power;
  double ratio;
};
Case1Exponents case1_exponents_direct(double k, Branch branch);
// Closed forms rationalized in k; undefined at k = 3/4.
Case1Exponents case1_exponents_rational(double k, Branch branch);

// Bowman/J-branch constant: 1/G = 1/Gamma(1+nu)^2 - 1/(Gamma(nu) Gamma(2+nu)).
double gamma_triangle(double k);

// C1/C2 relation between x + x0 and tau: exact and the truncated form used by
// the constructors. Variant must be c1 or c2.
double case2c_x_exact(Case2Variant variant, double mu, double tau);
double case2c_x_truncated(Case2Variant variant, double mu, double tau);

// Parameter bag used by the command-line front end.
// k defaults to 1, except for the equal-root variants where it defaults to
// q0 - 1/4.
struct CaseParams {
  std::optional<double> k;
  double m = 0.1;
  std::optional<double> q0, r0, c1, x0, n_r;
  std::optional<std::string> branch;
  std::optional<std::string> variant;
};

const std::vector<std::string>& case_labels();
InverseResult build_case(const std::string& label, const CaseParams& params);

}  // namespace slp
