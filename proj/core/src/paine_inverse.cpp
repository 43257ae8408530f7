#include "slp/paine_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;

Expression X() { return Expression::variable("x"); }
Expression T() { return Expression::variable("t"); }
Expression C(double v) { return Expression(v); }

void require_spec(const PaineSpec& spec) {
  const auto rep = validate(spec);
  if (!rep.ok()) throw InputError(rep.summary());
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

bool is_k34(double k) { return std::fabs(k - 0.75) < 1e-12; }

// Fills the endpoints from the closed-form x(t), validates, attaches the map.
void finish(InverseResult& res, const Expression& t_of_x, const Expression& x_of_t) {
  const double a = x_of_t(0.0);
  const double b = x_of_t(kPi);
  if (!(a < b)) {
    throw InputError(res.case_label + ": endpoints out of order (a = " + format_number(a) +
                     ", b = " + format_number(b) + ")");
  }
  res.canonical.a = a;
  res.canonical.b = b;
  res.canonical.left = {1.0, 0.0};
  res.canonical.right = {1.0, 0.0};
  const auto rep = validate(res.canonical);
  if (!rep.ok()) throw ValidationError(res.case_label + ": " + rep.summary());
  // The closed forms must put t = 0 and t = pi on the endpoints; large shifts
  // can destroy this through cancellation.
  const double ta = t_of_x(a), tb = t_of_x(b);
  if (std::fabs(ta) > 1e-10 || std::fabs(tb - kPi) > 1e-10 * (1.0 + kPi)) {
    throw NumericalError(res.case_label + ": map endpoints lost accuracy (t(a) = " +
                         format_number(ta) + ", t(b) = " + format_number(tb) + ")");
  }
  res.map = closed_form_map(res.canonical, t_of_x, x_of_t, 0.0, kPi);
}

void warn_interior_zeros(InverseResult& res, const std::vector<double>& taus, const char* what) {
  for (double z : taus) {
    res.validity.warnings.push_back(std::string("p vanishes inside the interval: ") + what +
                                     " zero at tau = " + format_number(z));
  }
}

std::optional<std::pair<double, double>> clip_t(double lo, double hi) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, kPi);
  if (!(lo <= hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace

double InverseResult::extra(const std::string& name) const {
  for (const auto& [k, v] : extras) {
    if (k == name) return v;
  }
  throw InputError("no recorded constant '" + name + "'");
}

IndicialRoots indicial_roots(double k, double q0) {
  IndicialRoots r;
  r.discriminant = 1.0 + 4.0 * (k - q0);
  if (std::fabs(r.discriminant) <= kEqualRootTol) {
    r.kind = RootKind::equal;
    r.rho1 = r.rho2 = 0.5;
  } else if (r.discriminant > 0.0) {
    r.kind = RootKind::real_distinct;
    const double s = std::sqrt(r.discriminant);
    r.rho1 = 0.5 * (1.0 + s);
    r.rho2 = 0.5 * (1.0 - s);
  } else {
    r.kind = RootKind::complex;
    r.rho1 = r.rho2 = 0.5;
    r.mu = 0.5 * std::sqrt(-r.discriminant);
  }
  return r;
}

Case1Exponents case1_exponents_direct(double k, Branch branch) {
  const auto roots = indicial_roots(k, 0.0);
  const double rho = branch == Branch::plus ? roots.rho1 : roots.rho2;
  const double e = 2.0 * rho + 1.0;
  return {e, 4.0 * rho / e, (2.0 * rho - 1.0) / e};
}

Case1Exponents case1_exponents_rational(double k, Branch branch) {
  const double s = (branch == Branch::plus ? 1.0 : -1.0) * std::sqrt(1.0 + 4.0 * k);
  const double den = 3.0 - 4.0 * k;
  return {2.0 + s, 2.0 * (1.0 - 4.0 * k + s) / den, (-(1.0 + 4.0 * k) + 2.0 * s) / den};
}

double gamma_triangle(double k) {
  const double nu = 0.5 * std::sqrt(4.0 * k + 1.0);
  const double g1 = gamma_fn(1.0 + nu);
  const double recip = 1.0 / (g1 * g1) - 1.0 / (gamma_fn(nu) * gamma_fn(2.0 + nu));
  if (!(std::fabs(recip) > 1e-300)) throw InputError("Gamma-triangle constant has a pole");
  return 1.0 / recip;
}

double case2c_x_exact(Case2Variant variant, double mu, double tau) {
  const double s = variant == Case2Variant::c1 ? 1.0 : -1.0;
  const double l = std::log(tau);
  return 0.5 * l + s * std::sin(2.0 * mu * l) / (4.0 * mu);
}

double case2c_x_truncated(Case2Variant variant, double mu, double tau) {
  const double d = tau - 1.0;
  return variant == Case2Variant::c1 ? d : mu * mu / 3.0 * d * d * d;
}

InverseResult case1_build(const PaineSpec& spec, double r0, double x0, Branch branch, K34Form k34) {
  require_spec(spec);
  require(r0 > 0.0, "case1 requires r0 > 0");
  const double k = spec.k, m = spec.m;
  InverseResult res;
  res.case_label = "case1";
  res.exact = true;
  res.validity.expansion_point = "exact";
  res.canonical.q = C(0.0);
  res.canonical.r = C(r0);
  const Expression xs = X() + C(x0);

  const auto roots = indicial_roots(k, 0.0);
  const bool exponential = is_k34(k) && (k34 == K34Form::exponential || branch == Branch::minus);
  double rho = branch == Branch::plus ? roots.rho1 : roots.rho2;
  Expression t_of_x, x_of_t;
  if (exponential) {
    rho = -0.5;
    res.canonical.p = exp(C(-2.0 * r0) * xs) / C(r0);
    t_of_x = exp(C(r0) * xs) - C(m);
    x_of_t = ln(T() + C(m)) / C(r0) - C(x0);
  } else {
    const double e = 2.0 * rho + 1.0;
    if (std::fabs(e) < 1e-12) {
      throw InputError("case1: 2rho+1 vanishes for this branch (k = " + format_number(k) + ")");
    }
    const Expression base = C(r0 * e) * xs;
    res.canonical.p = pow(base, C(4.0 * rho / e)) / C(r0);
    t_of_x = pow(base, C(1.0 / e)) - C(m);
    x_of_t = pow(T() + C(m), C(e)) / C(r0 * e) - C(x0);
  }
  res.extras = {{"k", k},
                {"m", m},
                {"r0", r0},
                {"x0", x0},
                {"rho", rho},
                {"two_rho_plus_one", 2.0 * rho + 1.0},
                {"delta0", std::pow(m, 2.0 * rho)},
                {"gamma0", std::pow(kPi + m, 2.0 * rho)}};
  finish(res, t_of_x, x_of_t);
  return res;
}

InverseResult case2_build(const PaineSpec& spec, double q0, double x0, Case2Variant variant,
                          Branch branch) {
  require_spec(spec);
  require(q0 != 0.0, "case2 requires q0 != 0");
  const double k = spec.k, m = spec.m;
  const auto roots = indicial_roots(k, q0);
  if (variant == Case2Variant::automatic) {
    variant = roots.kind == RootKind::equal        ? Case2Variant::a1
              : roots.kind == RootKind::real_distinct ? Case2Variant::b
                                                   : Case2Variant::c1;
  }
  const std::string disc = format_number(roots.discriminant);
  InverseResult res;
  res.canonical.q = C(q0);
  const Expression xs = X() + C(x0);
  const Expression tm = T() + C(m);
  Expression t_of_x, x_of_t;
  res.extras = {{"k", k}, {"m", m}, {"q0", q0}, {"x0", x0}};

  switch (variant) {
    case Case2Variant::a1:
    case Case2Variant::a2: {
      const bool a1 = variant == Case2Variant::a1;
      res.case_label = a1 ? "case2-A1" : "case2-A2";
      require(roots.kind == RootKind::equal,
              res.case_label + " requires 1 + 4k = 4q0 (discriminant " + disc + ")");
      res.exact = true;
      res.validity.expansion_point = "exact";
      if (a1) {
        res.canonical.p = C(1.0);
        res.canonical.r = exp(C(2.0) * xs);
        t_of_x = exp(xs) - C(m);
        x_of_t = ln(tm) - C(x0);
        res.extras.emplace_back("delta0", m);
        res.extras.emplace_back("gamma0", kPi + m);
      } else {
        require(m > 1.0, "case2-A2 requires m > 1 so that p stays positive on the interval");
        const Expression u = pow(C(3.0) * xs, C(1.0 / 3.0));
        res.canonical.p = pow(C(3.0) * xs, C(4.0 / 3.0));
        res.canonical.r = exp(C(2.0) * u);
        t_of_x = exp(u) - C(m);
        x_of_t = pow(ln(tm), C(3.0)) / C(3.0) - C(x0);
        const double lm = std::log(m), lb = std::log(kPi + m);
        res.extras.emplace_back("delta0", m * lm * lm);
        res.extras.emplace_back("gamma0", (kPi + m) * lb * lb);
      }
      res.extras.emplace_back("rho", 0.5);
      break;
    }
    case Case2Variant::b: {
      res.case_label = "case2-B";
      require(roots.kind == RootKind::real_distinct,
              "case2-B requires 1 + 4k > 4q0 (discriminant " + disc + ")");
      res.exact = true;
      res.validity.expansion_point = "exact";
      const double rho = branch == Branch::plus ? roots.rho1 : roots.rho2;
      const double d = 2.0 * rho - 1.0;
      res.canonical.p = C(d * d) * pow(xs, C(2.0));
      res.canonical.r = pow(C(d) * xs, C(2.0 / d));
      t_of_x = pow(C(d) * xs, C(1.0 / d)) - C(m);
      x_of_t = pow(tm, C(d)) / C(d) - C(x0);
      res.extras.emplace_back("rho", rho);
      res.extras.emplace_back("delta0", std::pow(m, 2.0 * rho));
      res.extras.emplace_back("gamma0", std::pow(kPi + m, 2.0 * rho));
      break;
    }
    case Case2Variant::c1:
    case Case2Variant::c2: {
      const bool c1 = variant == Case2Variant::c1;
      res.case_label = c1 ? "case2-C1" : "case2-C2";
      require(roots.kind == RootKind::complex,
              res.case_label + " requires 1 + 4k < 4q0 (discriminant " + disc + ")");
      res.exact = false;
      res.validity.expansion_point = "tau = 1";
      const double mu = roots.mu;
      // Guards on the endpoint values of cos (C1) or sin (C2) of mu ln tau.
      for (double tau : {m, kPi + m}) {
        const double ph = mu * std::log(tau);
        const double f = c1 ? std::cos(ph) : std::sin(ph);
        if (std::fabs(f) < 1e-8) {
          const long n = c1 ? std::lround(ph / kPi + 0.5) : std::lround(ph / kPi);
          throw InputError(res.case_label + ": mu ln(" + format_number(tau) +
                           ") hits the excluded value for n = " + std::to_string(n));
        }
      }
      Expression tau;
      if (c1) {
        tau = C(1.0) + xs;
        x_of_t = tm - C(1.0 + x0);
        res.canonical.p = pow(cos(C(mu) * ln(tau)), C(4.0));
      } else {
        require(m > 1.0, "case2-C2 requires m > 1 so that tau = 1 lies outside the interval");
        tau = C(1.0) + pow(C(3.0 / (mu * mu)) * xs, C(1.0 / 3.0));
        x_of_t = C(mu * mu / 3.0) * pow(tm - C(1.0), C(3.0)) - C(x0);
        res.canonical.p = pow(sin(C(mu) * ln(tau)), C(4.0));
      }
      res.canonical.r = pow(tau, C(2.0));
      t_of_x = tau - C(m);
      // Interior zeros of p: mu ln tau = pi (n - 1/2) for C1, n pi for C2.
      std::vector<double> zeros;
      const double lo = mu * std::log(m), hi = mu * std::log(kPi + m);
      const double off = c1 ? 0.5 : 0.0;
      for (long n = std::lround(std::floor(lo / kPi)) - 1; n <= std::lround(std::ceil(hi / kPi)) + 1; ++n) {
        const double ph = kPi * (n - off);
        if (ph > lo && ph < hi) zeros.push_back(std::exp(ph / mu));
      }
      warn_interior_zeros(res, zeros, c1 ? "cos(mu ln tau)" : "sin(mu ln tau)");
      const double worst = std::max(std::fabs(m - 1.0), std::fabs(kPi + m - 1.0));
      if (worst > 0.5) {
        res.validity.warnings.push_back("outside trust region: |tau - 1| reaches " +
                                        format_number(worst) + " > 0.5");
      }
      res.validity.trust_region_t = clip_t(0.5 - m, 1.5 - m);
      const double fm = c1 ? std::cos(lo) : std::sin(lo);
      const double fb = c1 ? std::cos(hi) : std::sin(hi);
      res.extras.emplace_back("mu", mu);
      res.extras.emplace_back("delta0", m * fm * fm);
      res.extras.emplace_back("gamma0", (kPi + m) * fb * fb);
      break;
    }
    case Case2Variant::automatic:
      break;
  }
  finish(res, t_of_x, x_of_t);
  return res;
}

InverseResult case3_build(const PaineSpec& spec, double q0, double r0, double shift,
                          BesselKind kind) {
  require_spec(spec);
  require(q0 > 0.0 && r0 > 0.0, "case3 requires q0 > 0 and r0 > 0");
  const double k = spec.k, m = spec.m;
  const double s = std::sqrt(4.0 * k + 1.0);
  const double nu = 0.5 * s;
  const double kappa = std::sqrt(q0 / r0);  // tau_bar = kappa tau
  const bool j = kind == BesselKind::j;

  InverseResult res;
  res.case_label = j ? "case3-J" : "case3-Y";
  res.exact = false;
  res.canonical.q = C(q0);
  res.canonical.r = C(r0);
  const Expression xs = X() + C(shift);
  const Expression tm = T() + C(m);
  Expression t_of_x, x_of_t;

  const double tb_lo = kappa * m, tb_hi = kappa * (kPi + m);
  const auto zeros = bessel_zeros(kind, nu, 0.5 * tb_lo, tb_hi * 1.01 + 0.1);
  for (double z : zeros) {
    for (double e : {tb_lo, tb_hi}) {
      if (std::fabs(z - e) <= 1e-8) {
        throw InputError(res.case_label + ": tau_bar = " + format_number(e) +
                         " is a zero of the Bessel factor");
      }
    }
  }
  std::vector<double> inside;
  for (double z : zeros) {
    if (z > tb_lo && z < tb_hi) inside.push_back(z / kappa);
  }
  warn_interior_zeros(res, inside, j ? "J_nu(tau_bar)" : "Y_nu(tau_bar)");

  auto z = [&](double v) { return j ? bessel_j(nu, v) : bessel_y(nu, v); };
  res.extras = {{"k", k}, {"m", m}, {"q0", q0}, {"r0", r0}, {j ? "x0" : "x1", shift}, {"nu", nu},
                {"tau_bar_scale", kappa}};

  if (j) {
    res.validity.expansion_point = "tau_bar -> 0";
    const double gt = gamma_triangle(k);
    const double g = 0.5 * gt * std::sqrt(q0 * r0);
    const Expression xbar = pow(C(g) * xs, C(1.0 / (2.0 + s)));
    res.canonical.p = C(4.0 / r0) * pow(xbar, C(2.0)) * pow(besselj(nu, C(2.0) * xbar), C(4.0));
    t_of_x = C(2.0 / kappa) * xbar - C(m);
    x_of_t = pow(C(0.5 * kappa) * tm, C(2.0 + s)) / C(g) - C(shift);
    res.extras.emplace_back("gamma_triangle", gt);
    res.extras.emplace_back("gamma_diamond", 2.0 / kappa * std::pow(g, 1.0 / (2.0 + s)));
    if (tb_hi > 0.5) {
      res.validity.warnings.push_back("outside trust region: tau_bar reaches " +
                                      format_number(tb_hi) + " > 0.5");
    }
    res.validity.trust_region_t = clip_t(0.0, 0.5 / kappa - m);
  } else {
    res.validity.expansion_point = "tau_bar -> infinity";
    const double c = kPi * std::sqrt(q0 * r0);
    res.canonical.p =
        C(kPi * kPi * q0) * pow(xs, C(2.0)) * pow(bessely(nu, C(c) * xs), C(4.0));
    t_of_x = C(kPi * r0) * xs - C(m);
    x_of_t = tm / C(kPi * r0) - C(shift);
    if (tb_lo < 5.0) {
      res.validity.warnings.push_back("outside trust region: tau_bar drops to " +
                                      format_number(tb_lo) + " < 5");
    }
    res.validity.trust_region_t = clip_t(5.0 / kappa - m, kPi);
  }
  const double za = z(tb_lo), zb = z(tb_hi);
  res.extras.emplace_back("tau_bar_min", tb_lo);
  res.extras.emplace_back("tau_bar_max", tb_hi);
  res.extras.emplace_back("delta0", tb_lo * za * za);
  res.extras.emplace_back("gamma0", tb_hi * zb * zb);
  finish(res, t_of_x, x_of_t);
  return res;
}

InverseResult case4_build(const PaineSpec& spec, double c1, std::optional<double> x0_opt) {
  require_spec(spec);
  require(c1 > 0.0, "case4 requires C1 > 0");
  const double k = spec.k, m = spec.m;
  const double x0 = x0_opt.value_or(2.0 * std::sqrt(m / c1));
  InverseResult res;
  res.case_label = "case4";
  res.exact = true;
  res.validity.expansion_point = "exact";
  const Expression xs = X() + C(x0);
  res.canonical.p = C(c1 * c1 * c1 / 8.0) * pow(xs, C(3.0));
  res.canonical.q = C(0.5 * k * c1 * c1 * c1) * xs;
  res.canonical.r = C(std::pow(0.5 * c1, 5.0)) * pow(xs, C(5.0));
  const Expression t_of_x = C(c1 / 4.0) * pow(xs, C(2.0)) - C(m);
  const Expression x_of_t = C(2.0) * sqrt((T() + C(m)) / C(c1)) - C(x0);
  res.extras = {{"k", k},
                {"m", m},
                {"C1", c1},
                {"x0", x0},
                {"C0", c1 * m},
                {"Q0", c1 * c1 * k},
                {"n_q", 0.5},
                {"n_r", 2.5},
                {"delta0", c1 * c1 * m * m},
                {"gamma0", c1 * c1 * (kPi + m) * (kPi + m)}};
  finish(res, t_of_x, x_of_t);
  return res;
}

InverseResult case4_general(const PaineSpec& spec, double c1, double n_r,
                            std::optional<double> x0_opt) {
  require_spec(spec);
  require(c1 > 0.0, "case4-general requires C1 > 0");
  require(n_r > 2.0 && n_r < 3.0, "case4-general requires 2 < n_r < 3");
  const double k = spec.k, m = spec.m;
  const double e = 3.0 - n_r;
  const double x0 = x0_opt.value_or(std::pow(c1, 2.0 - n_r) * std::pow(m, e) / e);
  InverseResult res;
  res.case_label = "case4-general";
  res.exact = true;
  res.validity.expansion_point = "exact";
  const Expression xs = X() + C(x0);
  // t + m as a function of x
  const Expression tm = pow(C(e * std::pow(c1, n_r - 2.0)) * xs, C(1.0 / e));
  const Expression ct = C(c1) * tm;
  res.canonical.p = pow(ct, C(4.0 - n_r));
  res.canonical.q = C(c1 * c1 * k) * pow(ct, C(n_r - 2.0));
  res.canonical.r = pow(ct, C(n_r));
  const Expression t_of_x = tm - C(m);
  const Expression x_of_t = C(std::pow(c1, 2.0 - n_r) / e) * pow(T() + C(m), C(e)) - C(x0);
  res.extras = {{"k", k},
                {"m", m},
                {"C1", c1},
                {"x0", x0},
                {"C0", c1 * m},
                {"Q0", c1 * c1 * k},
                {"n_q", n_r - 2.0},
                {"n_r", n_r},
                {"delta0", c1 * c1 * m * m},
                {"gamma0", c1 * c1 * (kPi + m) * (kPi + m)}};
  finish(res, t_of_x, x_of_t);
  return res;
}

const std::vector<std::string>& case_labels() {
  static const std::vector<std::string> labels = {
      "case1",    "case2-A1", "case2-A2", "case2-B", "case2-C1",
      "case2-C2", "case3-J",  "case3-Y",  "case4",   "case4-general"};
  return labels;
}

namespace {

double need(const std::optional<double>& v, const char* name, const std::string& label) {
  if (!v) throw InputError(label + " requires --" + name);
  return *v;
}

Case2Variant parse_variant(const std::string& s) {
  if (s == "auto") return Case2Variant::automatic;
  if (s == "A1") return Case2Variant::a1;
  if (s == "A2") return Case2Variant::a2;
  if (s == "B") return Case2Variant::b;
  if (s == "C1") return Case2Variant::c1;
  if (s == "C2") return Case2Variant::c2;
  throw InputError("unknown case2 variant '" + s + "'");
}

}  // namespace

InverseResult build_case(const std::string& label, const CaseParams& prm) {
  std::string base = label;
  std::optional<Case2Variant> variant;
  if (label.rfind("case2-", 0) == 0) {
    base = "case2";
    variant = parse_variant(label.substr(6));
  } else if (label == "case2") {
    variant = parse_variant(prm.variant.value_or("auto"));
  }
  const std::string br = prm.branch.value_or("plus");
  if (br != "plus" && br != "minus" && br != "power" && br != "exponential") {
    throw InputError("unknown branch '" + br + "'");
  }

  PaineSpec spec;
  spec.m = prm.m;
  const bool equal_variant =
      variant && (*variant == Case2Variant::a1 || *variant == Case2Variant::a2);
  if (prm.k) {
    spec.k = *prm.k;
  } else if (equal_variant) {
    spec.k = need(prm.q0, "q0", label) - 0.25;
  } else {
    spec.k = 1.0;
  }

  if (base == "case1") {
    const bool k34 = is_k34(spec.k);
    if (!k34 && (br == "power" || br == "exponential")) {
      throw InputError("branch '" + br + "' applies only to k = 3/4");
    }
    const Branch b = (br == "minus" || br == "exponential") ? Branch::minus : Branch::plus;
    const K34Form f = (br == "minus" || br == "exponential") ? K34Form::exponential : K34Form::power;
    return case1_build(spec, prm.r0.value_or(1.0), prm.x0.value_or(0.0), b, f);
  }
  if (br == "power" || br == "exponential") {
    throw InputError("branch '" + br + "' applies only to case1");
  }
  const Branch b = br == "minus" ? Branch::minus : Branch::plus;
  if (base == "case2") {
    return case2_build(spec, need(prm.q0, "q0", label), prm.x0.value_or(0.0), *variant, b);
  }
  if (label == "case3-J" || label == "case3-Y") {
    return case3_build(spec, need(prm.q0, "q0", label), prm.r0.value_or(1.0), prm.x0.value_or(0.0),
                       label == "case3-J" ? BesselKind::j : BesselKind::y);
  }
  if (label == "case4") return case4_build(spec, need(prm.c1, "C1", label), prm.x0);
  if (label == "case4-general") {
    return case4_general(spec, need(prm.c1, "C1", label), need(prm.n_r, "nr", label), prm.x0);
  }
  throw InputError("unknown case label '" + label + "'");
}

}  // namespace slp
