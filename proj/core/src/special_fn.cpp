#include "slp/special_fn.hpp"

#include <cmath>
#include <numbers>

#include "slp/errors.hpp"

namespace slp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
// below this the Hankel expansion truncates above 1e-14
constexpr double kHankelMin = 25.0;

// Lanczos, g = 7, n = 9.
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Taylor coefficients of 1/Gamma(z) about 0: 1/Gamma(z) = sum_{k>=1} c_k z^k.
// kRgamma[i] holds c_{i+1}.
constexpr double kRgamma[30] = {
    1.00000000000000000e+00,  5.77215664901532866e-01,  -6.55878071520253902e-01,
    -4.20026350340952370e-02, 1.66538611382291479e-01,  -4.21977345555443334e-02,
    -9.62197152787697303e-03, 7.21894324666309990e-03,  -1.16516759185906517e-03,
    -2.15241674114950975e-04, 1.28050282388116196e-04,  -2.01348547807882387e-05,
    -1.25049348214267063e-06, 1.13302723198169593e-06,  -2.05633841697760707e-07,
    6.11609510448141609e-09,  5.00200764446922295e-09,  -1.18127457048702004e-09,
    1.04342671169110054e-10,  7.78226343990507081e-12,  -3.69680561864220598e-12,
    5.10037028745447575e-13,  -2.05832605356650664e-14, -5.34812253942301782e-15,
    1.22677862823826084e-15,  -1.18125930169745883e-16, 1.18669225475160037e-18,
    1.41238065531803186e-18,  -2.29874568443537022e-19, 1.71440632192733743e-20,
};

double lanczos_gamma(double x) {
  // x >= 0.5
  const double z = x - 1.0;
  double a = kLanczos[0];
  const double t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

// Hankel large-argument expansion for order nu: returns J and Y.
void hankel(double nu, double x, double* j, double* y) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::fabs(next) > std::fabs(last) && k > 2) break;  // asymptotic series turned
    term = next;
    last = term;
    const int s = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += s * term;
    } else {
      q += s * term;
    }
    if (std::fabs(term) < kEps) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double pre = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi), sn = std::sin(chi);
  *j = pre * (p * c - q * sn);
  *y = pre * (p * sn + q * c);
}

double j_series(double nu, double x) {
  const double h = 0.5 * x;
  const double h2 = -h * h;
  double term = std::pow(h, nu) / gamma_fn(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= h2 / (k * (k + nu));
    sum += term;
    if (std::fabs(term) < kEps * std::fabs(sum) && k > h) break;
  }
  return sum;
}

// Temme's series for Y_mu and Y_{mu+1}, |mu| <= 1/2.
void temme_y(double mu, double x, double* ymu, double* ymu1) {
  // gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
  double gampl = 0.0, gammi = 0.0, gam1 = 0.0, gam2 = 0.0;
  double pw = 1.0, m2 = 1.0;
  for (int j = 0; j < 30; ++j) {
    gampl += kRgamma[j] * pw;
    gammi += (j % 2 == 0 ? pw : -pw) * kRgamma[j];
    pw *= mu;
  }
  for (int j = 0; j + 1 < 30; j += 2) {
    gam2 += kRgamma[j] * m2;
    gam1 -= kRgamma[j + 1] * m2;
    m2 *= mu * mu;
  }
  const double x2 = 0.5 * x;
  const double pimu = kPi * mu;
  const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
  double ff = 2.0 / kPi * fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  e = std::exp(e);
  double p = e / (gampl * kPi);
  double q = 1.0 / (e * kPi * gammi);
  const double pimu2 = 0.5 * pimu;
  const double fact3 = std::fabs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
  const double r = kPi * pimu2 * fact3 * fact3;
  double c = 1.0;
  d = -x2 * x2;
  double sum = ff + r * q;
  double sum1 = p;
  for (int i = 1; i < 1000; ++i) {
    ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * (ff + r * q);
    sum += del;
    const double del1 = c * p - i * del;
    sum1 += del1;
    if (std::fabs(del) < (1.0 + std::fabs(sum)) * kEps && i > x2) break;
  }
  *ymu = -sum;
  *ymu1 = -sum1 * 2.0 / x;
}

// Steed's method, x >= 2: CF1 gives J'/J at order nu, downward recurrence to
// mu = nu - round(nu), CF2 gives (J'+iY')/(J+iY) at mu; Y recurs upward.
void steed_jy(double nu, double x, double* jnu, double* ynu) {
  constexpr double kTiny = 1e-300;
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double xi = 1.0 / x, xi2 = 2.0 * xi;

  int sign = 1;
  double h = std::max(nu * xi, kTiny);
  double b = xi2 * nu, d = 0.0, c = h;
  int i = 1;
  for (; i < 100000; ++i) {
    b += xi2;
    d = b - d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) sign = -sign;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  if (i == 100000) throw NumericalError("besselj: continued fraction did not converge");

  double jl = sign * kTiny, jpl = h * jl;
  const double jl1 = jl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double t = fact * jl + jpl;
    fact -= xi;
    jpl = fact * t - jl;
    jl = t;
  }
  if (jl == 0.0) jl = kEps;
  const double f = jpl / jl;

  double a = 0.25 - mu * mu;
  double p = -0.5 * xi, q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact, ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
  double t = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = t;
  for (i = 2; i < 100000; ++i) {
    a += 2.0 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::fabs(dr) + std::fabs(di) < kTiny) dr = kTiny;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::fabs(cr) + std::fabs(ci) < kTiny) cr = kTiny;
    den = dr * dr + di * di;
    dr /= den;
    di = -di / den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    t = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = t;
    if (std::fabs(dlr - 1.0) + std::fabs(dli) < kEps) break;
  }
  if (i == 100000) throw NumericalError("bessely: continued fraction did not converge");

  const double gam = (p - f) / q;
  double jmu = std::sqrt(xi2 / kPi / ((p - f) * gam + q));
  jmu = std::copysign(jmu, jl);
  double ymu = jmu * gam;
  const double ymup = ymu * (p + q / gam);
  double y1 = mu * xi * ymu - ymup;
  *jnu = jl1 * (jmu / jl);
  for (int k = 1; k <= nl; ++k) {
    const double y2 = (mu + k) * xi2 * y1 - ymu;
    ymu = y1;
    y1 = y2;
  }
  *ynu = ymu;
}

void require_args(double nu, double x, const char* name) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError(name, nu, "order must be non-negative");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(name, x, "argument must be positive");
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma", x, "argument not finite");
  if (x <= 0.0 && std::trunc(x) == x) throw DomainError("gamma", x, "pole");
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

double bessel_j(double nu, double x) {
  require_args(nu, x, "besselj");
  if (x < 2.0) return j_series(nu, x);
  if (x < std::max(kHankelMin, 2.0 * nu)) {
    double j = 0.0, y = 0.0;
    steed_jy(nu, x, &j, &y);
    return j;
  }
  const double base = std::floor(nu);
  const double nu0 = nu - base;
  double j0 = 0.0, j1 = 0.0, y = 0.0;
  hankel(nu0, x, &j0, &y);
  if (base == 0.0) return j0;
  hankel(nu0 + 1.0, x, &j1, &y);
  // upward recurrence is stable for nu < x
  for (int k = 1; k < static_cast<int>(base); ++k) {
    const double o = nu0 + k;
    const double j2 = 2.0 * o / x * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return j1;
}

double bessel_y(double nu, double x) {
  require_args(nu, x, "bessely");
  double y0 = 0.0, y1 = 0.0, start = 0.0;
  int steps = 0;
  if (x >= 2.0 && x < kHankelMin) {
    double j = 0.0;
    steed_jy(nu, x, &j, &y0);
    return y0;
  }
  if (x < 2.0) {
    const double nl = std::floor(nu + 0.5);
    const double mu = nu - nl;
    temme_y(mu, x, &y0, &y1);
    start = mu;
    steps = static_cast<int>(nl);
  } else {
    const double base = std::floor(nu);
    const double nu0 = nu - base;
    double j = 0.0;
    hankel(nu0, x, &j, &y0);
    if (base == 0.0) return y0;
    hankel(nu0 + 1.0, x, &j, &y1);
    start = nu0;
    steps = static_cast<int>(base);
  }
  if (steps == 0) return y0;
  for (int k = 1; k < steps; ++k) {
    const double o = start + k;
    const double y2 = 2.0 * o / x * y1 - y0;
    y0 = y1;
    y1 = y2;
  }
  return y1;
}

std::vector<double> bessel_zeros(BesselKind kind, double nu, double lo, double hi) {
  auto f = [&](double x) { return kind == BesselKind::j ? bessel_j(nu, x) : bessel_y(nu, x); };
  std::vector<double> zeros;
  const double start = std::max(lo, 1e-3);
  if (!(hi > start)) return zeros;
  const double step = 0.05;
  double xa = start;
  double fa = f(xa);
  while (xa < hi) {
    const double xb = std::min(xa + step, hi);
    const double fb = f(xb);
    if (fb == 0.0) {
      zeros.push_back(xb);
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      double l = xa, r = xb, fl = fa;
      for (int it = 0; it < 200 && r - l > 1e-15 * (1.0 + r); ++it) {
        const double m = 0.5 * (l + r);
        const double fm = f(m);
        if (fm == 0.0) {
          l = r = m;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      zeros.push_back(0.5 * (l + r));
    }
    xa = xb;
    fa = fb;
  }
  return zeros;
}

double BowmanParams::q_bar() const {
  const double d = p_bar * p_bar - beta_bar_sq;
  if (d < 0.0) throw InputError("complex Bessel order: p_bar^2 < beta_bar^2");
  return std::sqrt(d);
}

double bessel_ode_residual(const BowmanParams& bp, double c1, double c2, double x) {
  if (c1 == 0.0 && c2 == 0.0) return 0.0;
  const double order = bp.q_bar() / bp.r_bar;
  auto y = [&](double s) {
    const double z = bp.alpha_bar * std::pow(s, bp.r_bar) / bp.r_bar;
    double v = 0.0;
    if (c1 != 0.0) v += c1 * bessel_j(order, z);
    if (c2 != 0.0) v += c2 * bessel_y(order, z);
    return std::pow(s, -bp.p_bar) * v;
  };
  return bowman_residual(bp, y, x);
}

}  // namespace slp
