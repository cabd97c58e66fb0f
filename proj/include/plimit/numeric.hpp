#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/roots.hpp>

#include <unsupported/Eigen/Polynomials>

namespace plimit {

inline constexpr double pi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// d(r, B, a); a = kInf gives the unbounded-multiplicity limit
inline double const_d(double r, double B, double a = kInf) {
  if (!(r >= 1) || !(B > 0) || !(a >= 2)) throw std::invalid_argument("const_d: parameter out of range");
  const double trunc = std::isinf(a) ? 1.0 : 1.0 - std::pow(a, -1.0 / r);
  const double inner = trunc * boost::math::zeta(1.0 + 1.0 / r) * boost::math::tgamma(1.0 + 1.0 / r) /
                       (r * std::pow(B, 1.0 / r));
  return std::pow(inner, r / (1.0 + r));
}

// Lanczos approximation (g = 7, 9 terms) for complex arguments
inline std::complex<double> gamma_complex(std::complex<double> z) {
  static constexpr double g = 7.0;
  static constexpr double coef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                     771.32342877765313,   -176.61502916214059,    12.507343278686905,
                                     -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
  z -= 1.0;
  std::complex<double> x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + g + 0.5;
  return std::sqrt(2 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// Li_2(x) for x <= 1
inline double dilog(double x) {
  if (x > 1.0) throw std::domain_error("dilog: x > 1");
  if (x == 1.0) return pi * pi / 6.0;
  if (x == 0.0) return 0.0;
  if (x < 0.0) {
    // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, maps (-inf,0) into (0,1)
    const double l = std::log1p(-x);
    return -dilog(x / (x - 1.0)) - 0.5 * l * l;
  }
  if (x > 0.5) return pi * pi / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
  double sum = 0, xk = x;
  for (int k = 1;; ++k) {
    const double term = xk / (static_cast<double>(k) * k);
    sum += term;
    // remaining tail <= x^{k+1} / ((k+1)^2 (1-x))
    if (xk * x / ((k + 1.0) * (k + 1.0) * (1.0 - x)) < 1e-17 * std::max(sum, 1e-300)) break;
    xk *= x;
  }
  return sum;
}

// E(x) = x/(1-x) and the truncated-geometric mean E_a(x) = sum_{j<a} j x^j / sum_{j<a} x^j
inline double mean_geometric(double x) { return x / (1.0 - x); }

inline double mean_truncated(double x, double a) {
  if (std::isinf(a)) return mean_geometric(x);
  if (x <= 0) return 0.0;
  // x/(1-x) - a x^a/(1-x^a), rewritten stably near x = 1
  const double xa = std::pow(x, a);
  if (1.0 - x < 1e-6) return (a - 1.0) / 2.0;
  return x / (1.0 - x) - a * xa / (1.0 - xa);
}

// Same means in terms of the rate s = -log x, accurate as s -> 0
inline double mean_rate(double s, double a = kInf) {
  if (std::isinf(s)) return 0.0;
  if (std::isinf(a)) return 1.0 / std::expm1(s);
  if (a * s < 1e-3) return (a - 1) / 2 - s * (a * a - 1) / 12 + s * s * s * (a * a * a * a - 1) / 720;
  return 1.0 / std::expm1(s) - a / std::expm1(a * s);
}

// Adaptive Gauss-Kronrod on a finite interval
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  if (a == b) return 0.0;
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, tol, &err);
}

// Endpoint singularities (log-type) on a finite interval.  Abscissae within a relative 1e-12
// of an endpoint may overflow; their weight is far below double resolution, so they count as 0.
inline double integrate_singular(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  if (a == b) return 0.0;
  const double guard = 1e-12 * std::abs(b - a);
  auto g = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v) && (x - a < guard || b - x < guard)) return 0.0;
    return v;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(g, a, b, tol);
}

// Integral over [a, inf) of a decaying nonnegative integrand; the range is cut where the
// integrand drops below cutoff and the pieces integrated with Gauss-Kronrod.
inline double integrate_tail(const std::function<double(double)>& f, double a, double cutoff = 1e-14,
                             double tol = 1e-13) {
  double h = 1.0;
  double lo = a, total = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const double hi = lo + h;
    total += integrate(f, lo, hi, tol);
    if (std::abs(f(hi)) < cutoff && std::abs(f(hi + h)) < cutoff) return total;
    lo = hi;
    h *= 1.5;
  }
  throw std::runtime_error("integrate_tail: integrand does not decay");
}

// Integral over (0, inf) with a possible integrable singularity at 0
inline double integrate_half_line(const std::function<double(double)>& f, double tol = 1e-12) {
  double head = integrate_singular(f, 0.0, 1.0, tol);
  return head + integrate_tail(f, 1.0);
}

// Bracketed bisection to machine resolution of the bracket.  f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 0) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::domain_error("bisect: root not bracketed");
  auto term = [tol](double a, double b) {
    return std::abs(b - a) <= std::max(tol, 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)));
  };
  auto [a, b] = boost::math::tools::bisect(f, lo, hi, term);
  return 0.5 * (a + b);
}

// Bisection followed by one Newton step when the derivative is available
inline double bisect_newton(const std::function<double(double)>& f, const std::function<double(double)>& df,
                            double lo, double hi) {
  double x = bisect(f, lo, hi);
  const double d = df(x);
  if (d != 0 && std::isfinite(d)) {
    const double y = x - f(x) / d;
    if (y > std::min(lo, hi) && y < std::max(lo, hi) && std::abs(f(y)) <= std::abs(f(x))) x = y;
  }
  return x;
}

// Expand the upper end until f changes sign, then bisect
inline double solve_increasing_bracket(const std::function<double(double)>& f, double lo, double hi) {
  const double flo = f(lo);
  for (int i = 0; i < 200 && (f(hi) > 0) == (flo > 0); ++i) hi *= 2;
  return bisect(f, lo, hi);
}

// Roots of a polynomial given ascending coefficients
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& ascending) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(ascending.size()));
  for (std::size_t i = 0; i < ascending.size(); ++i) c[static_cast<Eigen::Index>(i)] = ascending[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(c);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) out.push_back(solver.roots()[i]);
  return out;
}

// Sup of |f - g| over a grid
template <class F, class G>
double sup_diff(F&& f, G&& g, const std::vector<double>& grid) {
  double m = 0;
  for (double t : grid) m = std::max(m, std::abs(f(t) - g(t)));
  return m;
}

inline std::vector<double> linspace_step(double a, double b, double step) {
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= n; ++i) g.push_back(a + static_cast<double>(i) * step);
  return g;
}

}  // namespace plimit
