#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace plimit {

// A decreasing limit-shape curve t -> y on (0, support], zero beyond support.
struct ShapeCurve {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> inverse_eval;  // optional closed-form inverse
  double x_exponent = 0.5;                     // r/(1+r)
  double y_exponent = 0.5;                     // 1/(1+r)
  bool unit_area = true;
  double support = kInf;

  double operator()(double t) const { return t >= support ? 0.0 : eval(t); }

  double value_at_zero() const { return eval(std::min(1e-300, support)); }

  // compositional inverse of a decreasing curve; clamps to 0 above the curve's range
  double inverse(double y) const {
    if (inverse_eval) return inverse_eval(y);
    if (y <= 0) return support;
    double hi = std::isinf(support) ? 1.0 : support;
    if (std::isinf(support))
      while (eval(hi) > y) hi *= 2;
    double lo = hi;
    for (int i = 0; i < 1100 && (*this)(lo) < y; ++i) lo *= 0.5;
    if ((*this)(lo) < y) return 0.0;
    return bisect([&](double t) { return (*this)(t) - y; }, lo, hi);
  }

  double area() const {
    auto f = [this](double t) { return (*this)(t); };
    if (std::isinf(support)) return integrate_half_line(f);
    return integrate_singular(f, 0.0, support);
  }
};

// Measures on [0, inf]: mass at 0, mass at infinity, and a monotone density.
struct ShapeTriple {
  double mass_zero = 0;
  double mass_inf = 0;
  std::function<double(double)> density;
  double density_support = kInf;

  double total() const {
    double body = 0;
    if (density) {
      body = std::isinf(density_support) ? integrate_half_line(density)
                                         : integrate_singular(density, 0.0, density_support);
    }
    return mass_zero + mass_inf + body;
  }
};

// ---------------------------------------------------------------------------------------------
// General unrestricted and restricted shapes

// phi(y; r, B, a) = E_a(exp(-c B y^r)), c = d(r, B, a)
inline double phi_density(double y, double r, double B, double a = kInf) {
  const double c = const_d(r, B, a);
  return mean_rate(c * B * std::pow(y, r), a);
}

inline double phi_rBa(double t, double r, double B, double a) {
  if (!(t > 0)) throw std::domain_error("phi_rBa: t must be positive");
  const double c = const_d(r, B, a);
  auto f = [=](double y) { return mean_rate(c * B * std::pow(y, r), a); };
  return integrate_tail(f, std::pow(t / B, 1.0 / r));
}

inline double phi_rB(double t, double r, double B) { return phi_rBa(t, r, B, kInf); }

inline ShapeCurve phi_rB_curve(double r, double B, double a = kInf) {
  ShapeCurve s;
  s.name = "phi(r=" + std::to_string(r) + ",B=" + std::to_string(B) + (std::isinf(a) ? "" : ",a=" + std::to_string(a)) + ")";
  s.eval = [=](double t) { return phi_rBa(t, r, B, a); };
  s.x_exponent = r / (1 + r);
  s.y_exponent = 1 / (1 + r);
  return s;
}

// classical closed forms
inline double classic_c() { return pi / std::sqrt(6.0); }
inline double classic_d() { return pi / std::sqrt(12.0); }
inline double Phi(double t) {
  const double ct = classic_c() * t;
  // expm1 keeps relative accuracy near the axis, log1p in the tail
  return (ct < 1 ? -std::log(-std::expm1(-ct)) : -std::log1p(-std::exp(-ct))) / classic_c();
}
inline double Phi_inv(double y) { return Phi(y); }  // the classical curve is symmetric
inline double Psi(double t) { return std::log1p(std::exp(-classic_d() * t)) / classic_d(); }
inline double Psi_inv(double y) {
  // e^{d y} - e^{-d x} = 1
  const double v = std::expm1(classic_d() * y);
  return v <= 0 ? kInf : -std::log(v) / classic_d();
}

inline ShapeCurve classic_phi_curve() {
  ShapeCurve s;
  s.name = "Phi";
  s.eval = Phi;
  s.inverse_eval = Phi_inv;
  return s;
}

inline ShapeCurve classic_psi_curve() {
  ShapeCurve s;
  s.name = "Psi";
  s.eval = Psi;
  s.inverse_eval = [](double y) { return y >= Psi(0) ? 0.0 : Psi_inv(y); };
  return s;
}

// odd distinct parts: (1/sqrt2) Psi(t/sqrt2)
inline double odd_distinct_shape(double t) { return Psi(t / std::sqrt(2.0)) / std::sqrt(2.0); }

// -y' from the differential form: x^{1/r-1}/(r B^{1/r}) e^{-cx}/(1-e^{-cx})
inline double shape_slope(double x, double r, double B) {
  const double c = const_d(r, B);
  return std::pow(x, 1 / r - 1) / (r * std::pow(B, 1 / r)) * mean_rate(c * x);
}

// Phi(t; r, B, K) = int_0^inf K(t, y, phi(y; r, B, a)) dy, breakpoints of K in y supplied by the caller
inline double transfer_shape(double t, double r, double B, double a,
                             const std::function<double(double, double, double)>& K,
                             const std::vector<double>& breakpoints = {}) {
  auto f = [&](double y) { return y <= 0 ? 0.0 : K(t, y, phi_density(y, r, B, a)); };
  std::vector<double> pts{0.0};
  for (double b : breakpoints)
    if (b > 0) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate_singular(f, pts[i], pts[i + 1]);
  return total + integrate_tail(f, pts.back());
}

// ---------------------------------------------------------------------------------------------
// Romik's pair: no parts differ by exactly one (A), no part has multiplicity one (B)

inline double romik_a_const() { return pi / 3; }

inline double romik_A(double x) {
  const double a = romik_a_const(), e = std::exp(-a * x);
  // (1 + e + sqrt(1 + 2e - 3e^2)) / (2(1 - e)) written as 1 + (...) to keep the tail accurate
  const double om = -std::expm1(-a * x);
  const double root = std::sqrt((1 - e) * (1 + 3 * e));
  return std::log1p((2 * e + root - (1 - e)) / (2 * om)) / (2 * a);
}

inline double romik_B(double x) {
  const double a = romik_a_const(), e = std::exp(-a * x);
  return std::log1p(e * e / -std::expm1(-a * x)) / a;
}

inline ShapeCurve romik_A_curve() {
  ShapeCurve s;
  s.name = "romik-A";
  s.eval = romik_A;
  return s;
}

inline ShapeCurve romik_B_curve() {
  ShapeCurve s;
  s.name = "romik-B";
  s.eval = romik_B;
  return s;
}

// ---------------------------------------------------------------------------------------------
// Nonnegative r-th differences: conjugate shape int_t^inf (y-t)^{r-1}/(r-1)! E(e^{-c y^r / r!}) dy

inline double rth_inverse(double t, int r) {
  if (!(t > 0)) throw std::domain_error("rth_inverse: t must be positive");
  const double fact = std::tgamma(r + 1.0);
  const double c = const_d(r, 1 / fact);
  const double fm1 = std::tgamma(static_cast<double>(r));
  auto f = [=](double y) { return std::pow(y - t, r - 1) / fm1 * mean_rate(c * std::pow(y, r) / fact); };
  return integrate_tail(f, t);
}

inline double convex_constant() { return 0.5 * std::cbrt(pi) * std::pow(boost::math::zeta(1.5), 2.0 / 3.0); }

inline double convex_inverse(double x) {
  if (!(x > 0)) throw std::domain_error("convex_inverse: x must be positive");
  const double c = convex_constant();
  auto f = [=](double y) { return (y - x) * mean_rate(c * 0.5 * y * y); };
  return integrate_tail(f, x);
}

inline ShapeCurve rth_inverse_curve(int r) {
  ShapeCurve s;
  s.name = "rth-inverse(" + std::to_string(r) + ")";
  s.eval = [r](double t) { return rth_inverse(t, r); };
  s.x_exponent = 1.0 / (1 + r);
  s.y_exponent = r / (1.0 + r);
  return s;
}

// Riemann-sum form at finite n: (beta/n) sum_{j >= beta x} (j - x beta + 1) E(x_n^{binom(j+1,2)})
inline double convex_inverse_riemann(double x, double n) {
  const double c = convex_constant();
  const double alpha = std::pow(n, 2.0 / 3), beta = std::pow(n, 1.0 / 3);
  double sum = 0;
  for (double j = std::ceil(beta * x);; j += 1) {
    const double z = c * j * (j + 1) / 2 / alpha;
    const double term = (j - x * beta + 1) * mean_rate(z);
    sum += term;
    if (z > 40 && term < 1e-18 * sum) break;
  }
  return beta / n * sum;
}

// ---------------------------------------------------------------------------------------------
// Lebesgue identity class

inline double lebesgue_m(double x) {
  if (x < 0) throw std::domain_error("lebesgue_m: x < 0");
  const double e = std::exp(-pi * x / 4);
  return 2 / pi * std::log((1 + e + std::sqrt(1 + 6 * e + e * e)) / 2);
}

inline double lebesgue_eta0() { return 2 / pi * std::log1p(1 / std::sqrt(2.0)); }
inline double lebesgue_s0() { return 3 / pi * std::log(2.0); }
inline double lebesgue_x0() { return lebesgue_eta0() + lebesgue_s0() / 3; }

inline double lebesgue_m_inv(double x) {
  if (x < 0 || x > lebesgue_x0() + 1e-12) throw std::domain_error("lebesgue_m_inv: x outside [0, x0]");
  return 4 / pi * std::log((std::exp(-pi * x / 2) + 1) / std::expm1(pi * x / 2));
}

inline double lebesgue_general(int l, int k, double t) {
  if (l < 1 || l >= k) throw std::domain_error("lebesgue_general: need 1 <= l < k");
  if (t < 0) throw std::domain_error("lebesgue_general: t < 0");
  const double s = std::sqrt(2.0 * k);
  const double e1 = std::exp(-pi * t / (2 * s)), e2 = std::exp(-pi * t / s);
  return 2 * std::sqrt(2.0) / (pi * std::sqrt(static_cast<double>(k))) *
         std::log(0.5 * (1 + e1 + std::sqrt(1 + e2 + 6 * e1)));
}

inline ShapeCurve lebesgue_curve() {
  ShapeCurve s;
  s.name = "lebesgue-m";
  s.eval = lebesgue_m;
  s.inverse_eval = [](double y) {
    if (y >= lebesgue_m(0)) return 0.0;
    return bisect([y](double x) { return lebesgue_m(x) - y; }, 0.0, std::max(1.0, lebesgue_m_inv(std::min(y, lebesgue_x0())) * 2 + 1));
  };
  return s;
}

inline double parts_constant() { return lebesgue_m(0); }

inline double durfee_constant() {
  const double x0 = lebesgue_x0();
  return bisect_newton([](double x) { return lebesgue_m_inv(x) - x; },
                       [](double x) {
                         const double h = 1e-7;
                         return (lebesgue_m_inv(x + h) - lebesgue_m_inv(x - h)) / (2 * h) - 1;
                       },
                       1e-3, x0);
}

// fixpoint f(x) = x of a decreasing curve
inline double durfee_of(const ShapeCurve& f) {
  double hi = 1.0;
  while (f(hi) > hi) hi *= 2;
  double lo = hi;
  while (f(lo) < lo && lo > 1e-12) lo /= 2;
  if (f(lo) < lo) throw std::domain_error("durfee_of: no fixpoint in bracket");
  return bisect([&](double x) { return f(x) - x; }, lo, hi);
}

// real root of -1 + 2y - 9y^2 - 7y^3 - 2y^4 + y^5 and the log expression evaluated there
inline double lebesgue_quintic_root() {
  auto p = [](double y) { return -1 + y * (2 + y * (-9 + y * (-7 + y * (-2 + y)))); };
  auto dp = [](double y) { return 2 + y * (-18 + y * (-21 + y * (-8 + 5 * y))); };
  return bisect_newton(p, dp, 3.0, 6.0);
}

inline double durfee_from_quintic(double y) {
  return 4 / pi * std::log((5 - 30 * y - 24 * y * y - 9 * y * y * y + 4 * y * y * y * y) / 14);
}

// ---------------------------------------------------------------------------------------------
// Minimal difference d

struct DiffdConstants {
  double y_d, gamma, w, c;
};

// c^2 = Li2(1 - e^{-c z})
inline double romik_c(double z) {
  if (!(z > 0)) throw std::domain_error("romik_c: z must be positive");
  auto f = [z](double c) { return c * c - dilog(-std::expm1(-c * z)); };
  return bisect(f, 1e-12, pi / std::sqrt(6.0));
}

inline DiffdConstants diffd_constants(int d) {
  if (d < 1) throw std::domain_error("diffd_constants: d >= 1");
  const double yd = bisect([d](double y) { return std::pow(1 - y, d) - y; }, 0.0, 1.0);
  const double l = std::log1p(-yd);
  const double gamma = -l / std::sqrt(dilog(yd) + 0.5 * d * l * l);
  const double w = std::sqrt(1 - 0.5 * d * gamma * gamma);
  return {yd, gamma, w, romik_c(gamma / w)};
}

inline double diffdk_inverse(int d, double z, double x) {
  if (!(x > 0)) throw std::domain_error("diffdk_inverse: x must be positive");
  const double w2 = 1 - 0.5 * d * z * z;
  if (!(z > 0) || !(w2 > 0)) throw std::domain_error("diffdk_inverse: inadmissible z");
  const double w = std::sqrt(w2);
  const double c = romik_c(z / w);
  const double k = c / w;
  // (w/c) log[(e^{k z d} - e^{k z (d-1)}) e^{-k d x} / (1 - e^{-k x})]
  return (k * z * (d - 1) + std::log(std::expm1(k * z)) - k * d * x - std::log(-std::expm1(-k * x))) / k;
}

inline double diffd_inverse(int d, double x) { return diffdk_inverse(d, diffd_constants(d).gamma, x); }

// area between the conjugate curve and the axes, over (0, z)
inline double diffdk_area(int d, double z) {
  return integrate_singular([=](double x) { return diffdk_inverse(d, z, x); }, 0.0, z);
}

// ---------------------------------------------------------------------------------------------
// Even parts with bounded largest part / bounded number of parts, and the (m, r) generalization

struct BoundedShapes {
  double m, r, b;
  double cF, cG;  // normalizing constants

  // B = m^r, y_max = b
  double phiF(double y, double c) const { return mean_rate(c * std::pow(m, r) * std::pow(y, r)); }

  double F(double t) const {
    const double top = std::pow(m, r) * std::pow(b, r);
    if (t >= top) return 0.0;
    const double lo = std::pow(t / std::pow(m, r), 1 / r);
    return integrate([&](double y) { return phiF(y, cF); }, lo, b);
  }

  double G(double t) const {
    if (std::isnan(cG)) throw std::domain_error("bounded G: no normalizing constant for r > 1 (area diverges at 0)");
    if (t >= b) return 0.0;
    return std::pow(m, r) * integrate([&](double y) { return phiF(y, cG); }, t, b);
  }
};

inline BoundedShapes bounded_shapes(double m, double r, double b) {
  if (!(b > 0) || m < 2 || r < 1) throw std::domain_error("bounded_shapes: parameters out of range");
  BoundedShapes s{m, r, b, 0, 0};
  const double M = std::pow(m, r);
  // int_0^{M b^r} F = int_0^b M r y^r phi(y) dy ; int_0^b G = M int_0^b y phi(y) dy
  // both integrands stay bounded at 0, so Gauss-Kronrod never touches the endpoint
  auto areaF = [&](double c) {
    return integrate([&](double y) { return M * r * std::pow(y, r) * s.phiF(y, c); }, 0.0, b);
  };
  auto areaG = [&](double c) {
    return integrate([&](double y) { return M * y * s.phiF(y, c); }, 0.0, b);
  };
  auto solve = [&](auto area) {
    double lo = 1e-6, hi = 1.0;
    for (int i = 0; area(hi) > 1; ++i) {
      if (i > 60) throw std::runtime_error("bounded_shapes: normalization did not bracket");
      hi *= 2;
    }
    for (int i = 0; area(lo) < 1; ++i) {
      if (i > 60) throw std::runtime_error("bounded_shapes: normalization did not bracket");
      lo /= 2;
    }
    return bisect([&](double c) { return area(c) - 1; }, lo, hi);
  };
  s.cF = solve(areaF);
  // for r > 1 the G integrand behaves like y^{1-r}/c near 0 and no c normalizes it
  s.cG = r == 1 ? solve(areaG) : std::nan("");
  return s;
}

inline double bounded_F(double b, double t) { return bounded_shapes(2, 1, b).F(t); }
inline double bounded_G(double b, double t) { return bounded_shapes(2, 1, b).G(t); }
inline double bounded_Fmr(double m, double r, double b, double t) { return bounded_shapes(m, r, b).F(t); }
inline double bounded_Gmr(double m, double r, double b, double t) { return bounded_shapes(m, r, b).G(t); }

// ---------------------------------------------------------------------------------------------
// Limit-shape identities from the odd/distinct bijections

// (1/sqrt2) Phi(t/sqrt2) against 1/2 sum_{i>=1} Psi(2^{i-1} t)
inline double glaisher_identity_residual(double t) {
  const double lhs = Phi(t / std::sqrt(2.0)) / std::sqrt(2.0);
  double rhs = 0;
  for (double s = t;; s *= 2) {
    const double term = 0.5 * Psi(s);
    rhs += term;
    if (term < 1e-12 * rhs * 1e-5) break;
  }
  return std::abs(lhs - rhs);
}

inline double glaisher_identity_check(const std::vector<double>& grid) {
  double m = 0;
  for (double t : grid) m = std::max(m, glaisher_identity_residual(t));
  return m;
}

// (m-1) sum_k m^{r(k-1)-k} Phi(t m^{r(k-1)}; r, 1, m^r) against Phi(t; r, (m/(m-1))^r)
inline double stanton_identity_residual(int r, int m, double t) {
  const double a = std::pow(m, r);
  double lhs = 0;
  for (int k = 1;; ++k) {
    const double s = t * std::pow(m, r * (k - 1));
    const double term = (m - 1) * std::pow(m, r * (k - 1) - k) * phi_rBa(s, r, 1, a);
    lhs += term;
    if (term < 1e-17 || (k > 3 && term < 1e-12 * lhs * 1e-5)) break;
  }
  const double rhs = phi_rB(t, r, std::pow(m / (m - 1.0), r));
  return std::abs(lhs - rhs);
}

inline double stanton_identity_check(int r, int m, const std::vector<double>& grid) {
  double mx = 0;
  for (double t : grid) mx = std::max(mx, stanton_identity_residual(r, m, t));
  return mx;
}

}  // namespace plimit
