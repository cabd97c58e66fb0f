#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"
#include "shape.hpp"

namespace plimit {

// A strictly monotone curve on an open interval (lo, hi); hi may be infinite.
// at_lo / at_hi are the limiting values at the two ends (possibly infinite).
struct MonotoneCurve {
  std::string name;
  double lo = 0, hi = kInf;
  double at_lo = kInf, at_hi = 0;
  std::function<double(double)> eval;
  std::function<double(double)> inv;  // closed-form inverse when known
  std::optional<double> designated_area;

  bool decreasing() const { return at_lo > at_hi; }
  bool empty() const { return !(hi > lo); }

  double operator()(double x) const {
    const double eps = 1e-12 * std::max(1.0, std::abs(x));
    if (x < lo - eps || x > hi + eps) throw std::domain_error(name + ": " + std::to_string(x) + " outside domain");
    // points at or just beyond an end take the limiting value there
    if (x <= lo) return at_lo;
    if (x >= hi) return at_hi;
    return eval(x);
  }

  double value_or_nan(double x) const {
    if (empty() || x < lo || x > hi) return std::nan("");
    return (*this)(x);
  }

  double range_lo() const { return std::min(at_lo, at_hi); }
  double range_hi() const { return std::max(at_lo, at_hi); }

  // solve f(x) = y
  double inverse_at(double y) const {
    if (y <= range_lo()) return decreasing() ? hi : lo;
    if (y >= range_hi()) return decreasing() ? lo : hi;
    if (inv) return inv(y);
    const double sign = decreasing() ? 1 : -1;
    // no endpoint clamping here: the root may lie closer to lo than the clamp width
    auto g = [&](double x) {
      if (x <= lo) return sign * (at_lo - y);
      if (x >= hi) return sign * (at_hi - y);
      return sign * (eval(x) - y);
    };
    double a = lo, b = hi;
    if (!std::isfinite(b)) {
      b = std::max(1.0, 2 * std::abs(lo) + 1);
      for (int i = 0; g(b) > 0; ++i) {
        if (i > 200) throw std::runtime_error(name + ": inverse bracket not found");
        a = b;
        b *= 2;
      }
    }
    if (g(a) < 0) {
      // the curve blows up at lo faster than the clamped end value resolves; walk toward lo
      double step = (b - a) / 2;
      while (g(a + step) < 0) {
        b = a + step;
        step /= 16;
        if (step < 1e-300) return a;
      }
      a += step;
    }
    return bisect(g, a, b);
  }

  // bisection inverses are only smooth to ~1e-15, so the quadrature tolerance stays well above that
  double area() const {
    if (empty()) return 0;
    auto f = [this](double x) { return (*this)(x); };
    if (std::isfinite(hi)) return integrate_singular(f, lo, hi, 1e-10);
    return integrate_singular(f, lo, lo + 1, 1e-10) + integrate_tail(f, lo + 1, 1e-14, 1e-10);
  }
};

// dense-grid monotonicity check; values below 1e-250 are allowed to flatten out
inline void check_monotone(const MonotoneCurve& f, int points = 400) {
  if (f.empty()) return;
  if (f.at_lo == f.at_hi) throw std::domain_error(f.name + ": curve is constant");
  const double sign = f.decreasing() ? 1 : -1;
  double prev = f.at_lo;
  for (int k = 1; k < points; ++k) {
    const double u = static_cast<double>(k) / points;
    const double x = std::isfinite(f.hi) ? f.lo + (f.hi - f.lo) * u : f.lo + u / (1 - u);
    const double v = f.eval(x);
    if (!std::isfinite(v) || sign * (prev - v) < 0 || (sign * (prev - v) == 0 && std::abs(v) > 1e-250))
      throw std::domain_error(f.name + ": not strictly monotone near x = " + std::to_string(x));
    prev = v;
  }
}

inline MonotoneCurve make_curve(std::string name, double lo, double hi, double at_lo, double at_hi,
                                std::function<double(double)> eval, std::function<double(double)> inv = {},
                                std::optional<double> area = std::nullopt) {
  MonotoneCurve c{std::move(name), lo, hi, at_lo, at_hi, std::move(eval), std::move(inv), area};
  check_monotone(c);
  return c;
}

// the empty curve (no cells); the neutral element of union
inline MonotoneCurve zero_curve() {
  MonotoneCurve c;
  c.name = "0";
  c.lo = c.hi = 0;
  c.at_lo = c.at_hi = 0;
  c.eval = [](double) { return 0.0; };
  c.designated_area = 0;
  return c;
}

inline MonotoneCurve from_shape(const ShapeCurve& s, double lo = 0, double hi = kInf) {
  const double at_lo = lo == 0 ? s.value_at_zero() : s(lo);
  const bool whole = lo == 0 && !std::isfinite(hi) && s.unit_area;
  return make_curve(s.name, lo, std::min(hi, s.support), at_lo, std::isfinite(hi) ? s(hi) : 0.0, s.eval,
                    s.inverse_eval, whole ? std::optional<double>(1.0) : std::nullopt);
}

// ---- table operations

// conjugation
inline MonotoneCurve inverse(const MonotoneCurve& f) {
  if (f.empty()) return f;
  MonotoneCurve g;
  g.name = "inv(" + f.name + ")";
  g.designated_area = f.designated_area;
  if (f.decreasing()) {
    g.lo = f.at_hi;
    g.hi = f.at_lo;
    g.at_lo = f.hi;
    g.at_hi = f.lo;
  } else {
    g.lo = f.at_lo;
    g.hi = f.at_hi;
    g.at_lo = f.lo;
    g.at_hi = f.hi;
  }
  g.eval = [f](double y) { return f.inverse_at(y); };
  g.inv = [f](double x) { return f(x); };
  return g;
}

// f + a
inline MonotoneCurve move(const MonotoneCurve& f, double a) {
  MonotoneCurve g = f;
  g.name = "move(" + f.name + ")";
  g.at_lo += a;
  g.at_hi += a;
  g.eval = [f, a](double x) { return f(x) + a; };
  g.inv = [f, a](double y) { return f.inverse_at(y - a); };
  if (f.designated_area && std::isfinite(f.hi)) g.designated_area = *f.designated_area + a * (f.hi - f.lo);
  else g.designated_area.reset();
  return g;
}

// f + a t
inline MonotoneCurve shift(const MonotoneCurve& f, double a) {
  auto end_value = [a](double fv, double x) {
    if (a == 0 || x == 0) return fv;
    return fv + a * x;  // inf stays inf; finite value at infinite x becomes +-inf
  };
  MonotoneCurve g;
  g.name = "shift(" + f.name + ")";
  g.lo = f.lo;
  g.hi = f.hi;
  g.at_lo = end_value(f.at_lo, f.lo);
  g.at_hi = end_value(f.at_hi, f.hi);
  g.eval = [f, a](double x) { return f(x) + a * x; };
  if (f.designated_area && std::isfinite(f.hi)) g.designated_area = *f.designated_area + a * (f.hi * f.hi - f.lo * f.lo) / 2;
  check_monotone(g);
  return g;
}

// keep the part of a decreasing curve above the horizontal axis
inline MonotoneCurve positive_part(const MonotoneCurve& f) {
  if (!f.decreasing() || f.at_hi >= 0) return f;
  if (f.at_lo <= 0) return zero_curve();
  MonotoneCurve g = f;
  g.name = "pos(" + f.name + ")";
  g.hi = f.inverse_at(0.0);
  g.at_hi = 0;
  g.designated_area.reset();
  return g;
}

// (f(r t), ..., f(r t))
inline std::vector<MonotoneCurve> shred(const MonotoneCurve& f, int r) {
  if (r < 1) throw std::domain_error("shred: r >= 1");
  MonotoneCurve g = f;
  g.name = "shred(" + f.name + ")";
  g.lo = f.lo / r;
  g.hi = f.hi / r;
  g.eval = [f, r](double t) { return f(r * t); };
  g.inv = [f, r](double y) { return f.inverse_at(y) / r; };
  if (f.designated_area) g.designated_area = *f.designated_area / r;
  return std::vector<MonotoneCurve>(static_cast<std::size_t>(r), g);
}

// f_1(m t) + ... + f_m(m t) for components on a common domain
inline MonotoneCurve stretch_paste(const std::vector<MonotoneCurve>& fs) {
  if (fs.empty()) throw std::domain_error("stretch_paste: no components");
  const double m = static_cast<double>(fs.size());
  MonotoneCurve g;
  g.name = "stretch_paste";
  g.lo = fs.front().lo / m;
  g.hi = fs.front().hi / m;
  g.at_lo = g.at_hi = 0;
  double area = 0;
  bool known = true;
  for (const auto& f : fs) {
    if (std::abs(f.lo - fs.front().lo) > 1e-12 || std::abs(f.hi - fs.front().hi) > 1e-12 * std::max(1.0, f.hi))
      if (!(std::isinf(f.hi) && std::isinf(fs.front().hi))) throw std::domain_error("stretch_paste: domains differ");
    g.at_lo += f.at_lo;
    g.at_hi += f.at_hi;
    known = known && f.designated_area.has_value();
    if (known) area += *f.designated_area;
  }
  g.eval = [fs, m](double t) {
    double s = 0;
    for (const auto& f : fs) s += f(m * t);
    return s;
  };
  if (known) g.designated_area = area / m;
  check_monotone(g);
  return g;
}

// sort of two components: f + g, each taken as 0 past the end of its domain
inline MonotoneCurve union_of(const MonotoneCurve& f, const MonotoneCurve& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  if (!f.decreasing() || !g.decreasing()) throw std::domain_error("union: components must be decreasing");
  if (std::abs(f.lo - g.lo) > 1e-12) throw std::domain_error("union: components must start at the same abscissa");
  auto ext = [](const MonotoneCurve& c, double x) {
    if (x >= c.hi) {
      if (c.at_hi != 0) throw std::domain_error("union: " + c.name + " does not reach the axis");
      return 0.0;
    }
    return c(x);
  };
  if ((f.hi < g.hi && f.at_hi != 0) || (g.hi < f.hi && g.at_hi != 0))
    throw std::domain_error("union: shorter component must end on the axis");
  MonotoneCurve u;
  u.name = "union(" + f.name + "," + g.name + ")";
  u.lo = f.lo;
  u.hi = std::max(f.hi, g.hi);
  u.at_lo = f.at_lo + g.at_lo;
  u.at_hi = (f.hi == u.hi ? f.at_hi : 0.0) + (g.hi == u.hi ? g.at_hi : 0.0);
  u.eval = [f, g, ext](double x) { return ext(f, x) + ext(g, x); };
  if (f.designated_area && g.designated_area) u.designated_area = *f.designated_area + *g.designated_area;
  return u;
}

// (f^{-1} + g^{-1})^{-1}
inline MonotoneCurve plus(const MonotoneCurve& f, const MonotoneCurve& g) {
  if (f.empty() || g.empty()) throw std::domain_error("plus: degenerate operand");
  auto u = inverse(union_of(inverse(f), inverse(g)));
  u.name = "plus(" + f.name + "," + g.name + ")";
  return u;
}

// split at an interior abscissa into (P f on (lo, at], Q f on [at, hi))
inline std::pair<MonotoneCurve, MonotoneCurve> cut(const MonotoneCurve& f, double at) {
  if (!(at > f.lo && at < f.hi)) throw std::domain_error("cut: point must be interior");
  MonotoneCurve p = f, q = f;
  p.name = "P(" + f.name + ")";
  q.name = "Q(" + f.name + ")";
  const double v = f(at);
  p.hi = at;
  p.at_hi = v;
  q.lo = at;
  q.at_lo = v;
  p.designated_area.reset();
  q.designated_area.reset();
  if (f.designated_area) {
    p.designated_area = p.area();
    q.designated_area = *f.designated_area - *p.designated_area;
  }
  return {p, q};
}

// reassemble two pieces meeting at a common abscissa
inline MonotoneCurve paste(const MonotoneCurve& p, const MonotoneCurve& q, double tol = 1e-6) {
  if (std::abs(p.hi - q.lo) > 1e-12 * std::max(1.0, std::abs(q.lo))) throw std::domain_error("paste: pieces do not meet");
  if (std::abs(p.at_hi - q.at_lo) > tol)
    throw std::domain_error("paste: seam mismatch " + std::to_string(std::abs(p.at_hi - q.at_lo)));
  MonotoneCurve r;
  r.name = "paste(" + p.name + "," + q.name + ")";
  r.lo = p.lo;
  r.hi = q.hi;
  r.at_lo = p.at_lo;
  r.at_hi = q.at_hi;
  const double seam = q.lo;
  r.eval = [p, q, seam](double x) { return x <= seam ? p(x) : q(x); };
  if (p.designated_area && q.designated_area) r.designated_area = *p.designated_area + *q.designated_area;
  check_monotone(r);
  return r;
}

// vertical scaling k f (density split of one component into several)
inline MonotoneCurve scale(const MonotoneCurve& f, double k) {
  if (!(k > 0)) throw std::domain_error("scale: k > 0");
  MonotoneCurve g = f;
  g.name = "scale(" + f.name + ")";
  g.at_lo *= k;
  g.at_hi *= k;
  g.eval = [f, k](double x) { return k * f(x); };
  g.inv = [f, k](double y) { return f.inverse_at(y / k); };
  if (f.designated_area) g.designated_area = *f.designated_area * k;
  return g;
}

// ---------------------------------------------------------------------------------------------
// Pipelines

struct PipelineStage {
  std::string label;
  MonotoneCurve curve;
};

struct PipelineResult {
  std::string name;
  std::vector<PipelineStage> stages;  // the last stage is the result
  std::function<double(double)> target;
  double grid_lo, grid_hi;

  const MonotoneCurve& result() const { return stages.back().curve; }

  double sup_error(double step = 0.01) const {
    double m = 0;
    for (double x : linspace_step(grid_lo, grid_hi, step)) m = std::max(m, std::abs(result()(x) - target(x)));
    return m;
  }
};

inline double selfconjugate_x0() { return std::log(2.0) / classic_c(); }

// odd distinct shape -> two halves -> g^{-1} + t -> (h, h^{-1}) -> pasted at x0
inline PipelineResult pipeline_selfconjugate() {
  const double c = classic_c();
  PipelineResult out;
  out.name = "selfconjugate";
  auto b = make_curve(
      "b", 0, kInf, std::log(2.0) / c, 0, [c](double t) { return std::log1p(std::exp(-c * t / 2)) / c; },
      [c](double y) { return -2 / c * std::log(std::expm1(c * y)); }, 1.0);
  out.stages.push_back({"odd distinct", b});
  const auto halves = shred(b, 2);
  out.stages.push_back({"half", halves[0]});
  auto h = shift(inverse(halves[0]), 1.0);
  h.name = "h";
  out.stages.push_back({"shifted conjugate", h});
  auto hinv = inverse(h);
  hinv.name = "h^-1";
  out.stages.push_back({"reflected", hinv});
  auto phi = paste(h, hinv);
  phi.name = "selfconjugate";
  out.stages.push_back({"pasted", phi});
  out.target = [](double t) { return Phi(t); };
  out.grid_lo = 0.05;
  out.grid_hi = 4;
  return out;
}

// conjugate odd-parts shape -> conjugate -> union with itself -> shift by -t -> conjugate
inline PipelineResult pipeline_glaisher() {
  const double s2 = std::sqrt(2.0);
  PipelineResult out;
  out.name = "glaisher";
  auto start = make_curve(
      "sqrt2 Phi(x sqrt2)", 0, kInf, kInf, 0, [s2](double x) { return s2 * Phi(x * s2); },
      [s2](double y) { return Phi(y / s2) / s2; }, 1.0);
  out.stages.push_back({"conjugate odd shape", start});
  auto odd = inverse(start);
  odd.name = "odd";
  out.stages.push_back({"odd shape", odd});
  auto both = union_of(odd, odd);
  out.stages.push_back({"union", both});
  auto shifted = positive_part(shift(both, -1.0));
  out.stages.push_back({"shifted", shifted});
  auto psi = inverse(shifted);
  psi.name = "glaisher";
  out.stages.push_back({"conjugated", psi});
  out.target = [](double x) { return Psi(x); };
  out.grid_lo = 0.05;
  out.grid_hi = 4;
  return out;
}

// the Lebesgue chain: s -> (a, b, c) -> v -> (d, e) -> t -> m^{-1}
inline PipelineResult pipeline_lebesgue() {
  const double s0 = lebesgue_s0(), eta0 = lebesgue_eta0(), x0 = lebesgue_x0();
  PipelineResult out;
  out.name = "lebesgue";
  auto s = make_curve(
      "s", 0, kInf, s0, 0, [](double x) { return 3 / pi * std::log1p(std::exp(-pi * x / 4)); },
      [](double y) { return -4 / pi * std::log(std::expm1(pi * y / 3)); });
  out.stages.push_back({"s", s});
  const auto two_thirds = scale(s, 2.0 / 3), third = scale(s, 1.0 / 3);
  // a is flat at eta0 up to 2 s(0)/3; only its decreasing tail is needed, through a^{-1} on (0, eta0)
  const auto [a_head, a_tail] = cut(two_thirds, 2 * s0 / 3);
  auto a_inv = inverse(a_tail);
  a_inv.name = "a^-1";
  out.stages.push_back({"a^-1", a_inv});
  auto b = move(a_head, -eta0);
  b.name = "b";
  out.stages.push_back({"b", b});
  auto c = third;
  c.name = "c";
  out.stages.push_back({"c", c});
  auto c_inv = inverse(c);
  c_inv.name = "c^-1";
  auto v = union_of(stretch_paste({b, b}), c_inv);
  v.name = "v";
  out.stages.push_back({"v", v});
  auto d = move(shift(a_inv, 2.0), -2 * x0);
  d.name = "d";
  out.stages.push_back({"d", d});
  auto e = move(shift(v, 2.0), -2 * s0 / 3);
  e.name = "e";
  out.stages.push_back({"e", e});
  auto t_inv = union_of(inverse(d), inverse(e));
  t_inv.name = "t^-1";
  out.stages.push_back({"t^-1", t_inv});
  auto t = inverse(t_inv);
  t.name = "t";
  out.stages.push_back({"t", t});
  auto m_inv = move(shift(t, -2.0), 2 * x0);
  m_inv.name = "lebesgue";
  out.stages.push_back({"m^-1", m_inv});
  out.target = [](double x) { return lebesgue_m_inv(x); };
  out.grid_lo = 0.01;
  out.grid_hi = x0 - 0.01;
  return out;
}

inline PipelineResult pipeline(const std::string& name) {
  if (name == "selfconjugate") return pipeline_selfconjugate();
  if (name == "glaisher") return pipeline_glaisher();
  if (name == "lebesgue") return pipeline_lebesgue();
  throw std::invalid_argument("unknown pipeline: " + name);
}

}  // namespace plimit
