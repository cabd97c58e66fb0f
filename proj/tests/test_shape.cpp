#include <catch_amalgamated.hpp>

#include <plimit/shape.hpp>

using namespace plimit;
using Catch::Approx;

namespace {
const std::vector<double> kGrid4{0.25, 0.5, 1, 2};

std::vector<double> grid(double a, double b, double h) { return linspace_step(a, b, h); }
}  // namespace

TEST_CASE("constants d(r, B, a)") {
  CHECK(const_d(1, 1) == Approx(pi / std::sqrt(6.0)).epsilon(1e-13));
  CHECK(const_d(1, 1, 2) == Approx(pi / std::sqrt(12.0)).epsilon(1e-13));
  CHECK(const_d(2, 0.5) == Approx(convex_constant()).epsilon(1e-13));
  CHECK(const_d(1, 1) == Approx(1.2825498301618641).epsilon(1e-13));
  CHECK(const_d(1, 1, 2) == Approx(0.9068996821171089).epsilon(1e-13));
}

TEST_CASE("dilogarithm") {
  CHECK(dilog(0) == 0);
  CHECK(dilog(1) == Approx(pi * pi / 6).epsilon(1e-14));
  CHECK(dilog(0.5) == Approx(pi * pi / 12 - 0.5 * std::log(2.0) * std::log(2.0)).epsilon(1e-13));
  CHECK(dilog(0.5) == Approx(0.5822405264650125).epsilon(1e-13));
  // mpmath polylog(2, 0.9) and polylog(2, -2)
  CHECK(dilog(0.9) == Approx(1.2997147230049588).epsilon(1e-12));
  CHECK(dilog(-2) == Approx(-1.4367463668836809).epsilon(1e-12));
}

TEST_CASE("quadrature shapes match closed forms") {
  for (double t : grid(0.05, 4, 0.05)) {
    REQUIRE(std::abs(phi_rB(t, 1, 1) - Phi(t)) < 1e-8);
    REQUIRE(std::abs(phi_rBa(t, 1, 1, 2) - Psi(t)) < 1e-8);
  }
  CHECK_THROWS(phi_rB(0, 1, 1));
}

TEST_CASE("classical curves satisfy their implicit equations") {
  const double c = classic_c(), d = classic_d();
  for (double x : grid(0.05, 4, 0.05)) {
    REQUIRE(std::exp(-c * x) + std::exp(-c * Phi(x)) == Approx(1).margin(1e-12));
    REQUIRE(std::exp(d * Psi(x)) - std::exp(-d * x) == Approx(1).margin(1e-12));
  }
}

TEST_CASE("unit-area curves") {
  CHECK(classic_phi_curve().area() == Approx(1).margin(1e-6));
  CHECK(classic_psi_curve().area() == Approx(1).margin(1e-6));
  CHECK(phi_rB_curve(2, 0.5).area() == Approx(1).margin(1e-6));
  CHECK(phi_rB_curve(3, 1).area() == Approx(1).margin(1e-6));
  CHECK(phi_rB_curve(1, 2, 2).area() == Approx(1).margin(1e-6));
  CHECK(romik_B_curve().area() == Approx(1).margin(1e-6));
  CHECK(romik_A_curve().area() == Approx(1).margin(1e-6));
  CHECK(rth_inverse_curve(2).area() == Approx(1).margin(1e-6));
  CHECK(rth_inverse_curve(3).area() == Approx(1).margin(1e-6));
  ShapeCurve leb = lebesgue_curve();
  CHECK(leb.area() == Approx(1).margin(1e-6));
  for (int d = 1; d <= 3; ++d) CHECK(diffdk_area(d, diffd_constants(d).gamma) == Approx(1).margin(1e-6));
}

TEST_CASE("curve inverses round-trip") {
  for (const auto& f : {classic_phi_curve(), classic_psi_curve(), romik_A_curve(), lebesgue_curve(), phi_rB_curve(2, 0.5)})
    for (double y : {0.05, 0.3, 0.5, 0.7})
      if (y < f.value_at_zero()) CHECK(f(f.inverse(y)) == Approx(y).margin(1e-9));
}

TEST_CASE("differential form of the shape") {
  for (auto [r, B] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    for (double x : grid(0.2, 3, 0.2)) {
      const double h = 1e-4;
      const double deriv = (phi_rB(x + h, r, B) - phi_rB(x - h, r, B)) / (2 * h);
      REQUIRE(-deriv == Approx(shape_slope(x, r, B)).margin(1e-4));
    }
  }
}

TEST_CASE("odd-distinct curve: three expressions") {
  const double c = classic_c();
  for (double t : grid(0.05, 4, 0.05)) {
    const double closed = std::log1p(std::exp(-c * t / 2)) / c;
    REQUIRE(odd_distinct_shape(t) == Approx(closed).margin(1e-12));
    REQUIRE(phi_rBa(t, 1, 2, 2) == Approx(closed).margin(1e-8));
  }
}

TEST_CASE("Romik pair") {
  CHECK(romik_A(romik_B(1.0)) == Approx(1.0).margin(1e-9));
  for (double x : grid(0.1, 3, 0.1)) REQUIRE(romik_A(romik_B(x)) == Approx(x).margin(1e-9));
  CHECK(romik_B(40) < 1e-15);
  CHECK(romik_A(1.0) == Approx(0.3138986444108431).epsilon(1e-12));  // mpmath
}

TEST_CASE("convex and r-th difference shapes") {
  // mpmath quad of the defining integral
  CHECK(convex_inverse(0.2) == Approx(1.4405518600244060).epsilon(1e-10));
  CHECK(convex_inverse(1) == Approx(0.1303728912711929).epsilon(1e-10));
  CHECK(convex_inverse(2) == Approx(0.0056859193907818).epsilon(1e-9));
  for (double t : {0.2, 1.0, 2.0}) CHECK(rth_inverse(t, 2) == Approx(convex_inverse(t)).margin(1e-10));
  for (int r : {2, 3})
    for (double t : {0.3, 1.0}) {
      const double fact = std::tgamma(r + 1.0), fm1 = std::tgamma(static_cast<double>(r));
      auto K = [r, fm1](double tt, double y, double phi) { return y > tt ? std::pow(y - tt, r - 1) / fm1 * phi : 0.0; };
      CHECK(transfer_shape(t, r, 1 / fact, kInf, K, {t}) == Approx(rth_inverse(t, r)).margin(1e-8));
    }
  // finite sums converge at rate n^{-1/3}; at n = 1e8 the gap is below 1e-3 only away from the axis
  for (double x : {1.0, 1.5}) CHECK(convex_inverse_riemann(x, 1e8) == Approx(convex_inverse(x)).margin(1e-3));
  for (double x : {0.2, 0.5, 1.0}) {
    const double e8 = convex_inverse_riemann(x, 1e8) - convex_inverse(x);
    const double e10 = convex_inverse_riemann(x, 1e10) - convex_inverse(x);
    CHECK(e8 > 0);
    CHECK(e8 / e10 == Approx(std::cbrt(100.0)).epsilon(0.02));
  }
}

TEST_CASE("Lebesgue curves") {
  CHECK(lebesgue_m(0) == Approx(2 / pi * std::log(1 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(lebesgue_m(lebesgue_m_inv(0.2)) == Approx(0.2).margin(1e-9));
  CHECK(lebesgue_m_inv(lebesgue_x0()) == Approx(0).margin(1e-8));
  for (double t : {0.1, 0.5, 1.0}) CHECK(lebesgue_general(1, 2, t) == Approx(lebesgue_m(t)).margin(1e-10));
  CHECK(lebesgue_eta0() == Approx(2.0 / 3 * 3 / pi * std::log1p(std::exp(-pi * (2 * lebesgue_s0() / 3) / 4))).margin(1e-12));
  CHECK_THROWS(lebesgue_m_inv(1.0));
  CHECK_THROWS(lebesgue_general(2, 2, 0.5));
}

TEST_CASE("corollary constants") {
  CHECK(parts_constant() == Approx(0.561099852).margin(1e-8));
  CHECK(durfee_constant() == Approx(0.454611067).margin(1e-8));
  const double y0 = lebesgue_quintic_root();
  CHECK(y0 == Approx(4.171195932).margin(1e-6));
  CHECK(durfee_from_quintic(y0) == Approx(durfee_constant()).margin(1e-6));
  CHECK(durfee_of(lebesgue_curve()) == Approx(durfee_constant()).margin(1e-9));
  CHECK(durfee_of(classic_phi_curve()) == Approx(std::log(2.0) / classic_c()).margin(1e-10));
}

TEST_CASE("minimal difference d constants") {
  auto k1 = diffd_constants(1);
  CHECK(k1.y_d == Approx(0.5).margin(1e-12));
  CHECK(k1.gamma == Approx(2 * std::sqrt(3.0) * std::log(2.0) / pi).margin(1e-12));
  CHECK(k1.gamma == Approx(0.7643041388456882).margin(1e-12));
  CHECK(k1.c == Approx(0.7630468704247548).margin(1e-10));
  auto k2 = diffd_constants(2);
  CHECK(k2.y_d == Approx((3 - std::sqrt(5.0)) / 2).margin(1e-12));
  CHECK(k2.gamma == Approx(0.5932422150033691).margin(1e-11));
  CHECK(k2.w == Approx(0.8050240209694965).margin(1e-11));
  CHECK(k2.c == Approx(0.6529998515789235).margin(1e-10));
  auto k3 = diffd_constants(3);
  CHECK(k3.y_d == Approx(0.3176721961719807).margin(1e-12));
  CHECK(k3.c == Approx(0.5892931327382513).margin(1e-10));
  CHECK(diffd_inverse(2, 0.3) == Approx(diffdk_inverse(2, k2.gamma, 0.3)).margin(1e-10));
  CHECK(diffd_inverse(2, 0.3) == Approx(1.2892490408257966).margin(1e-9));
  CHECK(diffd_inverse(3, 0.3) == Approx(1.2245052075671982).margin(1e-9));
  CHECK(diffd_inverse(1, k1.gamma) == Approx(0).margin(1e-12));
  CHECK_THROWS(diffdk_inverse(2, 2.0, 0.3));
}

TEST_CASE("difference-one curve is the distinct-parts conjugate") {
  for (double x : grid(0.05, 0.75, 0.05)) REQUIRE(diffd_inverse(1, x) == Approx(Psi_inv(x)).margin(1e-3));
  CHECK(diffd_constants(1).gamma == Approx(Psi(0)).margin(1e-12));
}

TEST_CASE("romik_c") {
  CHECK(std::abs(romik_c(50) - pi / std::sqrt(6.0)) < 1e-6);
  CHECK(romik_c(1) == Approx(0.8146511367476111).margin(1e-10));
  CHECK_THROWS(romik_c(0));
}

TEST_CASE("bounded even shapes") {
  auto s = bounded_shapes(2, 1, 1.0);
  CHECK(s.cF == Approx(0.7025271082892388).margin(1e-10));
  CHECK(s.cG == Approx(s.cF).margin(1e-10));
  CHECK(s.F(0.5) == Approx(0.6656029625715134).margin(1e-9));
  CHECK(bounded_F(1.0, 2.0) == 0);
  for (double t : grid(0.01, 0.99, 0.02)) REQUIRE(s.G(t) == Approx(2 * s.F(2 * t)).margin(1e-6));
  CHECK(integrate_singular([&](double t) { return s.F(t); }, 0, 2) == Approx(1).margin(1e-8));
  CHECK(integrate_singular([&](double t) { return s.G(t); }, 0, 1) == Approx(1).margin(1e-8));

  auto g = bounded_shapes(3, 2, 1.0);
  CHECK(g.cF == Approx(0.8409767995449042).margin(1e-9));
  CHECK(g.F(2) == Approx(0.0239199684680144).margin(1e-9));
  CHECK(g.F(9) == 0);
  CHECK_THROWS(g.G(0.5));
  CHECK(bounded_Gmr(2, 1, 1.0, 0.3) == Approx(bounded_G(1.0, 0.3)).margin(1e-12));
}

TEST_CASE("limit-shape identities") {
  CHECK(glaisher_identity_check(kGrid4) < 1e-8);
  CHECK(stanton_identity_check(2, 2, kGrid4) < 1e-6);
  CHECK(stanton_identity_check(1, 2, kGrid4) < 1e-8);
  CHECK(stanton_identity_check(1, 3, kGrid4) < 1e-8);
  CHECK(stanton_identity_check(1, 2, kGrid4) == Approx(glaisher_identity_check(kGrid4)).margin(1e-9));
}

TEST_CASE("shape triple") {
  const double h = 1 / std::sqrt(2.0);
  ShapeTriple s{0.5, 0, [h](double t) { return t < h ? h : 0.0; }, h};
  CHECK(s.total() == Approx(1).margin(1e-12));
}
