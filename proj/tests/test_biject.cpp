#include <catch_amalgamated.hpp>

#include <plimit/biject.hpp>
#include <plimit/shape.hpp>

using namespace plimit;
using Catch::Approx;

namespace {

Partition P(std::vector<part_t> v) { return Partition(std::move(v)); }

// slow reference: rebuild mu_i = sum_{j>=i} binom(r-1+j-i, r-1) m_j with doubles and compare
Partition rth_forward_reference(int r, const std::vector<part_t>& m_by_index) {
  std::vector<part_t> mu;
  for (std::size_t i = 1; i <= m_by_index.size(); ++i) {
    double s = 0;
    for (std::size_t j = i; j <= m_by_index.size(); ++j)
      s += std::round(std::tgamma(r + (j - i) * 1.0) / std::tgamma(r * 1.0) / std::tgamma(j - i + 1.0)) *
           static_cast<double>(m_by_index[j - 1]);
    mu.push_back(static_cast<part_t>(s));
  }
  return Partition::from_unsorted(mu);
}

}  // namespace

TEST_CASE("apply examples") {
  CHECK(apply_mp(rthdiff_spec(2), {{1, 2}, {3, 1}}) == P({4, 1}));
  const MultiplicityVector m{{2, 3}, {5, 1}};
  CHECK(apply_mm(identity_spec(), m) == m);
  CHECK(apply_mm(glaisher_spec(), {{6, 1}}) == MultiplicityVector{{3, 2}});
  CHECK(apply(glaisher_spec(), P({6, 3, 1})) == P({3, 3, 3, 1}));
  CHECK(apply_mp(evenparts_spec(2), to_multiplicities(P({4, 2}))) == P({4, 2}));
  CHECK_THROWS_AS(apply_mp(glaisher_spec(), {{1, 1}}), std::logic_error);
}

TEST_CASE("image components must be nonnegative integers") {
  LinearMapSpec half = identity_spec();
  half.column_fn = [](part_t j) { return std::vector<std::pair<part_t, Rational>>{{j, Rational(1, 2)}}; };
  CHECK_THROWS_AS(apply_mm(half, {{3, 1}}), std::domain_error);
  CHECK(apply_mm(half, {{3, 2}}) == MultiplicityVector{{3, 1}});
  LinearMapSpec neg = identity_spec();
  neg.column_fn = [](part_t j) { return std::vector<std::pair<part_t, Rational>>{{j, Rational(-1)}}; };
  CHECK_THROWS_AS(apply_mm(neg, {{3, 1}}), std::domain_error);
}

TEST_CASE("working bound is enforced") {
  const auto s = glaisher_spec(100);
  CHECK_NOTHROW(s.column(100));
  CHECK_THROWS_AS(s.column(101), std::out_of_range);
  CHECK_THROWS_AS(s.entry(1, 101), std::out_of_range);
  CHECK_THROWS_AS(rthdiff_spec(2, 50).entry(1, 51), std::out_of_range);
  CHECK(s.entry(3, 12) == 4);
  CHECK(s.entry(1, 12) == 0);
}

TEST_CASE("structure holds exactly up to 2000 on every registered spec") {
  for (const auto& s : {identity_spec(), glaisher_spec(), stanton_spec(1, 3), stanton_spec(2, 2), rthdiff_spec(2),
                        rthdiff_spec(3), evenparts_spec(5), evenparts_spec(4, 3, 2)}) {
    const auto rep = validate_structure(s, 2000, false);
    INFO(s.name << ": " << rep.failure);
    CHECK(rep.pass);
    CHECK(rep.columns_checked == 2000);
  }
  const auto oh = validate_structure(ohara_step_spec(), 2000, false);
  CHECK(oh.pass);
}

TEST_CASE("exhaustive structure checks") {
  SECTION("glaisher to 30") {
    const auto rep = validate_structure(glaisher_spec(), 30);
    INFO(rep.failure);
    CHECK(rep.pass);
    CHECK(rep.sizes_checked == 31);
  }
  SECTION("convex r = 2 and r = 3") {
    for (int r : {2, 3}) {
      const auto rep = validate_structure(rthdiff_spec(r), 30);
      INFO(rep.failure);
      CHECK(rep.pass);
    }
  }
  SECTION("stanton and bounded even parts") {
    for (const auto& s : {stanton_spec(1, 3), stanton_spec(2, 2), evenparts_spec(3), evenparts_spec(2, 3, 1)}) {
      const auto rep = validate_structure(s, 30);
      INFO(s.name << ": " << rep.failure);
      CHECK(rep.pass);
    }
  }
  SECTION("a constructed violation fails at j = 2") {
    LinearMapSpec bad = identity_spec();
    bad.name = "bad";
    bad.domain = bad.codomain = ClassSpec::parts_in(PartSizeSet::list({2}));
    bad.column_fn = [](part_t j) {
      if (j == 2) return std::vector<std::pair<part_t, Rational>>{{1, Rational(1)}};
      return std::vector<std::pair<part_t, Rational>>{};
    };
    bad.in_U = [](part_t j) { return j == 2; };
    const auto rep = validate_structure(bad, 10);
    CHECK_FALSE(rep.pass);
    CHECK(rep.failed_index == 2);
  }
  SECTION("one O'Hara step is not onto") {
    CHECK_FALSE(validate_structure(ohara_step_spec(), 6).pass);
  }
  CHECK_THROWS_AS(validate_structure(glaisher_spec(3000), 2001), std::domain_error);
}

TEST_CASE("glaisher") {
  CHECK(glaisher(P({6, 3, 1})) == P({3, 3, 3, 1}));
  CHECK(glaisher_inv(P({3, 3, 3, 1})) == P({6, 3, 1}));
  CHECK(glaisher(P({1})) == P({1}));
  CHECK(glaisher(Partition{}) == Partition{});
  CHECK_THROWS_AS(glaisher(P({2, 2})), std::domain_error);
  CHECK_THROWS_AS(glaisher_inv(P({2})), std::domain_error);
  const auto rows = verify_bijection(glaisher, glaisher_inv, ClassSpec::distinct(), ClassSpec::odd(), 30);
  CHECK(all_pass(rows));
  CHECK(all_pass(verify_bijection(glaisher_inv, glaisher, ClassSpec::odd(), ClassSpec::distinct(), 30)));
  CHECK(rows[30].domain_count == 296);
}

TEST_CASE("matrix form agrees with the direct maps") {
  for (part_t n = 0; n <= 30; ++n)
    for (const auto& p : enumerate_all(ClassSpec::distinct(), n)) REQUIRE(apply(glaisher_spec(), p) == glaisher(p));
  for (part_t n = 0; n <= 25; ++n)
    for (const auto& p : enumerate_all(ClassSpec::stanton_a(2, 2), n))
      REQUIRE(apply(stanton_spec(2, 2), p) == stanton(2, 2, p));
  for (part_t n = 0; n <= 25; ++n)
    for (const auto& p : enumerate_all(ClassSpec::even_bounded_largest(4), n))
      REQUIRE(apply(evenparts_spec(4), p) == even_parts_map(4, p));
}

TEST_CASE("ohara") {
  CHECK(ohara_step({{4, 1}}) == MultiplicityVector{{2, 2}});
  CHECK(ohara_step({{2, 2}}) == MultiplicityVector{{1, 4}});
  const MultiplicityVector odd{{1, 3}, {5, 2}};
  CHECK(ohara_fixpoint(odd) == odd);
  CHECK(ohara_fixpoint({{6, 1}, {3, 1}, {1, 1}}) == to_multiplicities(P({3, 3, 3, 1})));
  CHECK(apply_mm(ohara_step_spec(), {{4, 1}, {3, 2}}) == ohara_step({{4, 1}, {3, 2}}));
  for (part_t n = 0; n <= 30; ++n)
    for (const auto& p : enumerate_all(ClassSpec::distinct(), n))
      REQUIRE(from_multiplicities(ohara_fixpoint(to_multiplicities(p))) == glaisher(p));
}

TEST_CASE("stanton") {
  CHECK(stanton(1, 3, P({3})) == P({1, 1, 1}));
  CHECK(stanton(2, 2, P({16})) == Partition(std::vector<part_t>(16, 1)));
  CHECK(stanton(1, 2, P({6, 3, 1})) == P({3, 3, 3, 1}));
  CHECK_THROWS_AS(stanton(2, 2, P({5})), std::domain_error);
  for (part_t n = 0; n <= 30; ++n)
    for (const auto& p : enumerate_all(ClassSpec::distinct(), n)) REQUIRE(stanton(1, 2, p) == glaisher(p));
  for (auto [r, m] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
    auto f = [r = r, m = m](const Partition& p) { return stanton(r, m, p); };
    auto g = [r = r, m = m](const Partition& p) { return stanton_inv(r, m, p); };
    INFO("r = " << r << ", m = " << m);
    CHECK(all_pass(verify_bijection(f, g, ClassSpec::stanton_a(r, m), ClassSpec::stanton_b(r, m), 30)));
  }
}

TEST_CASE("r-th differences") {
  CHECK(rth_diff_forward(2, {{1, 2}, {3, 1}}) == P({4, 1}));
  CHECK(rth_diff_inverse(2, P({4, 1})) == MultiplicityVector{{1, 2}, {3, 1}});
  CHECK(rth_diff_forward(3, {{1, 1}}) == P({1}));
  CHECK_THROWS_AS(rth_diff_inverse(2, P({3, 3})), std::domain_error);
  CHECK_THROWS_AS(rth_diff_forward(2, {{2, 1}}), std::domain_error);
  for (int r : {2, 3}) {
    const ClassSpec dom = ClassSpec::parts_in(PartSizeSet::binomial(r));
    for (part_t n = 0; n <= 30; ++n)
      for (const auto& p : enumerate_all(dom, n)) {
        const auto m = to_multiplicities(p);
        const auto mu = rth_diff_forward(r, m);
        REQUIRE(rth_diff_inverse(r, mu) == m);
        REQUIRE(mu == apply_mp(rthdiff_spec(r), m));
        std::vector<part_t> by_index;
        for (part_t j = 1; binom_size(r, j) <= n; ++j) {
          const auto it = m.find(binom_size(r, j));
          by_index.push_back(it == m.end() ? 0 : it->second);
        }
        REQUIRE(mu == rth_forward_reference(r, by_index));
      }
    auto f = [r](const Partition& p) { return rth_diff_forward(r, to_multiplicities(p)); };
    auto g = [r](const Partition& p) { return from_multiplicities(rth_diff_inverse(r, p)); };
    CHECK(all_pass(verify_bijection(f, g, dom, ClassSpec::convex(r), 30)));
  }
}

TEST_CASE("principal hooks") {
  CHECK(hooks_forward(P({4, 3, 2, 1})) == P({7, 3}));
  CHECK(hooks_forward(P({2, 2})) == P({3, 1}));
  CHECK(hooks_forward(P({1})) == P({1}));
  CHECK(hooks_inverse(P({7, 3})) == P({4, 3, 2, 1}));
  CHECK_THROWS_AS(hooks_forward(P({2})), std::domain_error);
  CHECK_THROWS_AS(hooks_inverse(P({2})), std::domain_error);
  CHECK(all_pass(verify_bijection(hooks_forward, hooks_inverse, ClassSpec::self_conjugate(),
                                  ClassSpec::odd_distinct(), 40)));
}

TEST_CASE("bounded even parts") {
  CHECK(even_parts_map(2, P({4, 2})) == P({4, 2}));
  CHECK(even_parts_map(1, P({2})) == P({2}));
  CHECK(even_parts_map(3, Partition{}) == Partition{});
  CHECK(even_parts_map(3, P({6, 2, 2})) == P({6, 2, 2}));
  CHECK(even_parts_map(3, P({6})) == P({2, 2, 2}));
  CHECK_THROWS_AS(even_parts_map(1, P({4})), std::domain_error);
  for (part_t k : {1, 2, 3, 5, 8}) {
    auto f = [k](const Partition& p) { return even_parts_map(k, p); };
    auto g = [k](const Partition& p) { return even_parts_generalized_inv(2, 1, k, p); };
    CHECK(all_pass(verify_bijection(f, g, ClassSpec::even_bounded_largest(k), ClassSpec::even_bounded_count(k), 30)));
  }
  for (auto [m, r] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {3, 2}}) {
    const part_t M = detail::ipow(m, r);
    auto f = [m = m, r = r](const Partition& p) { return even_parts_generalized(m, r, 3, p); };
    auto g = [m = m, r = r](const Partition& p) { return even_parts_generalized_inv(m, r, 3, p); };
    CHECK(all_pass(verify_bijection(f, g, ClassSpec::even_bounded_largest(3, M), ClassSpec::even_bounded_count(3, M), 40)));
  }
}

TEST_CASE("stability limits match the closed-form shapes") {
  const auto conv = *rthdiff_spec(2).kernel;
  const auto conv3 = *rthdiff_spec(3).kernel;
  const auto gl = *glaisher_spec().kernel;
  const auto bs = bounded_shapes(2, 1, 1.5);
  const auto be = bounded_even_kernel(1.5, bs.cF);
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    CHECK(stability_limit(conv, t) == Approx(convex_inverse(t)).epsilon(1e-9));
    CHECK(stability_limit(conv3, t) == Approx(rth_inverse(t, 3)).epsilon(1e-9));
    // the image of Glaisher is an odd-parts partition
    CHECK(stability_limit(gl, t) == Approx(phi_rBa(t, 1, 2, kInf)).epsilon(1e-9));
    CHECK(stability_limit(be, t) == Approx(bs.G(t)).margin(1e-10));
  }
  CHECK(bs.cF == Approx(bs.cG).epsilon(1e-9));
}

TEST_CASE("stability ratios tend to one") {
  const std::vector<double> grid{0.25, 0.5, 1.0, 1.5, 2.0};
  SECTION("convex") {
    const auto rep = check_stability(rthdiff_spec(2), {1e4, 1e6}, grid);
    CHECK(rep.pass);
    CHECK(rep.max_deviation(1) < 0.05);
  }
  SECTION("bounded even parts") {
    const double b = 1.5;
    auto spec = evenparts_spec(static_cast<part_t>(b * 1e3));
    spec.kernel = bounded_even_kernel(b, bounded_shapes(2, 1, b).cF);
    const auto rep = check_stability(spec, {1e4, 1e6}, {0.25, 0.5, 1.0, 1.25});
    CHECK(rep.pass);
    CHECK(rep.max_deviation(1) < 0.05);
  }
  SECTION("glaisher") {
    const auto rep = check_stability(glaisher_spec(), {1e4, 1e6}, grid);
    CHECK(rep.pass);
    CHECK(rep.max_deviation(1) < 0.05);
  }
  LinearMapSpec bare = identity_spec();
  CHECK_THROWS_AS(check_stability(bare, {1e4}, grid), std::domain_error);
}
