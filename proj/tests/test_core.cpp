#include <catch_amalgamated.hpp>

#include <plimit/core.hpp>
#include <plimit/enumerate.hpp>

using namespace plimit;

namespace {

Partition P(std::initializer_list<part_t> v) { return Partition(std::vector<part_t>(v)); }

// all partitions of n, plain recursion (oracle independent of enumerate.hpp)
void all_partitions(part_t n, part_t cap, std::vector<part_t>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (part_t x = std::min(n, cap); x >= 1; --x) {
    cur.push_back(x);
    all_partitions(n - x, x, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> all_partitions(part_t n) {
  std::vector<Partition> out;
  std::vector<part_t> cur;
  all_partitions(n, n, cur, out);
  return out;
}

}  // namespace

TEST_CASE("partition validation") {
  CHECK_THROWS(Partition(std::vector<part_t>{1, 2}));
  CHECK_THROWS(Partition(std::vector<part_t>{2, 0}));
  CHECK(P({4, 3, 1}).size() == 8);
  CHECK(P({4, 3, 1}).length() == 3);
  CHECK(Partition().size() == 0);
  CHECK(Partition::from_unsorted({1, 4, 3}) == P({4, 3, 1}));
}

TEST_CASE("multiplicities") {
  CHECK(to_multiplicities(P({4, 3, 1})) == MultiplicityVector{{1, 1}, {3, 1}, {4, 1}});
  CHECK(to_multiplicities(Partition()).empty());
  CHECK(to_multiplicities(P({2, 2, 2})) == MultiplicityVector{{2, 3}});
  for (part_t n = 0; n <= 20; ++n)
    for (const auto& p : all_partitions(n)) {
      auto m = to_multiplicities(p);
      CHECK(weight(m) == n);
      CHECK(from_multiplicities(m) == p);
    }
}

TEST_CASE("conjugate") {
  CHECK(conjugate(P({4, 3, 1})) == P({3, 2, 2, 1}));
  CHECK(conjugate(P({1, 1, 1})) == P({3}));
  CHECK(conjugate(P({6})) == P({1, 1, 1, 1, 1, 1}));
  CHECK(conjugate(Partition()) == Partition());
}

TEST_CASE("conjugation is a size-preserving involution up to n = 60") {
  std::size_t seen = 0;
  for (part_t n = 0; n <= 60; n += (n < 40 ? 1 : 10)) {
    for (const auto& p : all_partitions(n)) {
      auto c = conjugate(p);
      if (c.size() != n || conjugate(c) != p || durfee(c) != durfee(p)) FAIL("n = " << n << " p = " << to_string(p));
      ++seen;
    }
  }
  CHECK(seen > 1000000);
}

TEST_CASE("durfee") {
  CHECK(durfee(P({4, 3, 1})) == 2);
  CHECK(durfee(Partition()) == 0);
  CHECK(durfee(P({5, 5, 5, 5, 5})) == 5);
  CHECK(durfee(P({1})) == 1);
}

TEST_CASE("diagram function") {
  auto p = P({4, 3, 1});
  CHECK(diagram(p, 2) == 2);
  CHECK(diagram(p, 0.5) == 3);
  CHECK(diagram(p, 5) == 0);
  CHECK(diagram(p, 1.5) == 2);
  CHECK_THROWS(diagram(p, 0));
  for (part_t n = 1; n <= 16; ++n)
    for (const auto& q : all_partitions(n)) {
      auto m = to_multiplicities(q);
      auto conj = conjugate(q);
      part_t area = 0;
      for (part_t i = 1; i <= q.largest() + 1; ++i) {
        const part_t mi = m.count(i) ? m.at(i) : 0;
        REQUIRE(diagram(q, static_cast<double>(i)) - diagram(q, static_cast<double>(i + 1)) == mi);
        REQUIRE(diagram(q, static_cast<double>(i)) == conj[static_cast<std::size_t>(i)]);
        area += diagram(q, static_cast<double>(i));
      }
      REQUIRE(area == n);
    }
}

TEST_CASE("scaled diagram") {
  auto p = P({4, 3, 1});
  auto v = scaled_diagram(p, 8, std::sqrt(8.0), {0.1});
  CHECK(v[0] == Catch::Approx(std::sqrt(8.0) / 8 * 3).epsilon(1e-14));
  CHECK(v[0] == Catch::Approx(1.0606601717798212).epsilon(1e-12));
  CHECK(scaled_diagram(p, 8, std::sqrt(8.0), {2.0})[0] == 0.0);
  CHECK(scaled_diagram(P({1}), 1, 1, {0.5})[0] == 1.0);
  CHECK_THROWS(scaled_diagram(p, 8, 1, {}));

  // integral over the support is 1 when n = |p|
  auto q = P({9, 7, 7, 4, 2, 1, 1});
  const double n = 31, alpha = std::sqrt(n);
  std::vector<double> grid;
  const double h = 1e-4;
  for (double t = h / 2; t < 10 / alpha; t += h) grid.push_back(t);
  double area = 0;
  for (double y : scaled_diagram(q, n, alpha, grid)) area += y * h;
  CHECK(area == Catch::Approx(1.0).margin(1e-3));
}

TEST_CASE("membership examples") {
  CHECK(member(ClassSpec::convex(2), P({4, 1})));
  CHECK_FALSE(member(ClassSpec::convex(2), P({3, 2})));
  CHECK_FALSE(member(ClassSpec::romik_b(), P({5, 2, 2})));
  CHECK(member(ClassSpec::romik_b(), P({3, 3, 1, 1})));
  CHECK(member(ClassSpec::self_conjugate(), P({4, 3, 2, 1})));
  CHECK_FALSE(member(ClassSpec::self_conjugate(), P({4, 3, 1})));
  CHECK(member(ClassSpec::distinct(), P({5, 3, 1})));
  CHECK_FALSE(member(ClassSpec::distinct(), P({3, 3})));
  CHECK(member(ClassSpec::odd(), P({3, 3, 1})));
  CHECK_FALSE(member(ClassSpec::odd(), P({4, 1})));
  CHECK(member(ClassSpec::min_diff(2), P({7, 5, 1})));
  CHECK_FALSE(member(ClassSpec::min_diff(2), P({7, 6})));
  CHECK_FALSE(member(ClassSpec::min_diff(2, true), P({4, 1})));
  CHECK_FALSE(member(ClassSpec::romik_a(), P({4, 3})));
  CHECK_FALSE(member(ClassSpec::romik_a(), P({4, 1})));
  CHECK(member(ClassSpec::romik_a(), P({4, 4, 2})));
  CHECK(member(ClassSpec::glaisher_d(2), P({6, 3, 1})));
  CHECK_FALSE(member(ClassSpec::glaisher_d(2), P({4, 3, 1})));
  CHECK(member(ClassSpec::glaisher_o(2), P({3, 3, 3, 1})));
  CHECK_FALSE(member(ClassSpec::glaisher_o(2), P({3, 3, 3, 3})));
  CHECK(member(ClassSpec::stanton_b(2, 2), P({9, 1, 1})));
  CHECK_FALSE(member(ClassSpec::stanton_b(2, 2), P({4})));
  CHECK_FALSE(member(ClassSpec::stanton_a(2, 2), P({2})));
  CHECK(member(ClassSpec::distinct_mod4(), P({6, 5, 4})));
  CHECK_FALSE(member(ClassSpec::distinct_mod4(), P({7})));
  CHECK(member(ClassSpec::even_bounded_largest(2), P({4, 2, 2})));
  CHECK_FALSE(member(ClassSpec::even_bounded_largest(2), P({6})));
  CHECK(member(ClassSpec::even_bounded_count(2), P({6, 2})));
  CHECK_FALSE(member(ClassSpec::even_bounded_count(2), P({2, 2, 2})));
  CHECK(member(ClassSpec::parts_in(PartSizeSet::triangular()), P({6, 3, 1})));
  CHECK_FALSE(member(ClassSpec::parts_in(PartSizeSet::triangular()), P({5})));
  for (const auto& c : {ClassSpec::distinct(), ClassSpec::convex(3), ClassSpec::lebesgue_simple(),
                        ClassSpec::self_conjugate(), ClassSpec::romik_a(), ClassSpec::even_bounded_count(1)})
    CHECK(member(c, Partition()));
}

TEST_CASE("lebesgue difference condition") {
  auto L = ClassSpec::lebesgue_simple();
  CHECK(member(L, P({3})));
  CHECK(member(L, P({4, 2})));
  CHECK(member(L, P({5, 1})));
  CHECK_FALSE(member(L, P({3, 1})));
  CHECK_FALSE(member(L, P({5, 3, 1})));
  CHECK_FALSE(member(L, P({6, 3, 1})));
  CHECK(member(L, P({7, 4, 1})));
  // general (l, k) = (1, 2) agrees with the simple class
  for (part_t n = 0; n <= 25; ++n)
    for (const auto& p : all_partitions(n)) REQUIRE(member(L, p) == member(ClassSpec::lebesgue(1, 2), p));
}

TEST_CASE("convex membership agrees with the difference chain") {
  for (part_t n = 1; n <= 40; ++n)
    for (const auto& p : all_partitions(n)) {
      // lambda_1 - lambda_2 >= ... >= lambda_{l-1} - lambda_l >= lambda_l > 0
      std::vector<part_t> gaps;
      for (std::size_t i = 1; i <= p.length(); ++i) gaps.push_back(p[i] - p[i + 1]);
      const bool brute = std::is_sorted(gaps.rbegin(), gaps.rend());
      REQUIRE(member(ClassSpec::convex(2), p) == brute);
    }
}

TEST_CASE("text forms") {
  CHECK(parse_partition("4,3,1") == P({4, 3, 1}));
  CHECK(parse_partition("1 3 4") == P({4, 3, 1}));
  CHECK(parse_partition("") == Partition());
  CHECK(parse_partition("()") == Partition());
  CHECK_THROWS(parse_partition("4,x"));
  CHECK(to_string(P({4, 3, 1})) == "4,3,1");
  CHECK(parse_class("convex:3").r == 3);
  CHECK(parse_class("lebesgue").kind == ClassSpec::Kind::LebesgueSimple);
  CHECK(parse_class("parts-in:triangular").U->u(3) == 6);
  CHECK(parse_class("parts-in:poly:0,1,1/2").U->u(4) == 10);
  CHECK(parse_class("parts-in:list:1,5,7:a=3").mult_bound == 3);
  CHECK(parse_class("mindiff:2:no1").forbid_one);
  CHECK_THROWS(parse_class("nonsense"));
}

TEST_CASE("part size sets") {
  auto T = PartSizeSet::triangular();
  CHECK(T.elements_upto(15) == std::vector<part_t>{1, 3, 6, 10, 15});
  CHECK(T.B() == 0.5);
  CHECK(T.E() == 0.5);
  CHECK(T.contains(21));
  CHECK_FALSE(T.contains(20));
  auto b3 = PartSizeSet::binomial(3);
  CHECK(b3.elements_upto(35) == std::vector<part_t>{1, 4, 10, 20, 35});
  CHECK(PartSizeSet::polynomial({0, 2, 2}).gcd() == 4);  // k(k+1) * 2
  CHECK(PartSizeSet::polynomial({0, 1, 1}).gcd() == 2);
  CHECK(PartSizeSet::odd().gcd() == 1);
  CHECK_THROWS(PartSizeSet::polynomial({5, -1}));
}
