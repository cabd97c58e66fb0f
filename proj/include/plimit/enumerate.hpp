#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core.hpp"
#include "numeric.hpp"

namespace plimit {

using BigInt = boost::multiprecision::cpp_int;

constexpr part_t kEnumerationLimit = 60;

struct CountTable {
  ClassSpec spec;
  std::vector<BigInt> counts;  // counts[n] = |C_n|

  const BigInt& operator[](std::size_t n) const { return counts.at(n); }
  std::size_t max_n() const { return counts.empty() ? 0 : counts.size() - 1; }
};

namespace detail {

// multiplicity DP over a product form
inline std::vector<BigInt> product_counts(const ClassSpec& c, part_t N) {
  ProductForm f{&c};
  std::vector<BigInt> dp(static_cast<std::size_t>(N) + 1);
  dp[0] = 1;
  for (part_t u = 1; u <= N; ++u) {
    const part_t a = f.bound(u);
    if (a == 1) continue;
    const auto U = static_cast<std::size_t>(u);
    if (a == kUnbounded) {
      if (f.forbid_multiplicity_one()) {
        std::vector<BigInt> old = dp;
        for (std::size_t s = U; s < dp.size(); ++s) dp[s] += dp[s - U];
        for (std::size_t s = U; s < dp.size(); ++s) dp[s] -= old[s - U];
      } else {
        for (std::size_t s = U; s < dp.size(); ++s) dp[s] += dp[s - U];
      }
      continue;
    }
    // new[s] = sum_{j<a} old[s - j u] = new[s-u] + old[s] - old[s - a u]
    std::vector<BigInt> old = dp;
    const auto span = static_cast<std::size_t>(a) * U;
    for (std::size_t s = U; s < dp.size(); ++s) {
      dp[s] = dp[s - U] + old[s];
      if (s >= span) dp[s] -= old[s - span];
    }
  }
  return dp;
}

// n p(n) = sum_k sigma(k) p(n-k), sigma from the logarithmic derivative of each factor
inline std::vector<BigInt> product_counts_logderiv(const ClassSpec& c, part_t N) {
  ProductForm f{&c};
  std::vector<std::int64_t> sigma(static_cast<std::size_t>(N) + 1, 0);
  auto add_multiples = [&](part_t step, part_t weight, bool alternate) {
    for (part_t j = 1; j * step <= N; ++j)
      sigma[static_cast<std::size_t>(j * step)] += (alternate && j % 2 == 0) ? -weight : weight;
  };
  for (part_t u = 1; u <= N; ++u) {
    const part_t a = f.bound(u);
    if (a == 1) continue;
    if (a == kUnbounded && f.forbid_multiplicity_one()) {
      // (1 + x^{3u}) / (1 - x^{2u})
      add_multiples(2 * u, 2 * u, false);
      add_multiples(3 * u, 3 * u, true);
    } else if (a == kUnbounded) {
      add_multiples(u, u, false);
    } else {
      // (1 - x^{au}) / (1 - x^u)
      add_multiples(u, u, false);
      add_multiples(a * u, -a * u, false);
    }
  }
  std::vector<BigInt> p(static_cast<std::size_t>(N) + 1);
  p[0] = 1;
  for (std::size_t n = 1; n < p.size(); ++n) {
    BigInt acc = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (sigma[k]) acc += BigInt(sigma[k]) * p[n - k];
    if (acc % n != 0) throw std::logic_error("logderiv recursion: inexact division");
    p[n] = acc / n;
  }
  return p;
}

// number of partitions of m into exactly j parts, table q[m][j]
inline std::vector<std::vector<BigInt>> exact_parts_table(part_t M) {
  const auto S = static_cast<std::size_t>(M) + 1;
  std::vector<std::vector<BigInt>> q(S, std::vector<BigInt>(S));
  q[0][0] = 1;
  for (std::size_t m = 1; m < S; ++m)
    for (std::size_t j = 1; j <= m; ++j) q[m][j] = q[m - 1][j - 1] + q[m - j][j];
  return q;
}

inline std::vector<BigInt> chain_counts(const ClassSpec& c, part_t N) {
  const auto S = static_cast<std::size_t>(N) + 1;
  // f[rem][prev]: ways to finish with remaining sum rem after last part prev (prev = 0: nothing yet)
  std::vector<std::vector<BigInt>> f(S, std::vector<BigInt>(S));
  for (std::size_t rem = 0; rem < S; ++rem) {
    for (std::size_t prev = 0; prev < S; ++prev) {
      BigInt acc = rem == 0 ? 1 : 0;
      for (std::size_t next = std::max<std::size_t>(1, prev); next <= rem; ++next)
        if (chain_step_allowed(c, static_cast<part_t>(prev), static_cast<part_t>(next)))
          acc += f[rem - next][next];
      f[rem][prev] = acc;
    }
  }
  std::vector<BigInt> out(S);
  for (std::size_t n = 0; n < S; ++n) out[n] = f[n][0];
  return out;
}

inline std::vector<BigInt> mindiff_staircase(const ClassSpec& c, part_t N) {
  auto q = exact_parts_table(N);
  std::vector<BigInt> out(static_cast<std::size_t>(N) + 1);
  for (part_t n = 0; n <= N; ++n) {
    BigInt acc = n == 0 ? 1 : 0;
    for (part_t k = 1;; ++k) {
      const part_t m = n - c.d * k * (k - 1) / 2 - (c.forbid_one ? k : 0);
      if (m < k) break;
      acc += q[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
    }
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

inline std::vector<BigInt> even_count_counts(const ClassSpec& c, part_t N) {
  auto q = exact_parts_table(N / c.step);
  std::vector<BigInt> out(static_cast<std::size_t>(N) + 1);
  for (part_t n = 0; n <= N; ++n) {
    if (n % c.step) continue;
    const part_t m = n / c.step;
    BigInt acc = m == 0 ? 1 : 0;
    for (part_t j = 1; j <= std::min(m, c.bound_k); ++j) acc += q[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

template <class Visit>
void generate(const ClassSpec& c, part_t n, Visit&& visit) {
  using K = ClassSpec::Kind;
  const bool product = is_product_class(c);
  const bool chain = is_chain_class(c);
  ProductForm pf{&c};
  std::vector<part_t> cur;
  // rest: remaining sum; cap: largest allowed next part; run: multiplicity of cap so far
  auto rec = [&](auto&& self, part_t rest, part_t cap, part_t run) -> void {
    if (rest == 0) {
      if (chain && !cur.empty() && !chain_step_allowed(c, 0, cur.back())) return;
      if (product && pf.forbid_multiplicity_one() && run == 1) return;
      Partition p(cur);
      if (!product && !chain && !member(c, p)) return;
      visit(p);
      return;
    }
    if (c.kind == K::EvenBoundedCount && static_cast<part_t>(cur.size()) >= c.bound_k) return;
    for (part_t x = 1; x <= std::min(rest, cap); ++x) {
      part_t newrun = (!cur.empty() && x == cur.back()) ? run + 1 : 1;
      if (product) {
        const part_t a = pf.bound(x);
        if (a == 1) continue;
        if (a != kUnbounded && newrun >= a) continue;
        if (pf.forbid_multiplicity_one() && !cur.empty() && x != cur.back() && run == 1) continue;
      }
      if (chain && !cur.empty() && !chain_step_allowed(c, x, cur.back())) continue;
      if (c.kind == K::EvenBoundedCount && x % c.step) continue;
      cur.push_back(x);
      self(self, rest - x, x, newrun);
      cur.pop_back();
    }
  };
  rec(rec, n, n, 0);
}

}  // namespace detail

// Every partition of n in the class, ascending lexicographic order of the descending part lists.
inline std::vector<Partition> enumerate_all(const ClassSpec& c, part_t n) {
  if (n < 0) throw std::invalid_argument("enumerate_all: negative n");
  if (n > kEnumerationLimit) throw std::length_error("enumerate_all: n exceeds enumeration limit");
  std::vector<Partition> out;
  detail::generate(c, n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

inline std::vector<BigInt> count_by_enumeration(const ClassSpec& c, part_t N) {
  std::vector<BigInt> out;
  for (part_t n = 0; n <= N; ++n) {
    BigInt k = 0;
    detail::generate(c, n, [&](const Partition&) { ++k; });
    out.push_back(k);
  }
  return out;
}

// Primary counting strategy for the class.
inline CountTable count_table(const ClassSpec& c, part_t N) {
  using K = ClassSpec::Kind;
  if (N < 0) throw std::invalid_argument("count_table: negative n");
  CountTable t{c, {}};
  if (is_product_class(c)) t.counts = detail::product_counts(c, N);
  else if (c.kind == K::MinDiff) t.counts = detail::mindiff_staircase(c, N);
  else if (is_chain_class(c)) t.counts = detail::chain_counts(c, N);
  else if (c.kind == K::EvenBoundedCount) t.counts = detail::even_count_counts(c, N);
  else if (N <= kEnumerationLimit) t.counts = count_by_enumeration(c, N);
  else throw std::domain_error("count: no counting strategy for " + c.name() + " beyond n = 60");
  return t;
}

// Independent second recursion, where one exists (empty optional otherwise).
inline std::optional<std::vector<BigInt>> count_table_alternate(const ClassSpec& c, part_t N) {
  using K = ClassSpec::Kind;
  if (is_product_class(c)) return detail::product_counts_logderiv(c, N);
  if (c.kind == K::MinDiff) return detail::chain_counts(c, N);
  if (N <= kEnumerationLimit) return count_by_enumeration(c, N);
  return std::nullopt;
}

inline BigInt count(const ClassSpec& c, part_t n) {
  return count_table(c, n).counts.back();
}

// Partitions of n into parts from U with multiplicity below a
inline std::vector<BigInt> count_parts_in(const PartSizeSet& U, part_t N, part_t a = kUnbounded) {
  return count_table(ClassSpec::parts_in(U, a), N).counts;
}

namespace detail {

inline void require_polynomial(const PartSizeSet& U) {
  if (!U.is_polynomial()) throw std::invalid_argument("asymptotics need a polynomial part-size set");
}

}  // namespace detail

// p_U(n) ~ g c1 exp((1+r) d n^{1/(1+r)}) / n^{(Br+E)/(B(r+1)) + 1/2}, g = gcd(U).
// Empty when g does not divide n.
inline std::optional<double> asymptotic_unrestricted(const PartSizeSet& U, double n) {
  detail::require_polynomial(U);
  const part_t g = U.gcd();
  if (std::fmod(n, static_cast<double>(g)) != 0) return std::nullopt;
  const double r = U.degree(), B = U.B(), E = U.E();
  const double d = const_d(r, B);
  std::vector<double> c;
  for (auto x : U.coefficients()) c.push_back(static_cast<double>(x) / static_cast<double>(U.denominator()));
  std::complex<double> prod = 1.0;
  for (auto z : polynomial_roots(c)) prod *= gamma_complex(1.0 - z);
  const double c1 = std::pow(d, 1 + E / (B * r)) * std::pow(B, 0.5 + E / (B * r)) * std::pow(1 + 1 / r, -0.5) *
                    std::pow(2 * pi, -(r + 1) / 2) * prod.real();
  const double logv = (1 + r) * d * std::pow(n, 1 / (1 + r)) -
                      ((B * r + E) / (B * (r + 1)) + 0.5) * std::log(n);
  return static_cast<double>(g) * c1 * std::exp(logv);
}

// q_U(n) ~ g exp((1+r) d n^{1/(1+r)}) / (2^{1/2 + E/(rB)} sqrt(2 pi (1+1/r)/d) n^{(1+2r)/(2(1+r))}),
// d = d(r, B, 2)
inline std::optional<double> asymptotic_distinct(const PartSizeSet& U, double n) {
  detail::require_polynomial(U);
  const part_t g = U.gcd();
  if (std::fmod(n, static_cast<double>(g)) != 0) return std::nullopt;
  const double r = U.degree(), B = U.B(), E = U.E();
  const double d = const_d(r, B, 2);
  const double denom = std::pow(2.0, 0.5 + E / (r * B)) * std::sqrt(2 * pi * (1 + 1 / r) / d);
  const double logv = (1 + r) * d * std::pow(n, 1 / (1 + r)) - (1 + 2 * r) / (2 * (1 + r)) * std::log(n);
  return static_cast<double>(g) * std::exp(logv) / denom;
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

}  // namespace plimit
