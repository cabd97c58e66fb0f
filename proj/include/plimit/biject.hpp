#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "enumerate.hpp"
#include "numeric.hpp"

namespace plimit {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------------------------
// Direct combinatorial maps

namespace detail {

inline part_t odd_part(part_t x, part_t& twos) {
  twos = 1;
  while (x % 2 == 0) {
    x /= 2;
    twos *= 2;
  }
  return x;
}

inline void require_member(const ClassSpec& c, const Partition& p, const char* who) {
  if (!member(c, p)) throw std::domain_error(std::string(who) + ": " + to_string(p) + " is not in " + c.name());
}

}  // namespace detail

// distinct -> odd: part m 2^s becomes 2^s parts m
inline Partition glaisher(const Partition& p) {
  detail::require_member(ClassSpec::distinct(), p, "glaisher");
  MultiplicityVector out;
  for (part_t x : p.parts) {
    part_t twos;
    const part_t odd = detail::odd_part(x, twos);
    out[odd] += twos;
  }
  return from_multiplicities(out);
}

// odd -> distinct: multiplicity of m written in binary, bit s gives part m 2^s
inline Partition glaisher_inv(const Partition& p) {
  detail::require_member(ClassSpec::odd(), p, "glaisher_inv");
  std::vector<part_t> parts;
  for (auto [m, c] : to_multiplicities(p))
    for (part_t bit = 1; c; bit *= 2, c /= 2)
      if (c % 2) parts.push_back(m * bit);
  return Partition::from_unsorted(std::move(parts));
}

// every even part 2k becomes two parts k
inline MultiplicityVector ohara_step(const MultiplicityVector& m) {
  MultiplicityVector out;
  for (auto [u, c] : m) {
    if (c == 0) continue;
    if (u % 2 == 0)
      out[u / 2] += 2 * c;
    else
      out[u] += c;
  }
  return out;
}

inline MultiplicityVector ohara_fixpoint(MultiplicityVector m) {
  prune(m);
  for (;;) {
    bool even = false;
    for (const auto& kv : m) even = even || kv.first % 2 == 0;
    if (!even) return m;
    m = ohara_step(m);
  }
}

// A = r-th powers with multiplicity < m^r  ->  B = k^r with m not dividing k
inline Partition stanton(int r, int m, const Partition& p) {
  if (r < 1 || m < 2) throw std::domain_error("stanton: need r >= 1, m >= 2");
  for (part_t x : p.parts)
    if (detail::exact_root(x, r) < 1) throw std::domain_error("stanton: part " + std::to_string(x) + " is not an r-th power");
  detail::require_member(ClassSpec::stanton_a(r, m), p, "stanton");
  MultiplicityVector out;
  for (auto [x, c] : to_multiplicities(p)) {
    part_t k = detail::exact_root(x, r), scale = 1;
    while (k % m == 0) {
      k /= m;
      scale *= detail::ipow(m, r);
    }
    out[detail::ipow(k, r)] += c * scale;
  }
  return from_multiplicities(out);
}

inline Partition stanton_inv(int r, int m, const Partition& p) {
  if (r < 1 || m < 2) throw std::domain_error("stanton_inv: need r >= 1, m >= 2");
  detail::require_member(ClassSpec::stanton_b(r, m), p, "stanton_inv");
  const part_t base = detail::ipow(m, r);
  MultiplicityVector out;
  for (auto [x, c] : to_multiplicities(p)) {
    part_t k = detail::exact_root(x, r);
    for (; c; c /= base, k *= m)
      if (c % base) out[detail::ipow(k, r)] += c % base;
  }
  return from_multiplicities(out);
}

inline part_t binom_size(int r, part_t j) {
  // binom(r - 1 + j, r)
  part_t v = 1;
  for (int i = 1; i <= r; ++i) v = v * (j - 1 + i) / i;
  return v;
}

// multiplicities over u_j = binom(r-1+j, r)  ->  partition with nonnegative r-th differences
inline Partition rth_diff_forward(int r, const MultiplicityVector& m) {
  if (r < 1) throw std::domain_error("rth_diff_forward: r >= 1");
  std::vector<std::pair<part_t, part_t>> idx;  // (j, m_j)
  for (auto [u, c] : m) {
    if (c < 0) throw std::domain_error("rth_diff_forward: negative multiplicity");
    if (c == 0) continue;
    part_t j = 1;
    while (binom_size(r, j) < u) ++j;
    if (binom_size(r, j) != u) throw std::domain_error("rth_diff_forward: size " + std::to_string(u) + " not in U");
    idx.emplace_back(j, c);
  }
  part_t len = idx.empty() ? 0 : idx.back().first;
  std::vector<part_t> mu(static_cast<std::size_t>(len), 0);
  for (auto [j, c] : idx)
    for (part_t i = 1; i <= j; ++i) {
      // binom(r-1+j-i, r-1)
      part_t v = 1;
      for (int s = 1; s <= r - 1; ++s) v = v * (j - i + s) / s;
      mu[static_cast<std::size_t>(i - 1)] += c * v;
    }
  return Partition(mu);
}

inline MultiplicityVector rth_diff_inverse(int r, const Partition& p) {
  if (r < 1) throw std::domain_error("rth_diff_inverse: r >= 1");
  const auto d = rth_differences(p, r);
  MultiplicityVector m;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) throw std::domain_error("rth_diff_inverse: " + to_string(p) + " has a negative r-th difference");
    if (d[i]) m[binom_size(r, static_cast<part_t>(i + 1))] = d[i];
  }
  return m;
}

// self-conjugate -> odd distinct: principal hooks
inline Partition hooks_forward(const Partition& p) {
  detail::require_member(ClassSpec::self_conjugate(), p, "hooks_forward");
  std::vector<part_t> out;
  const part_t d = durfee(p);
  for (part_t i = 1; i <= d; ++i) out.push_back(2 * (p[static_cast<std::size_t>(i)] - i) + 1);
  return Partition(out);
}

inline Partition hooks_inverse(const Partition& q) {
  detail::require_member(ClassSpec::odd_distinct(), q, "hooks_inverse");
  const auto d = static_cast<part_t>(q.length());
  std::vector<part_t> rows;
  for (part_t i = 1; i <= d; ++i) rows.push_back((q[static_cast<std::size_t>(i)] - 1) / 2 + i);
  const part_t longest = rows.empty() ? 0 : rows.front();
  for (part_t i = d + 1; i <= longest; ++i) {
    part_t c = 0;
    for (part_t j = 0; j < d; ++j) c += rows[static_cast<std::size_t>(j)] >= i;
    if (c == 0) break;
    rows.push_back(c);
  }
  return Partition(rows);
}

// parts multiples of M = m^r with largest <= M k  ->  multiples of M with at most k parts:
// divide by M, multiply multiplicities by M, conjugate
inline Partition even_parts_generalized(int m, int r, part_t k, const Partition& p) {
  if (m < 2 || r < 1 || k < 0) throw std::domain_error("even_parts: need m >= 2, r >= 1, k >= 0");
  const part_t M = detail::ipow(m, r);
  detail::require_member(ClassSpec::even_bounded_largest(k, M), p, "even_parts");
  MultiplicityVector scaled;
  for (auto [u, c] : to_multiplicities(p)) scaled[u / M] = c * M;
  return conjugate(from_multiplicities(scaled));
}

inline Partition even_parts_map(part_t k, const Partition& p) { return even_parts_generalized(2, 1, k, p); }

inline Partition even_parts_generalized_inv(int m, int r, part_t k, const Partition& q) {
  const part_t M = detail::ipow(m, r);
  detail::require_member(ClassSpec::even_bounded_count(k, M), q, "even_parts_inv");
  MultiplicityVector out;
  for (std::size_t i = 1; i <= q.length(); ++i) {
    const part_t gap = q[i] - q[i + 1];
    if (gap) out[M * static_cast<part_t>(i)] = gap / M;
  }
  return from_multiplicities(out);
}

// ---------------------------------------------------------------------------------------------
// Linear maps on multiplicity vectors

struct StabilityKernel {
  // domain part sizes u_k ~ B k^r with multiplicity bound a, tilted at x = exp(-c / n^{r/(1+r)})
  PartSizeSet U = PartSizeSet::integers();
  double a = kInf;
  std::optional<double> c;        // default d(r, B, a)
  double index_bound = kInf;      // only indices k <= index_bound * n^{1/(1+r)} are in the domain
  std::function<double(double t, double y, double phi)> K;
  std::function<std::vector<double>(double t)> breakpoints;  // discontinuities of K in y

  double r() const { return U.degree(); }
  double B() const { return U.B(); }
  double constant() const { return c ? *c : const_d(r(), B(), a); }
};

struct LinearMapSpec {
  enum class Kind { MM, MP };
  Kind kind = Kind::MM;
  std::string name;
  ClassSpec domain, codomain;
  // nonzero entries (i, v(i, j)) of column j (j a part size of the domain)
  std::function<std::vector<std::pair<part_t, Rational>>(part_t j)> column_fn;
  // optional closed form for a single entry v(i, j); defaults to a column scan
  std::function<Rational(part_t i, part_t j)> entry_fn;
  // membership of j in the weight set U (column weight j when true, 0 otherwise)
  std::function<bool(part_t j)> in_U;
  part_t working_bound = 2000;
  std::optional<StabilityKernel> kernel;

  std::vector<std::pair<part_t, Rational>> column(part_t j) const {
    if (j < 1) throw std::domain_error(name + ": column index must be positive");
    if (j > working_bound)
      throw std::out_of_range(name + ": column " + std::to_string(j) + " beyond working bound " +
                              std::to_string(working_bound));
    return column_fn(j);
  }

  Rational entry(part_t i, part_t j) const {
    if (entry_fn) {
      if (j < 1 || i < 1) throw std::domain_error(name + ": indices must be positive");
      if (j > working_bound) throw std::out_of_range(name + ": column " + std::to_string(j) + " beyond working bound");
      return entry_fn(i, j);
    }
    for (const auto& [row, v] : column(j))
      if (row == i) return v;
    return 0;
  }
};

namespace detail {

inline part_t to_integer(const Rational& v, const std::string& who) {
  if (denominator(v) != 1) throw std::domain_error(who + ": non-integral image component");
  if (v < 0) throw std::domain_error(who + ": negative image component");
  return static_cast<part_t>(numerator(v));
}

inline std::vector<Rational> image_vector(const LinearMapSpec& s, const MultiplicityVector& m) {
  std::vector<Rational> acc;
  for (auto [j, c] : m) {
    if (c == 0) continue;
    for (const auto& [i, v] : s.column(j)) {
      if (static_cast<std::size_t>(i) >= acc.size()) acc.resize(static_cast<std::size_t>(i) + 1);
      acc[static_cast<std::size_t>(i)] += v * c;
    }
  }
  return acc;
}

}  // namespace detail

// MM: multiplicities to multiplicities
inline MultiplicityVector apply_mm(const LinearMapSpec& s, const MultiplicityVector& m) {
  if (s.kind != LinearMapSpec::Kind::MM) throw std::logic_error(s.name + ": not an MM map");
  MultiplicityVector out;
  const auto acc = detail::image_vector(s, m);
  for (std::size_t i = 1; i < acc.size(); ++i) {
    const part_t v = detail::to_integer(acc[i], s.name);
    if (v) out[static_cast<part_t>(i)] = v;
  }
  return out;
}

// MP: multiplicities to parts (part i of the image is row i)
inline Partition apply_mp(const LinearMapSpec& s, const MultiplicityVector& m) {
  if (s.kind != LinearMapSpec::Kind::MP) throw std::logic_error(s.name + ": not an MP map");
  std::vector<part_t> parts;
  const auto acc = detail::image_vector(s, m);
  for (std::size_t i = 1; i < acc.size(); ++i) {
    const part_t v = detail::to_integer(acc[i], s.name);
    if (v) parts.push_back(v);
  }
  return Partition::from_unsorted(std::move(parts));
}

// Partition-level view of either kind
inline Partition apply(const LinearMapSpec& s, const Partition& p) {
  const auto m = to_multiplicities(p);
  return s.kind == LinearMapSpec::Kind::MM ? from_multiplicities(apply_mm(s, m)) : apply_mp(s, m);
}

// ---- named specs

inline LinearMapSpec identity_spec(part_t bound = 2000) {
  LinearMapSpec s;
  s.kind = LinearMapSpec::Kind::MM;
  s.name = "identity";
  s.domain = s.codomain = ClassSpec::unrestricted();
  s.column_fn = [](part_t j) { return std::vector<std::pair<part_t, Rational>>{{j, Rational(1)}}; };
  s.in_U = [](part_t) { return true; };
  s.working_bound = bound;
  return s;
}

// Glaisher's matrix: column j = i 2^s (i odd) has the single entry v(i, j) = 2^s
inline LinearMapSpec glaisher_spec(part_t bound = 2000) {
  LinearMapSpec s;
  s.kind = LinearMapSpec::Kind::MM;
  s.name = "glaisher";
  s.domain = ClassSpec::distinct();
  s.codomain = ClassSpec::odd();
  s.column_fn = [](part_t j) {
    part_t twos;
    const part_t odd = detail::odd_part(j, twos);
    return std::vector<std::pair<part_t, Rational>>{{odd, Rational(twos)}};
  };
  s.in_U = [](part_t) { return true; };
  s.working_bound = bound;
  StabilityKernel k;
  k.U = PartSizeSet::integers();
  k.a = 2;
  k.K = [](double t, double y, double phi) {
    if (!(t > 0)) return 0.0;
    double count = 0;
    for (double s = t; s <= y; s *= 2) count += 1;
    return 0.5 * phi * count;
  };
  k.breakpoints = [](double t) {
    std::vector<double> b;
    for (double s = t; s < 60; s *= 2) b.push_back(s);
    return b;
  };
  s.kernel = k;
  return s;
}

// One O'Hara step: column 2k has v(k, 2k) = 2, odd columns are fixed
inline LinearMapSpec ohara_step_spec(part_t bound = 2000) {
  LinearMapSpec s;
  s.kind = LinearMapSpec::Kind::MM;
  s.name = "ohara-step";
  s.domain = s.codomain = ClassSpec::unrestricted();  // weight-preserving, not onto
  s.column_fn = [](part_t j) {
    if (j % 2) return std::vector<std::pair<part_t, Rational>>{{j, Rational(1)}};
    return std::vector<std::pair<part_t, Rational>>{{j / 2, Rational(2)}};
  };
  s.in_U = [](part_t) { return true; };
  s.working_bound = bound;
  return s;
}

inline LinearMapSpec stanton_spec(int r, int m, part_t bound = 2000) {
  if (r < 1 || m < 2) throw std::domain_error("stanton_spec: need r >= 1, m >= 2");
  LinearMapSpec s;
  s.kind = LinearMapSpec::Kind::MM;
  s.name = "stanton";
  s.domain = ClassSpec::stanton_a(r, m);
  s.codomain = ClassSpec::stanton_b(r, m);
  s.column_fn = [r, m](part_t j) {
    part_t k = detail::exact_root(j, r);
    if (k < 1) return std::vector<std::pair<part_t, Rational>>{};
    part_t scale = 1;
    while (k % m == 0) {
      k /= m;
      scale *= detail::ipow(m, r);
    }
    return std::vector<std::pair<part_t, Rational>>{{detail::ipow(k, r), Rational(scale)}};
  };
  s.in_U = [r](part_t j) { return detail::exact_root(j, r) > 0; };
  s.working_bound = bound;
  return s;
}

// column u_j = binom(r-1+j, r) has v(i, u_j) = binom(r-1+j-i, r-1) for i <= j
inline LinearMapSpec rthdiff_spec(int r, part_t bound = 2000) {
  if (r < 1) throw std::domain_error("rthdiff_spec: r >= 1");
  LinearMapSpec s;
  s.kind = LinearMapSpec::Kind::MP;
  s.name = "rthdiff";
  s.domain = ClassSpec::parts_in(PartSizeSet::binomial(r));
  s.codomain = ClassSpec::convex(r);
  auto index_of = [r](part_t u) -> part_t {
    // u_j ~ j^r / r!, so start just below the real root
    const double est = std::pow(static_cast<double>(u) * std::tgamma(r + 1.0), 1.0 / r) - r - 1;
    part_t j = std::max<part_t>(1, static_cast<part_t>(est));
    while (binom_size(r, j) < u) ++j;
    return binom_size(r, j) == u ? j : 0;
  };
  s.column_fn = [r, index_of](part_t u) {
    std::vector<std::pair<part_t, Rational>> col;
    const part_t j = index_of(u);
    for (part_t i = 1; i <= j; ++i) {
      boost::multiprecision::cpp_int v = 1;
      for (int t = 1; t <= r - 1; ++t) v = v * (j - i + t) / t;
      col.emplace_back(i, Rational(v));
    }
    return col;
  };
  s.entry_fn = [r, index_of](part_t i, part_t u) {
    const part_t j = index_of(u);
    if (j == 0 || i > j) return Rational(0);
    boost::multiprecision::cpp_int v = 1;
    for (int t = 1; t <= r - 1; ++t) v = v * (j - i + t) / t;
    return Rational(v);
  };
  s.in_U = [index_of](part_t u) { return index_of(u) > 0; };
  s.working_bound = bound;
  StabilityKernel k;
  k.U = PartSizeSet::binomial(r);
  const double fm1 = std::tgamma(static_cast<double>(r));
  k.K = [r, fm1](double t, double y, double phi) { return y > t ? std::pow(y - t, r - 1) / fm1 * phi : 0.0; };
  k.breakpoints = [](double t) { return std::vector<double>{t}; };
  s.kernel = k;
  return s;
}

// column M i (i <= k) has v(l, M i) = M for l <= i; the bounded-largest class is indexed by k
inline LinearMapSpec evenparts_spec(part_t k, int m = 2, int r = 1, part_t bound = 2000) {
  if (m < 2 || r < 1 || k < 0) throw std::domain_error("evenparts_spec: need m >= 2, r >= 1, k >= 0");
  const part_t M = detail::ipow(m, r);
  LinearMapSpec s;
  s.kind = LinearMapSpec::Kind::MP;
  s.name = "evenparts";
  s.domain = ClassSpec::even_bounded_largest(k, M);
  s.codomain = ClassSpec::even_bounded_count(k, M);
  s.column_fn = [M, k](part_t j) {
    std::vector<std::pair<part_t, Rational>> col;
    if (j % M || j / M > k) return col;
    for (part_t l = 1; l <= j / M; ++l) col.emplace_back(l, Rational(M));
    return col;
  };
  s.entry_fn = [M, k](part_t l, part_t j) {
    return (j % M == 0 && j / M <= k && l <= j / M) ? Rational(M) : Rational(0);
  };
  s.in_U = [M, k](part_t j) { return j % M == 0 && j / M <= k; };
  s.working_bound = bound;
  return s;
}

// Kernel for the bounded-even family with k ~ b sqrt(n): K = 2 phi on t <= y <= b (indices scaled by sqrt n)
inline StabilityKernel bounded_even_kernel(double b, double c) {
  StabilityKernel k;
  k.U = PartSizeSet::polynomial({0, 2}, 1, "2k");
  k.c = c;
  k.index_bound = b;
  k.K = [b](double t, double y, double phi) { return (t <= y && y <= b) ? 2 * phi : 0.0; };
  k.breakpoints = [b](double t) { return std::vector<double>{t, b}; };
  return k;
}

// ---------------------------------------------------------------------------------------------
// Validators

struct StructureReport {
  bool pass = true;
  std::string failure;        // first violation, empty on success
  part_t failed_index = 0;    // column j or size n of the first violation
  part_t columns_checked = 0;
  part_t sizes_checked = 0;
};

// exhaustive = false checks only the column identities (for maps that are not onto, like one O'Hara step)
inline StructureReport validate_structure(const LinearMapSpec& s, part_t nmax, bool exhaustive = true) {
  if (nmax > 2000) throw std::domain_error("validate_structure: nmax <= 2000");
  StructureReport rep;
  auto fail = [&](part_t idx, std::string why) {
    rep.pass = false;
    rep.failed_index = idx;
    rep.failure = std::move(why);
    return rep;
  };
  for (part_t j = 1; j <= nmax; ++j) {
    Rational sum = 0;
    for (const auto& [i, v] : s.column(j)) sum += s.kind == LinearMapSpec::Kind::MP ? v : v * (s.in_U(i) ? i : 0);
    const Rational want = s.in_U(j) ? Rational(j) : Rational(0);
    if (sum != want)
      return fail(j, (s.kind == LinearMapSpec::Kind::MP ? "column sum " : "weighted column sum ") + sum.str() +
                         " != " + want.str() + " at j = " + std::to_string(j));
    ++rep.columns_checked;
  }
  for (part_t n = 0; exhaustive && n <= std::min<part_t>(nmax, 40); ++n) {
    std::set<Partition> images;
    const auto dom = enumerate_all(s.domain, n);
    for (const auto& p : dom) {
      Partition q;
      try {
        q = apply(s, p);
      } catch (const std::exception& e) {
        return fail(n, std::string("image of ") + to_string(p) + " undefined: " + e.what());
      }
      if (q.size() != n) return fail(n, "size not preserved on " + to_string(p));
      if (!member(s.codomain, q)) return fail(n, "image " + to_string(q) + " of " + to_string(p) + " outside codomain");
      if (!images.insert(q).second) return fail(n, "two partitions map to " + to_string(q));
    }
    if (BigInt(dom.size()) != count(s.codomain, n)) return fail(n, "domain and codomain sizes differ at n = " + std::to_string(n));
    ++rep.sizes_checked;
  }
  return rep;
}

struct BijectionRow {
  part_t n;
  std::size_t domain_count, codomain_count, distinct_images;
  bool pass;
};

// Exhaustive check that f is a size-preserving bijection domain_n -> codomain_n (and inv its inverse)
inline std::vector<BijectionRow> verify_bijection(const std::function<Partition(const Partition&)>& f,
                                                  const std::function<Partition(const Partition&)>& inv,
                                                  const ClassSpec& domain, const ClassSpec& codomain, part_t nmax) {
  std::vector<BijectionRow> rows;
  for (part_t n = 0; n <= nmax; ++n) {
    const auto dom = enumerate_all(domain, n);
    const auto cod = enumerate_all(codomain, n);
    std::set<Partition> images;
    bool ok = dom.size() == cod.size();
    for (const auto& p : dom) {
      Partition q;
      try {
        q = f(p);
      } catch (const std::exception&) {
        ok = false;
        continue;
      }
      ok = ok && q.size() == n && member(codomain, q);
      if (inv) {
        try {
          ok = ok && inv(q) == p;
        } catch (const std::exception&) {
          ok = false;
        }
      }
      images.insert(q);
    }
    ok = ok && images.size() == dom.size();
    rows.push_back({n, dom.size(), cod.size(), images.size(), ok});
  }
  return rows;
}

inline bool all_pass(const std::vector<BijectionRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const BijectionRow& r) { return r.pass; });
}

// ---------------------------------------------------------------------------------------------
// Stability

struct StabilityReport {
  std::vector<double> n_list, t_grid;
  std::vector<std::vector<double>> ratio;  // ratio[n index][t index]
  bool pass = false;                       // |ratio - 1| decreases along n_list at every t

  double max_deviation(std::size_t ni) const {
    double m = 0;
    for (double v : ratio[ni]) m = std::max(m, std::abs(v - 1));
    return m;
  }
};

// Limit of the row functional: int K(t, y, phi(y)) dy with phi(y) = E_a(exp(-c B y^r))
inline double stability_limit(const StabilityKernel& k, double t) {
  const double r = k.r(), B = k.B(), c = k.constant();
  auto f = [&](double y) { return y <= 0 ? 0.0 : k.K(t, y, mean_rate(c * B * std::pow(y, r), k.a)); };
  std::vector<double> pts{0.0};
  if (k.breakpoints)
    for (double b : k.breakpoints(t))
      if (b > 0) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(f, pts[i], pts[i + 1], 1e-12);
  if (std::isinf(k.index_bound)) total += integrate_tail(f, pts.back());
  return total;
}

// Finite-n row functional.  MP: (1/alpha) sum_k v(ceil(beta t), u_k) E[Z_{u_k}];
// MM: (alpha/n) sum_k E[Z_{u_k}] sum_{i >= ceil(alpha t)} v(i, u_k).
inline double stability_functional(const LinearMapSpec& s, double n, double t) {
  const StabilityKernel& k = *s.kernel;
  const double r = k.r(), c = k.constant();
  const double alpha = std::pow(n, r / (1 + r)), beta = std::pow(n, 1 / (1 + r));
  const double kmax = std::isinf(k.index_bound) ? kInf : std::floor(k.index_bound * beta + 1e-9);
  LinearMapSpec big = s;
  double sum = 0;
  const auto row = static_cast<part_t>(std::ceil((s.kind == LinearMapSpec::Kind::MP ? beta : alpha) * t - 1e-12));
  for (part_t idx = 1; idx <= kmax; ++idx) {
    const part_t u = k.U.u(idx);
    const double mean = mean_rate(c * static_cast<double>(u) / alpha, k.a);
    if (mean < 1e-22 && static_cast<double>(idx) > beta) break;
    big.working_bound = std::max(big.working_bound, u);
    double coeff = 0;
    if (s.kind == LinearMapSpec::Kind::MP) {
      coeff = big.entry(row, u).convert_to<double>();
    } else {
      for (const auto& [i, v] : big.column(u))
        if (i >= row) coeff += v.convert_to<double>();
    }
    sum += coeff * mean;
  }
  return s.kind == LinearMapSpec::Kind::MP ? sum / alpha : sum * alpha / n;
}

// The lattice point actually sampled by the row functional: ceil(scale t) / scale
inline double stability_lattice_t(const LinearMapSpec& s, double n, double t) {
  const double r = s.kernel->r();
  const double scale = s.kind == LinearMapSpec::Kind::MP ? std::pow(n, 1 / (1 + r)) : std::pow(n, r / (1 + r));
  return std::ceil(scale * t - 1e-12) / scale;
}

inline StabilityReport check_stability(const LinearMapSpec& s, const std::vector<double>& n_list,
                                       const std::vector<double>& t_grid) {
  if (!s.kernel) throw std::domain_error(s.name + ": no stability kernel");
  StabilityReport rep;
  rep.n_list = n_list;
  rep.t_grid = t_grid;
  for (double n : n_list) {
    std::vector<double> row;
    for (double t : t_grid)
      row.push_back(stability_functional(s, n, t) / stability_limit(*s.kernel, stability_lattice_t(s, n, t)));
    rep.ratio.push_back(row);
  }
  rep.pass = true;
  for (std::size_t ni = 1; ni < n_list.size(); ++ni)
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti)
      rep.pass = rep.pass && std::abs(rep.ratio[ni][ti] - 1) < std::abs(rep.ratio[ni - 1][ti] - 1);
  return rep;
}

}  // namespace plimit
