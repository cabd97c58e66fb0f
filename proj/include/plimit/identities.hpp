#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "enumerate.hpp"

namespace plimit {

struct EquinumerousPair {
  std::string name;
  ClassSpec left, right;
};

inline std::vector<EquinumerousPair> registered_pairs() {
  std::vector<EquinumerousPair> p{
      {"triangular/convex", ClassSpec::parts_in(PartSizeSet::triangular()), ClassSpec::convex(2)},
      {"binom2/convex2", ClassSpec::parts_in(PartSizeSet::binomial(2)), ClassSpec::convex(2)},
      {"binom3/convex3", ClassSpec::parts_in(PartSizeSet::binomial(3)), ClassSpec::convex(3)},
      {"odd/distinct", ClassSpec::odd(), ClassSpec::distinct()},
  };
  for (int r = 1; r <= 3; ++r)
    p.push_back({"glaisher-o" + std::to_string(r) + "/glaisher-d" + std::to_string(r), ClassSpec::glaisher_o(r),
                 ClassSpec::glaisher_d(r)});
  p.push_back({"self-conjugate/odd-distinct", ClassSpec::self_conjugate(), ClassSpec::odd_distinct()});
  p.push_back({"stanton-a/stanton-b(1,3)", ClassSpec::stanton_a(1, 3), ClassSpec::stanton_b(1, 3)});
  p.push_back({"stanton-a/stanton-b(2,2)", ClassSpec::stanton_a(2, 2), ClassSpec::stanton_b(2, 2)});
  p.push_back({"distinct-mod4/lebesgue", ClassSpec::distinct_mod4(), ClassSpec::lebesgue_simple()});
  p.push_back({"romik-a/romik-b", ClassSpec::romik_a(), ClassSpec::romik_b()});
  for (part_t k = 1; k <= 8; ++k)
    p.push_back({"even-largest/even-count(" + std::to_string(k) + ")", ClassSpec::even_bounded_largest(k),
                 ClassSpec::even_bounded_count(k)});
  return p;
}

struct IdentityRow {
  std::string pair;
  part_t n;
  BigInt left, right;
  bool ok() const { return left == right; }
};

inline std::vector<IdentityRow> check_identities(part_t nmax, const std::vector<EquinumerousPair>& pairs = registered_pairs()) {
  if (nmax < 0 || nmax > 60) throw std::domain_error("identities: nmax must be in [0, 60]");
  std::vector<IdentityRow> rows;
  for (const auto& p : pairs) {
    const auto a = count_table(p.left, nmax), b = count_table(p.right, nmax);
    for (part_t n = 0; n <= nmax; ++n) rows.push_back({p.name, n, a[static_cast<std::size_t>(n)], b[static_cast<std::size_t>(n)]});
  }
  return rows;
}

}  // namespace plimit
