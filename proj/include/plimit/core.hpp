#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plimit {

using part_t = std::int64_t;

// Partition: parts stored nonincreasing, all positive.
struct Partition {
  std::vector<part_t> parts;

  Partition() = default;

  explicit Partition(std::vector<part_t> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1) throw std::invalid_argument("partition: nonpositive part");
      if (i > 0 && parts[i - 1] < parts[i])
        throw std::invalid_argument("partition: parts must be nonincreasing");
    }
  }

  static Partition from_unsorted(std::vector<part_t> p) {
    std::sort(p.begin(), p.end(), std::greater<>());
    while (!p.empty() && p.back() == 0) p.pop_back();
    return Partition(std::move(p));
  }

  part_t size() const { return std::accumulate(parts.begin(), parts.end(), part_t{0}); }
  std::size_t length() const { return parts.size(); }
  bool empty() const { return parts.empty(); }
  part_t largest() const { return parts.empty() ? 0 : parts.front(); }

  // 1-indexed access, 0 past the end
  part_t operator[](std::size_t i) const { return i >= 1 && i <= parts.size() ? parts[i - 1] : 0; }

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;
};

// part size -> multiplicity, zero entries never stored
using MultiplicityVector = std::map<part_t, part_t>;

inline part_t weight(const MultiplicityVector& m) {
  part_t w = 0;
  for (auto [i, c] : m) w += i * c;
  return w;
}

inline MultiplicityVector to_multiplicities(const Partition& p) {
  MultiplicityVector m;
  for (part_t x : p.parts) ++m[x];
  return m;
}

inline Partition from_multiplicities(const MultiplicityVector& m) {
  std::vector<part_t> v;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    if (it->second < 0 || it->first < 1)
      throw std::invalid_argument("multiplicity vector: negative entry or nonpositive size");
    v.insert(v.end(), static_cast<std::size_t>(it->second), it->first);
  }
  return Partition(std::move(v));
}

inline void prune(MultiplicityVector& m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
}

inline Partition conjugate(const Partition& p) {
  std::vector<part_t> c(static_cast<std::size_t>(p.largest()), 0);
  for (part_t x : p.parts)
    for (part_t i = 0; i < x; ++i) ++c[static_cast<std::size_t>(i)];
  return Partition(std::move(c));
}

inline part_t durfee(const Partition& p) {
  part_t d = 0;
  while (static_cast<std::size_t>(d) < p.length() && p.parts[static_cast<std::size_t>(d)] >= d + 1) ++d;
  return d;
}

// D(t): number of parts of size >= ceil(t)
inline part_t diagram(const Partition& p, double t) {
  if (!(t > 0)) throw std::invalid_argument("diagram: t must be positive");
  const double c = std::ceil(t);
  part_t n = 0;
  for (part_t x : p.parts)
    if (static_cast<double>(x) >= c) ++n;
  return n;
}

inline std::vector<double> scaled_diagram(const Partition& p, double n, double alpha,
                                          const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("scaled_diagram: empty grid");
  if (!(alpha > 0) || !(n > 0)) throw std::invalid_argument("scaled_diagram: alpha and n must be positive");
  std::vector<double> out;
  out.reserve(grid.size());
  // parts are descending: count of parts >= c by binary search
  for (double t : grid) {
    const double c = std::ceil(alpha * t);
    auto it = std::partition_point(p.parts.begin(), p.parts.end(),
                                   [c](part_t x) { return static_cast<double>(x) >= c; });
    out.push_back(alpha / n * static_cast<double>(it - p.parts.begin()));
  }
  return out;
}

inline std::string to_string(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.parts[i]);
  }
  return s;
}

inline std::string to_string(const MultiplicityVector& m) {
  std::string s = "{";
  bool first = true;
  for (auto [i, c] : m) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(i) + ":" + std::to_string(c);
  }
  return s + "}";
}

// accepts "4,3,1", "4 3 1", "()" or "" (empty partition); order of input parts is not required
inline Partition parse_partition(const std::string& text) {
  std::vector<part_t> v;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t pos = 0;
    long long x = std::stoll(tok, &pos);
    if (pos != tok.size() || x < 1) throw std::invalid_argument("bad part: " + tok);
    v.push_back(x);
    tok.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '(' || ch == ')' || ch == '[' || ch == ']') flush();
    else tok += ch;
  }
  flush();
  return Partition::from_unsorted(std::move(v));
}

// Set of allowed part sizes: an integer-valued polynomial u_k (k >= 1) or an explicit finite list.
class PartSizeSet {
 public:
  // coefficients a_0..a_r of u_k, each divided by den
  static PartSizeSet polynomial(std::vector<std::int64_t> coeffs_ascending, std::int64_t den = 1,
                                std::string name = {}) {
    PartSizeSet s;
    while (coeffs_ascending.size() > 1 && coeffs_ascending.back() == 0) coeffs_ascending.pop_back();
    s.coef_ = std::move(coeffs_ascending);
    s.den_ = den;
    s.name_ = std::move(name);
    if (s.den_ <= 0 || s.coef_.size() < 2 || s.coef_.back() <= 0)
      throw std::invalid_argument("PartSizeSet: need degree >= 1 and positive leading coefficient");
    for (std::int64_t k = 1; k <= 64; ++k) {
      if (s.u(k) < 1) throw std::invalid_argument("PartSizeSet: u_k must be >= 1");
      if (k > 1 && s.u(k) <= s.u(k - 1)) throw std::invalid_argument("PartSizeSet: u_k must increase");
    }
    return s;
  }

  static PartSizeSet list(std::vector<part_t> elems, std::string name = {}) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty() || elems.front() < 1) throw std::invalid_argument("PartSizeSet: bad list");
    PartSizeSet s;
    s.list_ = std::move(elems);
    s.name_ = std::move(name);
    return s;
  }

  static PartSizeSet integers() { return polynomial({0, 1}, 1, "k"); }
  static PartSizeSet odd() { return polynomial({-1, 2}, 1, "2k-1"); }
  static PartSizeSet triangular() { return polynomial({0, 1, 1}, 2, "k(k+1)/2"); }
  static PartSizeSet powers(int r) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(r) + 1, 0);
    c.back() = 1;
    return polynomial(c, 1, "k^" + std::to_string(r));
  }
  // u_k = binom(r-1+k, r)
  static PartSizeSet binomial(int r) {
    std::vector<std::int64_t> c{1};
    std::int64_t den = 1;
    for (int i = 0; i < r; ++i) {
      // multiply by (k + i)
      std::vector<std::int64_t> nc(c.size() + 1, 0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        nc[j] += c[j] * i;
        nc[j + 1] += c[j];
      }
      c = std::move(nc);
      den *= (i + 1);
    }
    return polynomial(c, den, "binom(k+" + std::to_string(r - 1) + "," + std::to_string(r) + ")");
  }

  bool is_polynomial() const { return list_.empty(); }
  int degree() const { return is_polynomial() ? static_cast<int>(coef_.size()) - 1 : 0; }
  double B() const { return static_cast<double>(coef_.back()) / static_cast<double>(den_); }
  double E() const { return static_cast<double>(coef_[coef_.size() - 2]) / static_cast<double>(den_); }
  const std::vector<std::int64_t>& coefficients() const { return coef_; }
  std::int64_t denominator() const { return den_; }
  const std::string& name() const { return name_; }

  part_t u(std::int64_t k) const {
    if (!is_polynomial()) return list_.at(static_cast<std::size_t>(k - 1));
    __int128 acc = 0;
    for (std::size_t i = coef_.size(); i-- > 0;) acc = acc * k + coef_[i];
    if (acc % den_ != 0) throw std::logic_error("PartSizeSet: polynomial is not integer valued");
    return static_cast<part_t>(acc / den_);
  }

  std::vector<part_t> elements_upto(part_t n) const {
    std::vector<part_t> out;
    if (!is_polynomial()) {
      for (part_t x : list_)
        if (x <= n) out.push_back(x);
      return out;
    }
    for (std::int64_t k = 1;; ++k) {
      part_t x = u(k);
      if (x > n) break;
      out.push_back(x);
    }
    return out;
  }

  bool contains(part_t x) const {
    if (x < 1) return false;
    if (!is_polynomial()) return std::binary_search(list_.begin(), list_.end(), x);
    std::int64_t lo = 1, hi = 1;
    while (u(hi) < x) hi *= 2;
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (u(mid) < x) lo = mid + 1;
      else hi = mid;
    }
    return u(lo) == x;
  }

  part_t smallest() const { return is_polynomial() ? u(1) : list_.front(); }

  // gcd of the whole set; for an integer-valued polynomial the first deg+1 values already generate it
  part_t gcd() const {
    part_t g = 0;
    if (!is_polynomial()) {
      for (part_t x : list_) g = std::gcd(g, x);
      return g;
    }
    for (std::int64_t k = 1; k <= degree() + 2; ++k) g = std::gcd(g, u(k));
    return g;
  }

 private:
  std::vector<std::int64_t> coef_;
  std::int64_t den_ = 1;
  std::vector<part_t> list_;
  std::string name_;
};

constexpr part_t kUnbounded = -1;

// Restricted partition family.
struct ClassSpec {
  enum class Kind {
    Unrestricted,
    AndrewsBound,
    PartsIn,
    Distinct,
    Odd,
    OddDistinct,
    GlaisherO,
    GlaisherD,
    Convex,
    MinDiff,
    RomikA,
    RomikB,
    LebesgueL,
    LebesgueSimple,
    SelfConjugate,
    DistinctMod4,
    EvenBoundedLargest,
    EvenBoundedCount,
    StantonA,
    StantonB,
  };

  Kind kind = Kind::Unrestricted;
  // AndrewsBound: bounds[i-1] = a_i (multiplicity of i strictly below a_i), kUnbounded for infinity;
  // sizes past the end use tail_bound
  std::vector<part_t> bounds;
  part_t tail_bound = kUnbounded;
  std::optional<PartSizeSet> U;  // PartsIn
  part_t mult_bound = kUnbounded;  // PartsIn: a
  int r = 1;  // GlaisherO/D, Convex, StantonA/B
  int m = 2;  // StantonA/B
  int d = 1;  // MinDiff
  bool forbid_one = false;  // MinDiff
  int l = 1, k = 2;  // LebesgueL
  part_t bound_k = 1;  // EvenBoundedLargest/Count
  part_t step = 2;  // EvenBoundedLargest/Count: parts are multiples of step

  static ClassSpec unrestricted() { return {}; }
  static ClassSpec andrews(std::vector<part_t> a, part_t tail = kUnbounded) {
    ClassSpec c;
    c.kind = Kind::AndrewsBound;
    c.bounds = std::move(a);
    c.tail_bound = tail;
    return c;
  }
  static ClassSpec parts_in(PartSizeSet u, part_t a = kUnbounded) {
    ClassSpec c;
    c.kind = Kind::PartsIn;
    c.U = std::move(u);
    c.mult_bound = a;
    return c;
  }
  static ClassSpec distinct() { return of(Kind::Distinct); }
  static ClassSpec odd() { return of(Kind::Odd); }
  static ClassSpec odd_distinct() { return of(Kind::OddDistinct); }
  static ClassSpec glaisher_o(int r) { auto c = of(Kind::GlaisherO); c.r = r; return c; }
  static ClassSpec glaisher_d(int r) { auto c = of(Kind::GlaisherD); c.r = r; return c; }
  static ClassSpec convex(int r = 2) { auto c = of(Kind::Convex); c.r = r; return c; }
  static ClassSpec min_diff(int d, bool forbid_one = false) {
    auto c = of(Kind::MinDiff);
    c.d = d;
    c.forbid_one = forbid_one;
    return c;
  }
  static ClassSpec romik_a() { return of(Kind::RomikA); }
  static ClassSpec romik_b() { return of(Kind::RomikB); }
  static ClassSpec lebesgue(int l, int k) { auto c = of(Kind::LebesgueL); c.l = l; c.k = k; return c; }
  static ClassSpec lebesgue_simple() { return of(Kind::LebesgueSimple); }
  static ClassSpec self_conjugate() { return of(Kind::SelfConjugate); }
  static ClassSpec distinct_mod4() { return of(Kind::DistinctMod4); }
  static ClassSpec even_bounded_largest(part_t k, part_t step = 2) {
    auto c = of(Kind::EvenBoundedLargest);
    c.bound_k = k;
    c.step = step;
    return c;
  }
  static ClassSpec even_bounded_count(part_t k, part_t step = 2) {
    auto c = of(Kind::EvenBoundedCount);
    c.bound_k = k;
    c.step = step;
    return c;
  }
  static ClassSpec stanton_a(int r, int m) { auto c = of(Kind::StantonA); c.r = r; c.m = m; return c; }
  static ClassSpec stanton_b(int r, int m) { auto c = of(Kind::StantonB); c.r = r; c.m = m; return c; }

  std::string name() const;

 private:
  static ClassSpec of(Kind k) {
    ClassSpec c;
    c.kind = k;
    return c;
  }
};

namespace detail {

inline part_t ipow(part_t b, int e) {
  part_t x = 1;
  while (e-- > 0) x *= b;
  return x;
}

// exact integer r-th root or -1
inline part_t exact_root(part_t x, int r) {
  if (x < 1) return -1;
  if (r == 1) return x;
  auto k = static_cast<part_t>(std::llround(std::pow(static_cast<double>(x), 1.0 / r)));
  for (part_t c = std::max<part_t>(1, k - 1); c <= k + 1; ++c)
    if (ipow(c, r) == x) return c;
  return -1;
}

}  // namespace detail

// Classes whose generating function is a product over part sizes.  For size u, returns the
// strict multiplicity bound (kUnbounded, or a >= 1 meaning m < a; a = 1 forbids u).  RomikB
// additionally excludes multiplicity exactly one.
struct ProductForm {
  const ClassSpec* spec;

  part_t bound(part_t u) const {
    using K = ClassSpec::Kind;
    const ClassSpec& c = *spec;
    switch (c.kind) {
      case K::Unrestricted: return kUnbounded;
      case K::AndrewsBound:
        return static_cast<std::size_t>(u) <= c.bounds.size() ? c.bounds[static_cast<std::size_t>(u - 1)]
                                                             : c.tail_bound;
      case K::PartsIn: return c.U->contains(u) ? c.mult_bound : 1;
      case K::Distinct: return 2;
      case K::Odd: return u % 2 ? kUnbounded : 1;
      case K::OddDistinct: return u % 2 ? 2 : 1;
      case K::GlaisherO: return u % 2 ? detail::ipow(2, c.r) : 1;
      case K::GlaisherD: return u % detail::ipow(2, c.r) ? 2 : 1;
      case K::RomikB: return kUnbounded;
      case K::DistinctMod4: return (u % 4 == 3) ? 1 : 2;
      case K::EvenBoundedLargest: return (u % c.step == 0 && u <= c.step * c.bound_k) ? kUnbounded : 1;
      case K::StantonA: return detail::exact_root(u, c.r) > 0 ? detail::ipow(c.m, c.r) : 1;
      case K::StantonB: {
        part_t root = detail::exact_root(u, c.r);
        return (root > 0 && root % c.m != 0) ? kUnbounded : 1;
      }
      default: throw std::logic_error("ProductForm: class is not multiplicative");
    }
  }

  bool forbid_multiplicity_one() const { return spec->kind == ClassSpec::Kind::RomikB; }
};

inline bool is_product_class(const ClassSpec& c) {
  using K = ClassSpec::Kind;
  switch (c.kind) {
    case K::Convex:
    case K::MinDiff:
    case K::RomikA:
    case K::LebesgueL:
    case K::LebesgueSimple:
    case K::SelfConjugate:
    case K::EvenBoundedCount:
      return false;
    default:
      return true;
  }
}

// Ascending-chain classes: allowed(prev, next) on consecutive parts listed increasingly;
// prev = 0 marks the first part.
inline bool chain_step_allowed(const ClassSpec& c, part_t prev, part_t next) {
  using K = ClassSpec::Kind;
  switch (c.kind) {
    case K::MinDiff:
      if (prev == 0) return !(c.forbid_one && next == 1);
      return next - prev >= c.d;
    case K::RomikA:
      if (prev == 0) return next != 1;
      return next >= prev && next - prev != 1;
    case K::LebesgueSimple:
      if (prev == 0) return true;
      if (prev % 2 && next % 2) return next - prev >= 4;
      return next - prev >= 2;
    case K::LebesgueL: {
      auto ok = [&](part_t x) { return x % c.k == 0 || x % c.k == c.l; };
      if (!ok(next)) return false;
      if (prev == 0) return true;
      if (prev % c.k == c.l && next % c.k == c.l) return next - prev >= 2 * c.k;
      return next - prev >= c.k;
    }
    default: throw std::logic_error("chain_step_allowed: not a chain class");
  }
}

inline bool is_chain_class(const ClassSpec& c) {
  using K = ClassSpec::Kind;
  return c.kind == K::MinDiff || c.kind == K::RomikA || c.kind == K::LebesgueSimple || c.kind == K::LebesgueL;
}

// r-th differences with the convention that the last part is its own difference
inline std::vector<part_t> rth_differences(const Partition& p, int r) {
  std::vector<part_t> d = p.parts;
  for (int k = 0; k < r; ++k)
    for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] -= d[i + 1];
  return d;
}

inline bool member(const ClassSpec& c, const Partition& p) {
  using K = ClassSpec::Kind;
  if (is_product_class(c)) {
    ProductForm f{&c};
    for (auto [u, mult] : to_multiplicities(p)) {
      part_t a = f.bound(u);
      if (a != kUnbounded && mult >= a) return false;
      if (f.forbid_multiplicity_one() && mult == 1) return false;
    }
    return true;
  }
  if (is_chain_class(c)) {
    part_t prev = 0;
    for (auto it = p.parts.rbegin(); it != p.parts.rend(); ++it) {
      if (!chain_step_allowed(c, prev, *it)) return false;
      prev = *it;
    }
    return true;
  }
  switch (c.kind) {
    case K::Convex: {
      auto d = rth_differences(p, c.r);
      return std::all_of(d.begin(), d.end(), [](part_t x) { return x >= 0; });
    }
    case K::SelfConjugate: return conjugate(p) == p;
    case K::EvenBoundedCount:
      return static_cast<part_t>(p.length()) <= c.bound_k &&
             std::all_of(p.parts.begin(), p.parts.end(), [&](part_t x) { return x % c.step == 0; });
    default: throw std::logic_error("member: unhandled class");
  }
}

inline std::string ClassSpec::name() const {
  using K = Kind;
  auto s = [](auto x) { return std::to_string(x); };
  switch (kind) {
    case K::Unrestricted: return "unrestricted";
    case K::AndrewsBound: return "andrews";
    case K::PartsIn:
      return "parts-in(" + (U->name().empty() ? std::string("U") : U->name()) +
             (mult_bound == kUnbounded ? "" : ";a=" + s(mult_bound)) + ")";
    case K::Distinct: return "distinct";
    case K::Odd: return "odd";
    case K::OddDistinct: return "odd-distinct";
    case K::GlaisherO: return "glaisher-o(" + s(r) + ")";
    case K::GlaisherD: return "glaisher-d(" + s(r) + ")";
    case K::Convex: return "convex(" + s(r) + ")";
    case K::MinDiff: return "mindiff(" + s(d) + (forbid_one ? ";no1" : "") + ")";
    case K::RomikA: return "romik-a";
    case K::RomikB: return "romik-b";
    case K::LebesgueL: return "lebesgue(" + s(l) + "," + s(k) + ")";
    case K::LebesgueSimple: return "lebesgue";
    case K::SelfConjugate: return "self-conjugate";
    case K::DistinctMod4: return "distinct-mod4";
    case K::EvenBoundedLargest: return "even-largest(" + s(bound_k) + ";" + s(step) + ")";
    case K::EvenBoundedCount: return "even-count(" + s(bound_k) + ";" + s(step) + ")";
    case K::StantonA: return "stanton-a(" + s(r) + "," + s(m) + ")";
    case K::StantonB: return "stanton-b(" + s(r) + "," + s(m) + ")";
  }
  return "?";
}

// Parse a class descriptor such as "distinct", "convex:2", "mindiff:2", "mindiff:2:no1",
// "lebesgue:1:2", "glaisher-d:3", "stanton-a:1:3", "even-largest:4", "parts-in:triangular",
// "parts-in:poly:0,1,1/2", "parts-in:list:1,5,7:a=3".
inline ClassSpec parse_class(const std::string& text) {
  std::vector<std::string> f;
  {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) f.push_back(item);
  }
  if (f.empty()) throw std::invalid_argument("empty class descriptor");
  auto arg = [&](std::size_t i, long long dflt) -> long long {
    return i < f.size() ? std::stoll(f[i]) : dflt;
  };
  const std::string& h = f[0];
  if (h == "unrestricted") return ClassSpec::unrestricted();
  if (h == "distinct") return ClassSpec::distinct();
  if (h == "odd") return ClassSpec::odd();
  if (h == "odd-distinct") return ClassSpec::odd_distinct();
  if (h == "glaisher-o") return ClassSpec::glaisher_o(static_cast<int>(arg(1, 1)));
  if (h == "glaisher-d") return ClassSpec::glaisher_d(static_cast<int>(arg(1, 1)));
  if (h == "convex") return ClassSpec::convex(static_cast<int>(arg(1, 2)));
  if (h == "mindiff")
    return ClassSpec::min_diff(static_cast<int>(arg(1, 1)), f.size() > 2 && f[2] == "no1");
  if (h == "romik-a") return ClassSpec::romik_a();
  if (h == "romik-b") return ClassSpec::romik_b();
  if (h == "lebesgue")
    return f.size() > 1 ? ClassSpec::lebesgue(static_cast<int>(arg(1, 1)), static_cast<int>(arg(2, 2)))
                        : ClassSpec::lebesgue_simple();
  if (h == "self-conjugate") return ClassSpec::self_conjugate();
  if (h == "distinct-mod4") return ClassSpec::distinct_mod4();
  if (h == "even-largest") return ClassSpec::even_bounded_largest(arg(1, 1), arg(2, 2));
  if (h == "even-count") return ClassSpec::even_bounded_count(arg(1, 1), arg(2, 2));
  if (h == "stanton-a") return ClassSpec::stanton_a(static_cast<int>(arg(1, 1)), static_cast<int>(arg(2, 2)));
  if (h == "stanton-b") return ClassSpec::stanton_b(static_cast<int>(arg(1, 1)), static_cast<int>(arg(2, 2)));
  if (h == "andrews") {
    // andrews:2,2,inf:tail
    std::vector<part_t> a;
    if (f.size() > 1) {
      std::stringstream ss(f[1]);
      std::string x;
      while (std::getline(ss, x, ',')) a.push_back(x == "inf" ? kUnbounded : std::stoll(x));
    }
    part_t tail = f.size() > 2 ? (f[2] == "inf" ? kUnbounded : std::stoll(f[2])) : kUnbounded;
    return ClassSpec::andrews(std::move(a), tail);
  }
  if (h == "parts-in") {
    if (f.size() < 2) throw std::invalid_argument("parts-in needs a set");
    std::size_t next = 2;
    std::optional<PartSizeSet> U;
    const std::string& kind = f[1];
    if (kind == "integers") U = PartSizeSet::integers();
    else if (kind == "odd") U = PartSizeSet::odd();
    else if (kind == "triangular") U = PartSizeSet::triangular();
    else if (kind == "squares") U = PartSizeSet::powers(2);
    else if (kind == "powers") U = PartSizeSet::powers(static_cast<int>(arg(next++, 2)));
    else if (kind == "binom") U = PartSizeSet::binomial(static_cast<int>(arg(next++, 2)));
    else if (kind == "poly" || kind == "list") {
      if (f.size() < 3) throw std::invalid_argument("parts-in: missing coefficients");
      std::string body = f[next++];
      std::int64_t den = 1;
      if (auto slash = body.find('/'); slash != std::string::npos) {
        den = std::stoll(body.substr(slash + 1));
        body = body.substr(0, slash);
      }
      std::vector<std::int64_t> v;
      std::stringstream ss(body);
      std::string x;
      while (std::getline(ss, x, ',')) v.push_back(std::stoll(x));
      U = kind == "poly" ? PartSizeSet::polynomial(v, den) : PartSizeSet::list(v);
    } else {
      throw std::invalid_argument("unknown part set: " + kind);
    }
    part_t a = kUnbounded;
    if (next < f.size() && f[next].rfind("a=", 0) == 0) a = std::stoll(f[next].substr(2));
    return ClassSpec::parts_in(*U, a);
  }
  throw std::invalid_argument("unknown class: " + h);
}

}  // namespace plimit
