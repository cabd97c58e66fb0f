#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "numeric.hpp"
#include "shape.hpp"

namespace plimit {

enum class SampleMode { Plain, Pdc };

struct SamplerConfig {
  ClassSpec cls = ClassSpec::unrestricted();
  part_t n = 1;
  double x = 0;                    // 0 selects the default tilt
  SampleMode mode = SampleMode::Plain;
  std::uint64_t seed = 20240601;   // fixed default so bare runs are reproducible
  std::uint64_t max_attempts = 0;  // 0 selects the mode's default
};

struct SamplingFailure : std::runtime_error {
  std::uint64_t attempts;
  SamplingFailure(std::uint64_t a, const std::string& what) : std::runtime_error(what), attempts(a) {}
};

struct Draw {
  Partition partition;
  std::uint64_t attempts = 0;
};

// ---------------------------------------------------------------------------------------------
// Random streams

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : gen_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  // uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // uniform on (0, 1]
  double uniform_pos() { return 1.0 - uniform(); }

 private:
  std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------------------------
// Tilt

inline double tilt(double r, double B, double a, part_t n) {
  if (r < 1 || !(B > 0) || a < 2 || n < 1) throw std::domain_error("tilt: parameter out of range");
  return std::exp(-const_d(r, B, a) / std::pow(static_cast<double>(n), r / (1 + r)));
}

struct ShapeParams {
  double r, B, a;
};

// (r, B, a) of classes covered by the smooth-class theory; empty otherwise
inline std::optional<ShapeParams> shape_params(const ClassSpec& c) {
  using K = ClassSpec::Kind;
  switch (c.kind) {
    case K::Unrestricted: return ShapeParams{1, 1, kInf};
    case K::Distinct: return ShapeParams{1, 1, 2};
    case K::Odd: return ShapeParams{1, 2, kInf};
    case K::OddDistinct: return ShapeParams{1, 2, 2};
    case K::GlaisherO: return ShapeParams{1, 2, std::pow(2.0, c.r)};
    case K::PartsIn:
      if (!c.U->is_polynomial()) return std::nullopt;
      return ShapeParams{static_cast<double>(c.U->degree()), c.U->B(),
                         c.mult_bound == kUnbounded ? kInf : static_cast<double>(c.mult_bound)};
    default: return std::nullopt;
  }
}

namespace detail {

struct Slot {
  part_t u;
  part_t bound;  // strict bound, kUnbounded for none
};

inline std::vector<Slot> allowed_sizes(const ClassSpec& c, part_t n) {
  if (!is_product_class(c)) throw std::domain_error("sampler: class " + c.name() + " has no product form");
  ProductForm pf{&c};
  std::vector<Slot> out;
  for (part_t u = 1; u <= n; ++u) {
    const part_t b = pf.bound(u);
    if (b != 1 && b != 0) out.push_back({u, b});
  }
  return out;
}

inline double expected_size(const std::vector<Slot>& slots, const ClassSpec& c, double x) {
  double s = 0;
  const bool no_one = ProductForm{&c}.forbid_multiplicity_one();
  for (const auto& sl : slots) {
    const double rate = -std::log(x) * static_cast<double>(sl.u);
    double m = mean_rate(rate, sl.bound == kUnbounded ? kInf : static_cast<double>(sl.bound));
    if (no_one) {
      // E[X | X != 1] for geometric X with ratio q
      const double q = std::exp(-rate);
      const double p1 = (1 - q) * q;
      m = (m - p1) / (1 - p1);
    }
    s += static_cast<double>(sl.u) * m;
  }
  return s;
}

// geometric on {0, 1, ...} with P(X >= k) = q^k, truncated to X < bound; q = exp(-rate)
inline part_t draw_geometric(Rng& rng, double rate, part_t bound) {
  if (bound == kUnbounded) {
    const double v = std::floor(-std::log(rng.uniform_pos()) / rate);
    return v > 4e18 ? static_cast<part_t>(4e18) : static_cast<part_t>(v);
  }
  // W uniform on (q^bound, 1], X = floor(log W / log q)
  const double tail = -std::expm1(-rate * static_cast<double>(bound));  // 1 - q^bound
  const double w = 1.0 - rng.uniform() * tail;
  const auto v = static_cast<part_t>(std::floor(-std::log(w) / rate));
  return std::min(v, bound - 1);
}

inline part_t draw_multiplicity(Rng& rng, double rate, part_t bound, bool no_one) {
  for (;;) {
    const part_t v = draw_geometric(rng, rate, bound);
    if (!(no_one && v == 1)) return v;
  }
}

}  // namespace detail

// Tilt used when cfg.x == 0: the formula when (r, B, a) is known, otherwise the x with E[size] = n.
inline double default_tilt(const ClassSpec& c, part_t n) {
  if (auto p = shape_params(c)) return tilt(p->r, p->B, p->a, n);
  const auto slots = detail::allowed_sizes(c, n);
  if (slots.empty()) return 0.5;
  return bisect([&](double x) { return detail::expected_size(slots, c, x) - static_cast<double>(n); }, 1e-12,
                1 - 1e-12);
}

inline double resolved_tilt(const SamplerConfig& cfg) {
  const double x = cfg.x == 0 ? default_tilt(cfg.cls, cfg.n) : cfg.x;
  if (!(x > 0 && x < 1)) throw std::domain_error("sampler: tilt must lie in (0, 1)");
  return x;
}

inline std::uint64_t default_max_attempts(SampleMode mode, part_t n) {
  const double e = mode == SampleMode::Plain ? 0.75 : 0.5;
  return 50 * static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), e)));
}

// Independent multiplicities for every allowed size u <= n.  Sizes above n are left at 0:
// they are forced to 0 by any exact-size conditioning.
inline MultiplicityVector draw_independent(const SamplerConfig& cfg, Rng& rng) {
  if (cfg.n < 1) throw std::domain_error("draw_independent: n must be positive");
  const double x = resolved_tilt(cfg);
  const double lx = -std::log(x);
  const bool no_one = ProductForm{&cfg.cls}.forbid_multiplicity_one();
  MultiplicityVector m;
  for (const auto& sl : detail::allowed_sizes(cfg.cls, cfg.n)) {
    const part_t v = detail::draw_multiplicity(rng, lx * static_cast<double>(sl.u), sl.bound, no_one);
    if (v) m[sl.u] = v;
  }
  return m;
}

// A prepared sampler: slot list and tilt computed once, reused across attempts.
class ExactSampler {
 public:
  explicit ExactSampler(SamplerConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.n < 1) throw std::domain_error("sampler: n must be positive");
    x_ = resolved_tilt(cfg_);
    lx_ = -std::log(x_);
    slots_ = detail::allowed_sizes(cfg_.cls, cfg_.n);
    no_one_ = ProductForm{&cfg_.cls}.forbid_multiplicity_one();
    max_attempts_ = cfg_.max_attempts ? cfg_.max_attempts : default_max_attempts(cfg_.mode, cfg_.n);
  }

  double x() const { return x_; }
  std::uint64_t max_attempts() const { return max_attempts_; }

  Draw operator()(Rng& rng) const {
    MultiplicityVector m;
    for (std::uint64_t a = 1; a <= max_attempts_; ++a)
      if (attempt(rng, m)) return {from_multiplicities(m), a};
    throw SamplingFailure(max_attempts_, "sampler: no sample of size " + std::to_string(cfg_.n) + " for class " +
                                             cfg_.cls.name() + " after " + std::to_string(max_attempts_) + " attempts");
  }

  // one attempt; returns true and fills m on acceptance
  bool attempt(Rng& rng, MultiplicityVector& m) const {
    return cfg_.mode == SampleMode::Plain ? attempt_plain(rng, m) : attempt_pdc(rng, m);
  }

 private:
  bool attempt_plain(Rng& rng, MultiplicityVector& m) const {
    m.clear();
    part_t total = 0;
    for (const auto& sl : slots_) {
      const part_t v = detail::draw_multiplicity(rng, lx_ * static_cast<double>(sl.u), sl.bound, no_one_);
      if (v) {
        m[sl.u] = v;
        total += v * sl.u;
      }
    }
    return total == cfg_.n;
  }

  // The first allowed size is left out and solved for.  Its pmf is proportional to q^k on its
  // support (q = x^{u1}) with maximum at k = 0, so the acceptance ratio is x^R.
  bool attempt_pdc(Rng& rng, MultiplicityVector& m) const {
    m.clear();
    if (slots_.empty()) return false;
    const auto& first = slots_.front();
    part_t total = 0;
    for (std::size_t i = 1; i < slots_.size(); ++i) {
      const auto& sl = slots_[i];
      const part_t v = detail::draw_multiplicity(rng, lx_ * static_cast<double>(sl.u), sl.bound, no_one_);
      if (v) {
        m[sl.u] = v;
        total += v * sl.u;
      }
    }
    const part_t R = cfg_.n - total;
    if (R < 0 || R % first.u != 0) return false;
    const part_t k = R / first.u;
    if (first.bound != kUnbounded && k >= first.bound) return false;
    if (no_one_ && k == 1) return false;
    if (rng.uniform() >= std::exp(-lx_ * static_cast<double>(R))) return false;
    if (k) m[first.u] = k;
    return true;
  }

  SamplerConfig cfg_;
  double x_ = 0, lx_ = 0;
  std::vector<detail::Slot> slots_;
  bool no_one_ = false;
  std::uint64_t max_attempts_ = 0;
};

inline Draw sample_exact(const SamplerConfig& cfg, Rng& rng) {
  SamplerConfig c = cfg;
  c.mode = SampleMode::Plain;
  return ExactSampler(c)(rng);
}

inline Draw sample_pdc(const SamplerConfig& cfg, Rng& rng) {
  SamplerConfig c = cfg;
  c.mode = SampleMode::Pdc;
  return ExactSampler(c)(rng);
}

// ---------------------------------------------------------------------------------------------
// Parallel replicas

inline unsigned thread_count() {
  if (const char* env = std::getenv("PLIMIT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on a pool; the first exception is rethrown after joining.
template <class F>
void parallel_for(std::size_t count, F&& task) {
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!err) err = std::current_exception();
        next = count;
      }
    }
  };
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

// `count` samples, sample i drawn from stream (seed, i)
inline std::vector<Draw> sample_many(const SamplerConfig& cfg, std::size_t count) {
  ExactSampler s(cfg);
  std::vector<Draw> out(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng(cfg.seed, i);
    out[i] = s(rng);
  });
  return out;
}

// ---------------------------------------------------------------------------------------------
// Convergence experiment

struct ExperimentReport {
  std::vector<double> grid;
  std::vector<double> mean, q05, q95, theory;
  std::vector<double> sup_deviation;  // per replica
  double mean_attempts = 0;
  double acceptance_rate = 0;  // accepted samples / attempts
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  part_t n = 0;

  double mean_sup_deviation() const {
    double s = 0;
    for (double v : sup_deviation) s += v;
    return sup_deviation.empty() ? 0 : s / static_cast<double>(sup_deviation.size());
  }
};

// linear-interpolation quantile of sorted data
inline double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) throw std::domain_error("quantile of empty sample");
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline ExperimentReport run_convergence(const SamplerConfig& cfg, const ShapeCurve& reference, std::size_t replicas,
                                        const std::vector<double>& grid) {
  if (replicas == 0) throw std::domain_error("run_convergence: replicas must be positive");
  if (grid.empty()) throw std::domain_error("run_convergence: empty grid");
  const double n = static_cast<double>(cfg.n);
  const double alpha = std::pow(n, reference.x_exponent);
  const auto draws = sample_many(cfg, replicas);

  ExperimentReport rep;
  rep.grid = grid;
  rep.replicas = replicas;
  rep.seed = cfg.seed;
  rep.n = cfg.n;
  for (double t : grid) rep.theory.push_back(reference(t));

  std::vector<std::vector<double>> cols(grid.size());
  std::uint64_t attempts = 0;
  for (const auto& d : draws) {
    attempts += d.attempts;
    const auto vals = scaled_diagram(d.partition, n, alpha, grid);
    double sup = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      cols[i].push_back(vals[i]);
      sup = std::max(sup, std::abs(vals[i] - rep.theory[i]));
    }
    rep.sup_deviation.push_back(sup);
  }
  for (auto& col : cols) {
    double s = 0;
    for (double v : col) s += v;
    rep.mean.push_back(s / static_cast<double>(col.size()));
    std::sort(col.begin(), col.end());
    rep.q05.push_back(quantile_sorted(col, 0.05));
    rep.q95.push_back(quantile_sorted(col, 0.95));
  }
  rep.mean_attempts = static_cast<double>(attempts) / static_cast<double>(replicas);
  rep.acceptance_rate = static_cast<double>(replicas) / static_cast<double>(attempts);
  return rep;
}

// Fraction of accepted attempts out of `trials`, without the max-attempts cap.
inline double acceptance_rate(const SamplerConfig& cfg, std::uint64_t trials) {
  ExactSampler s(cfg);
  std::atomic<std::uint64_t> accepted{0};
  const std::size_t chunks = 64;
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(cfg.seed, 0x9e37ULL + c);
    MultiplicityVector m;
    std::uint64_t local = 0;
    for (std::uint64_t i = c; i < trials; i += chunks) local += s.attempt(rng, m);
    accepted += local;
  });
  return static_cast<double>(accepted.load()) / static_cast<double>(trials);
}

}  // namespace plimit
