#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace subrank {

// Deterministic random stream.  The engine (std::mt19937_64) has a fully
// specified output sequence, and every distribution transform below is written
// out explicitly, so a stream derived from (master_seed, index) produces the
// same draws on every platform, thread count, and run.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Pure function of (master_seed, index): stream i of a run never overlaps
  // stream j, and re-deriving gives bitwise identical draws.
  static RngStream derive(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = mix(master_seed);
    s = mix(s ^ mix(index + 0x9E3779B97F4A7C15ull));
    return RngStream(s);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer on [0, n) via rejection against a power-of-two mask.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~0ull >> std::countl_zero(n - 1);
    std::uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= n);
    return v;
  }

  // Box-Muller; consumes exactly two uniforms per draw.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential(double rate = 1.0) {
    return -std::log1p(-uniform01()) / rate;
  }

  // Marsaglia-Tsang squeeze; valid for shape >= 1.
  double gamma(double shape, double scale = 1.0) {
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v * scale;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

  // Knuth product-of-uniforms; fine for the small rates used here.
  std::uint64_t poisson(double lambda) {
    double limit = std::exp(-lambda);
    double prod = 1.0;
    std::uint64_t count = 0;
    for (;;) {
      prod *= uniform01();
      if (prod <= limit) return count;
      ++count;
    }
  }

  // Partial Fisher-Yates: k distinct values from [0, n), order discarded.
  template <typename OutIt>
  void sample_distinct(std::uint64_t n, std::uint64_t k, OutIt out) {
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < k; ++i) {
      std::uint64_t j = i + uniform_below(n - i);
      std::swap(pool[i], pool[j]);
      *out++ = pool[i];
    }
  }

 private:
  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

// Mixes two extra indices into a master seed; used to give nested loops
// (pattern h, rank r) independent deterministic sub-seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  RngStream s = RngStream::derive(master, a * 0x100000001B3ull + b + 1);
  return s.next_u64();
}

}  // namespace subrank
