#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <set>
#include <vector>

#include "subrank/rng.hpp"

using namespace subrank;

TEST_CASE("derived streams are reproducible and distinct") {
  RngStream a = RngStream::derive(17, 4);
  RngStream b = RngStream::derive(17, 4);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c = RngStream::derive(17, 5);
  RngStream d = RngStream::derive(18, 4);
  int equal_c = 0, equal_d = 0;
  RngStream a2 = RngStream::derive(17, 4);
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t base = a2.next_u64();
    if (base == c.next_u64()) ++equal_c;
    if (base == d.next_u64()) ++equal_d;
  }
  CHECK(equal_c == 0);
  CHECK(equal_d == 0);

  CHECK(derive_seed(9, 1, 2) == derive_seed(9, 1, 2));
  CHECK(derive_seed(9, 1, 2) != derive_seed(9, 2, 1));
}

TEST_CASE("uniform01 stays in range") {
  RngStream s(99);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_below covers its range without bias artifacts") {
  RngStream s(3);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const std::uint64_t v = s.uniform_below(5);
    REQUIRE(v < 5);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (const int c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
  CHECK(s.uniform_below(1) == 0);
  CHECK(s.uniform_below(0) == 0);
}

TEST_CASE("distribution moments land near theory") {
  RngStream s(2024);
  const int n = 200000;
  double sum_n = 0.0, sum_n2 = 0.0;
  double sum_e = 0.0;
  double sum_g = 0.0;
  double sum_b = 0.0;
  double sum_p = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    sum_n += z;
    sum_n2 += z * z;
    sum_e += s.exponential();
    sum_g += s.gamma(2.0, 1.0);
    sum_b += s.beta(2.0, 3.0);
    sum_p += static_cast<double>(s.poisson(5.0));
  }
  // 5 sigma Monte Carlo margins
  CHECK(std::abs(sum_n / n) < 5.0 / std::sqrt(double(n)));
  CHECK(std::abs(sum_n2 / n - 1.0) < 5.0 * std::sqrt(2.0 / double(n)));
  CHECK(std::abs(sum_e / n - 1.0) < 5.0 / std::sqrt(double(n)));
  CHECK(std::abs(sum_g / n - 2.0) < 5.0 * std::sqrt(2.0 / double(n)));
  CHECK(std::abs(sum_b / n - 0.4) < 5.0 * 0.2 / std::sqrt(double(n)));
  CHECK(std::abs(sum_p / n - 5.0) < 5.0 * std::sqrt(5.0 / double(n)));
}

TEST_CASE("sample_distinct yields distinct in-range values") {
  RngStream s(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> got;
    s.sample_distinct(10, 4, std::back_inserter(got));
    REQUIRE(got.size() == 4);
    const std::set<std::uint64_t> uniq(got.begin(), got.end());
    CHECK(uniq.size() == 4);
    for (const std::uint64_t v : got) CHECK(v < 10);
  }
  // full draws are permutations
  std::vector<std::uint64_t> all;
  s.sample_distinct(6, 6, std::back_inserter(all));
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
}
