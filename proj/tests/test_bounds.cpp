#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "subrank/bounds.hpp"
#include "subrank/errors.hpp"
#include "subrank/matrix.hpp"
#include "subrank/rng.hpp"

using namespace subrank;

namespace {

// Closed-form singular values of a 2x2 matrix.
std::pair<double, double> sv_2x2(const DenseMatrix& p) {
  const double t = p(0, 0) * p(0, 0) + p(0, 1) * p(0, 1) + p(1, 0) * p(1, 0) +
                   p(1, 1) * p(1, 1);
  const double det = p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
  const double s1 = std::sqrt((t + disc) / 2.0);
  const double s2 = std::sqrt(std::max(0.0, (t - disc) / 2.0));
  return {s1, s2};
}

}  // namespace

TEST_CASE("gmax formula") {
  const std::vector<double> a = {1.0, 2.0};
  CHECK(gmax(a) == doctest::Approx(4.0).epsilon(1e-15));
  const std::vector<double> b = {1.0, 1.0, 1.0};
  CHECK(gmax(b) == doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> c = {-3.0, 1.0};
  CHECK(gmax(c) == doctest::Approx(13.5).epsilon(1e-15));
  const std::vector<double> z = {1.0, 0.0};
  CHECK_THROWS_AS(gmax(z), ZeroEntryError);
  CHECK_THROWS_AS(gmax(std::vector<double>{}), ZeroVectorError);
}

TEST_CASE("gf formula") {
  const std::vector<double> a = {1.0, 2.0};
  CHECK(gf(a) == doctest::Approx(0.8).epsilon(1e-15));
  const std::vector<double> b = {1.0, 0.0};
  CHECK(gf(b) == 0.0);
  const std::vector<double> c = {1.0, 1.0, 1.0};
  CHECK(gf(c) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> z = {0.0, 0.0};
  CHECK_THROWS_AS(gf(z), ZeroVectorError);
}

TEST_CASE("rank1 bounds on the worked example") {
  const std::vector<double> x_row = {1.0, 2.0};
  const std::vector<double> x_col = {1.0, 1.0};
  const Rank1Bounds b = rank1_bounds(0.1, x_row, x_col, 3, 3);
  CHECK(b.delta == 0.1);
  CHECK(b.gmax_row == doctest::Approx(4.0));
  CHECK(b.gmax_col == doctest::Approx(0.5));
  CHECK(b.max_norm_bound == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(b.gf_row == doctest::Approx(0.8));
  CHECK(b.gf_col == doctest::Approx(0.5));
  CHECK(b.fro_bound == doctest::Approx(0.1).epsilon(1e-14));

  const Rank1Bounds zero = rank1_bounds(0.0, x_row, x_col, 3, 3);
  CHECK(zero.max_norm_bound == 0.0);
  CHECK(zero.fro_bound == 0.0);
}

TEST_CASE("2x2 bounds on the worked example") {
  const DenseMatrix ones = DenseMatrix::from_rows({{1, 1}, {1, 1}});
  const auto [max_b, fro_b] = rank1_bounds_2x2(ones, 0.1);
  CHECK(max_b == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(fro_b == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-14));

  const DenseMatrix r1 = DenseMatrix::from_rows({{1, 2}, {2, 4}});
  const auto [mb0, fb0] = rank1_bounds_2x2(r1, 0.0);
  CHECK(mb0 == 0.0);
  CHECK(fb0 == 0.0);
  CHECK(sv_2x2(r1).second == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(rank1_bounds_2x2(DenseMatrix::from_rows({{1, 0}, {1, 1}}), 0.1),
                  ZeroEntryError);
  CHECK_THROWS_AS(rank1_bounds_2x2(DenseMatrix(2, 3), 0.1),
                  DimensionMismatchError);
}

TEST_CASE("2x2 frobenius bound dominates sigma2 on near-singular draws") {
  RngStream rng(4242);
  const double delta_init = 0.01;
  for (int trial = 0; trial < 1000; ++trial) {
    // build a block whose determinant is within delta_init by construction
    double a, b, c;
    do {
      a = rng.normal();
      b = rng.normal();
      c = rng.normal();
    } while (std::abs(a) < 0.05);
    const double s = (2.0 * rng.uniform01() - 1.0) * delta_init;
    const double d = (b * c + s) / a;
    if (d == 0.0) continue;
    const DenseMatrix p = DenseMatrix::from_rows({{a, b}, {c, d}});
    const double det = a * d - b * c;
    REQUIRE(std::abs(det) <= delta_init + 1e-12);

    const auto [max_b, fro_b] = rank1_bounds_2x2(p, delta_init);
    const double s2 = sv_2x2(p).second;
    CHECK(s2 <= fro_b + 1e-9);
    CHECK(max_b >= 0.0);
  }
}

TEST_CASE("rank-k bounds") {
  const auto [mx, fr] = rankk_bounds(0.1, 10, 8, 2);
  CHECK(mx == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(fr == doctest::Approx(0.1 * std::sqrt(48.0)).epsilon(1e-14));

  const auto [m1, f1] = rankk_bounds(0.2, 4, 4, 3);
  CHECK(m1 == doctest::Approx(0.2));
  CHECK(f1 == doctest::Approx(0.2));

  const auto [m0, f0] = rankk_bounds(0.0, 10, 8, 2);
  CHECK(m0 == 0.0);
  CHECK(f0 == 0.0);

  CHECK_THROWS_AS(rankk_bounds(0.1, 2, 8, 2), DegenerateDimsError);
  CHECK_THROWS_AS(rankk_bounds(0.1, 8, 1, 2), DegenerateDimsError);
}

TEST_CASE("spectral bound reduces symbolically at delta zero") {
  // all-ones 3x3: uniform row norms, gamma = 9, both sides give
  // sqrt(9 * 2/3 - 2) = 2 exactly when delta = 0
  const DenseMatrix x(3, 3, 1.0);
  const std::vector<double> anchor = {1.0, 1.0, 1.0};
  const std::optional<double> bound = svd_spectral_bound(x, 0.0, anchor, anchor);
  REQUIRE(bound.has_value());
  CHECK(*bound == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(singular_values(x).values[1] <= *bound + 1e-12);
}

TEST_CASE("spectral bound covers sigma2 of a rank-1 block") {
  const std::vector<double> xs = {1.0, 2.0, 3.0};
  const std::vector<double> ys = {1.0, 1.0, 2.0};
  DenseMatrix x(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) x(i, j) = xs[i] * ys[j];
  const std::optional<double> bound = svd_spectral_bound(x, 0.01, ys, xs);
  REQUIRE(bound.has_value());
  CHECK(*bound >= 0.0);
  CHECK(singular_values(x).values[1] <= *bound + 1e-12);
}

TEST_CASE("spectral bound reports non-applicability") {
  // all-ones 3x3 with delta^2 * omega = 1/2: inner radicand 1 - 8*3/4 < 0
  const DenseMatrix x(3, 3, 1.0);
  const std::vector<double> anchor = {1.0, 1.0, 1.0};
  const double delta = std::sqrt(1.5);
  CHECK_FALSE(svd_spectral_bound(x, delta, anchor, anchor).has_value());

  // a single row has no second singular direction; the formula degenerates
  // to 0, which still covers sigma2 = 0
  const DenseMatrix row(1, 3, 1.0);
  const std::vector<double> one = {1.0};
  const std::optional<double> degenerate =
      svd_spectral_bound(row, 0.0, anchor, one);
  REQUIRE(degenerate.has_value());
  CHECK(*degenerate == 0.0);
}

TEST_CASE("delta_for_epsilon inverts the bounds") {
  const std::vector<double> x_row = {1.0, 2.0};
  const std::vector<double> empty;
  CHECK(delta_for_epsilon(0.4, x_row, empty, 3, 3, BoundNorm::kMax) ==
        doctest::Approx(0.1).epsilon(1e-14));
  CHECK(delta_for_epsilon(0.0, x_row, empty, 3, 3, BoundNorm::kMax) == 0.0);

  // round trip against the forward bound
  const std::vector<double> x_col = {0.5, -1.5, 2.0};
  for (const double eps : {0.25, 1.0, 3.5}) {
    const double dm =
        delta_for_epsilon(eps, x_row, x_col, 3, 2, BoundNorm::kMax);
    CHECK(rank1_bounds(dm, x_row, x_col, 3, 2).max_norm_bound ==
          doctest::Approx(eps).epsilon(1e-12));
    const double df =
        delta_for_epsilon(eps, x_row, x_col, 3, 2, BoundNorm::kFrobenius);
    CHECK(rank1_bounds(df, x_row, x_col, 3, 2).fro_bound ==
          doctest::Approx(eps).epsilon(1e-12));
  }

  // a zero factor means every delta satisfies the bound
  const std::vector<double> lone = {1.0, 0.0};
  CHECK(delta_for_epsilon(0.3, lone, empty, 5, 5, BoundNorm::kFrobenius) ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(delta_for_epsilon(0.3, empty, empty, 3, 3, BoundNorm::kMax),
                  ZeroVectorError);
}

TEST_CASE("hit probability") {
  CHECK(hit_probability(9, 10, 10, 1) ==
        doctest::Approx((9.0 / 100.0) * (8.0 / 99.0)).epsilon(1e-15));
  CHECK(hit_probability(100, 10, 10, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hit_probability(1, 10, 10, 1) == 0.0);  // needs k+1 = 2 cells
  CHECK(hit_probability(0, 10, 10, 1) == 0.0);
  CHECK(hit_probability(6, 4, 5, 2) ==
        doctest::Approx((6.0 / 20.0) * (5.0 / 19.0) * (4.0 / 18.0)).epsilon(1e-15));
  CHECK_THROWS_AS(hit_probability(101, 10, 10, 1), DimensionMismatchError);
  CHECK_THROWS_AS(hit_probability(1, 1, 1, 1), RankTooLargeError);
}

TEST_CASE("iteration planning") {
  CHECK(required_iterations(0.1, 0.9) == 22);
  CHECK(required_iterations(0.5, 0.75) == 2);
  CHECK_THROWS_AS(required_iterations(0.0, 0.9), InvalidProbabilityError);
  CHECK_THROWS_AS(required_iterations(1.0, 0.9), InvalidProbabilityError);
  CHECK_THROWS_AS(required_iterations(0.1, 1.0), InvalidProbabilityError);

  CHECK(expected_iterations(0.1) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(expected_iterations(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(expected_iterations(0.0), InvalidProbabilityError);

  // success probability after the reported count reaches alpha
  for (const double p : {0.01, 0.1, 0.37}) {
    for (const double alpha : {0.5, 0.9, 0.99}) {
      const std::size_t n = required_iterations(p, alpha);
      CHECK(1.0 - std::pow(1.0 - p, static_cast<double>(n)) >= alpha - 1e-12);
      if (n > 1)
        CHECK(1.0 - std::pow(1.0 - p, static_cast<double>(n - 1)) < alpha);
    }
  }
}

TEST_CASE("chebyshev determinant tail bound") {
  CHECK(chebyshev_det_bound(0.0, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(chebyshev_det_bound(3.0, 0.0, 1.0) == 0.0);
  // uniform(0,1) entries: mu 1/2, sigma^2 1/12
  CHECK(chebyshev_det_bound(0.5, 1.0 / 12.0, 0.5) ==
        doctest::Approx(0.3888888888888889).epsilon(1e-14));
  CHECK_THROWS_AS(chebyshev_det_bound(0.0, 1.0, 0.0), InvalidProbabilityError);
}

TEST_CASE("probability plan composes its parts") {
  const ProbabilityPlan plan = probability_plan(9, 10, 10, 1, 0.9);
  const double p = (9.0 / 100.0) * (8.0 / 99.0);
  CHECK(plan.hit_probability == doctest::Approx(p).epsilon(1e-15));
  CHECK(plan.alpha == 0.9);
  CHECK(plan.required_iterations == required_iterations(p, 0.9));
  CHECK(plan.expected_iterations == doctest::Approx(1.0 / p).epsilon(1e-12));
}
