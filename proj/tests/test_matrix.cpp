#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "subrank/errors.hpp"
#include "subrank/matrix.hpp"

using namespace subrank;

namespace {

// Tiny LCG used to freeze fixtures; the reference values below were computed
// once with an independent linear-algebra implementation on the same stream.
struct Lcg {
  std::uint64_t state;
  double next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1p-53;
  }
  double sym() { return 2.0 * next() - 1.0; }
};

DenseMatrix lcg_matrix(Lcg& g, std::size_t n, std::size_t m) {
  DenseMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = g.sym();
  return out;
}

// Independent SVD oracle: cyclic Jacobi eigensolver on the Gram matrix M^T M.
std::vector<double> gram_singular_values(const DenseMatrix& a) {
  const std::size_t m = a.n_cols();
  std::vector<double> g(m * m, 0.0);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.n_rows(); ++i) s += a(i, p) * a(i, q);
      g[p * m + q] = s;
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += g[p * m + q] * g[p * m + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = g[p * m + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, g[q * m + q] - g[p * m + p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t i = 0; i < m; ++i) {
          const double gip = g[i * m + p], giq = g[i * m + q];
          g[i * m + p] = c * gip - s * giq;
          g[i * m + q] = s * gip + c * giq;
        }
        for (std::size_t i = 0; i < m; ++i) {
          const double gpi = g[p * m + i], gqi = g[q * m + i];
          g[p * m + i] = c * gpi - s * gqi;
          g[q * m + i] = s * gpi + c * gqi;
        }
      }
  }
  std::vector<double> sv(m);
  for (std::size_t i = 0; i < m; ++i) sv[i] = std::sqrt(std::max(0.0, g[i * m + i]));
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

}  // namespace

TEST_CASE("index sets validate and normalize") {
  CHECK_THROWS(IndexSet({2, 1}));
  CHECK_THROWS(IndexSet({1, 1}));
  const IndexSet s = IndexSet::of({3, 1, 3, 0});
  CHECK(s.indices == std::vector<std::size_t>{0, 1, 3});
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK(s.valid_for(4));
  CHECK_FALSE(s.valid_for(3));
  CHECK(s[2] == 3);
}

TEST_CASE("dense matrix basics") {
  const DenseMatrix a = DenseMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  CHECK(a(1, 0) == 3.0);
  CHECK(a.col(1) == std::vector<double>{2.0, 4.0});
  CHECK(a.transpose()(0, 1) == 3.0);
  CHECK(a.transpose().transpose() == a);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionMismatchError);
  const double nan = std::nan("");
  CHECK_THROWS(DenseMatrix(1, 1, std::vector<double>{nan}));
  CHECK_THROWS(DenseMatrix(2, 2, nan));  // fill must keep entries finite
}

TEST_CASE("submatrix extraction copies") {
  DenseMatrix a = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const DenseMatrix sub = a.submatrix(IndexSet({0, 2}), IndexSet({1, 2}));
  CHECK(sub == DenseMatrix::from_rows({{2, 3}, {8, 9}}));
  a(0, 1) = 99.0;
  CHECK(sub(0, 0) == 2.0);
}

TEST_CASE("norms on hand checks") {
  const DenseMatrix a = DenseMatrix::from_rows({{3.0, 4.0}});
  CHECK(frobenius_norm(a) == doctest::Approx(5.0).epsilon(1e-15));
  const DenseMatrix b = DenseMatrix::from_rows({{1.0, -7.0}, {3.0, 2.0}});
  CHECK(max_norm(b) == 7.0);
  // rows proportional, so the spectral norm carries the full Frobenius mass
  const DenseMatrix c = DenseMatrix::from_rows({{1.0, 1.0}, {2.0, 2.0}});
  const SpectralNormEstimate est = spectral_norm(c);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("frozen 6x4 spectrum") {
  Lcg g{42};
  const DenseMatrix a = lcg_matrix(g, 6, 4);
  CHECK(a(0, 0) == doctest::Approx(0.1364606532878152).epsilon(1e-15));
  CHECK(a(5, 3) == doctest::Approx(-0.31077668822977267).epsilon(1e-15));

  const std::vector<double> expected = {2.0117552043027542, 1.2510293120904004,
                                        0.88909754056463841, 0.42722442446411474};
  const std::vector<double> sv = singular_values(a).values;
  REQUIRE(sv.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(sv[i] == doctest::Approx(expected[i]).epsilon(1e-12));

  CHECK(frobenius_norm(a) == doctest::Approx(2.5661739004294657).epsilon(1e-13));
  CHECK(spectral_norm(a).value == doctest::Approx(expected[0]).epsilon(1e-9));
  CHECK(low_rankness_score(a) == doctest::Approx(0.61457954242394119).epsilon(1e-12));
}

TEST_CASE("svd factorization properties") {
  Lcg g{42};
  const DenseMatrix a = lcg_matrix(g, 6, 4);
  const SvdResult f = svd(a);
  REQUIRE(f.sigma.size() == 4);

  // U diag(sigma) V^T reproduces the input
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < 4; ++r) s += f.u(i, r) * f.sigma[r] * f.v(j, r);
      CHECK(s == doctest::Approx(a(i, j)).epsilon(1e-10));
    }

  // orthonormal columns on both sides
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) {
      double uu = 0.0, vv = 0.0;
      for (std::size_t i = 0; i < 6; ++i) uu += f.u(i, p) * f.u(i, q);
      for (std::size_t i = 0; i < 4; ++i) vv += f.v(i, p) * f.v(i, q);
      const double want = p == q ? 1.0 : 0.0;
      CHECK(uu == doctest::Approx(want).epsilon(1e-10));
      CHECK(vv == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("svd agrees with gram eigensolver oracle") {
  Lcg g{7};
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 5);
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 4);
    const DenseMatrix a = lcg_matrix(g, n, m);
    const std::vector<double> mine = singular_values(a).values;
    const std::vector<double> oracle = gram_singular_values(a);
    REQUIRE(mine.size() == std::min(n, m));
    for (std::size_t i = 0; i < mine.size(); ++i)
      CHECK(mine[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
  }
}

TEST_CASE("wide inputs transpose internally") {
  Lcg g{42};
  const DenseMatrix a = lcg_matrix(g, 6, 4);
  const std::vector<double> tall = singular_values(a).values;
  const std::vector<double> wide = singular_values(a.transpose()).values;
  REQUIRE(tall.size() == wide.size());
  for (std::size_t i = 0; i < tall.size(); ++i)
    CHECK(wide[i] == doctest::Approx(tall[i]).epsilon(1e-12));
}

TEST_CASE("low rankness score") {
  const DenseMatrix d = DenseMatrix::from_rows({{2.0, 0.0}, {0.0, 1.0}});
  CHECK(low_rankness_score(d) == doctest::Approx(0.8).epsilon(1e-14));
  const DenseMatrix r1 = DenseMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  CHECK(low_rankness_score(r1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(low_rankness_score(DenseMatrix(2, 2)), ZeroMatrixError);
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(DenseMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(numerical_rank(DenseMatrix::from_rows({{1, 0}, {0, 1}})) == 2);
  CHECK(numerical_rank(DenseMatrix(3, 3)) == 0);
  Lcg g{11};
  const DenseMatrix a = lcg_matrix(g, 5, 3);
  CHECK(numerical_rank(a) == 3);
}

TEST_CASE("vector projection") {
  const std::vector<double> y = {1.0, 1.0};
  const std::vector<double> x = {1.0, 0.0};
  const VectorProjection p = project_onto_vector(y, x);
  CHECK(p.coefficient == doctest::Approx(1.0));
  CHECK(p.residual[0] == doctest::Approx(0.0));
  CHECK(p.residual[1] == doctest::Approx(1.0));
  CHECK(p.residual_norm == doctest::Approx(1.0));
  const std::vector<double> zero = {0.0, 0.0};
  CHECK_THROWS_AS(project_onto_vector(y, zero), ZeroVectorError);
}

TEST_CASE("frozen rowspace projection") {
  Lcg g{42};
  const DenseMatrix a = lcg_matrix(g, 6, 4);
  const IndexSet all_cols({0, 1, 2, 3});
  const DenseMatrix basis = a.submatrix(IndexSet({0, 1}), all_cols);
  const DenseMatrix targets = a.submatrix(IndexSet({3, 4, 5}), all_cols);
  const RowspaceProjection proj = project_onto_rowspace(targets, basis);
  REQUIRE(proj.kept_rows == std::vector<std::size_t>{0, 1});

  const double coeffs[3][2] = {{0.32734295378382045, 0.01476143473860775},
                               {1.6670536256427488, -0.014753899914416366},
                               {-0.37174330703376224, 0.25167246575673524}};
  const double projected[3][4] = {
      {0.049987913522318801, -0.19372230621133352, -0.0711825177249574,
       0.075109241185299297},
      {0.22217146138532692, -0.90135442982060443, -0.27649460673856119,
       0.44501637056237203},
      {0.039948151165384527, -0.034356010847457062, -0.17591573249455569,
       -0.27188419740827624}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(proj.coeffs(i, j) == doctest::Approx(coeffs[i][j]).epsilon(1e-10));
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(proj.projections(i, j) == doctest::Approx(projected[i][j]).epsilon(1e-10));
  }

  // least squares: residual orthogonal to every basis row
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t b = 0; b < 2; ++b) {
      double d = 0.0;
      for (std::size_t j = 0; j < 4; ++j)
        d += (targets(i, j) - proj.projections(i, j)) * basis(b, j);
      CHECK(d == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("rowspace projection drops dependent basis rows") {
  const DenseMatrix basis = DenseMatrix::from_rows({{1.0, 0.0}, {2.0, 0.0}});
  const DenseMatrix targets = DenseMatrix::from_rows({{3.0, 5.0}});
  const RowspaceProjection proj = project_onto_rowspace(targets, basis);
  CHECK(proj.kept_rows == std::vector<std::size_t>{0});
  CHECK(proj.projections(0, 0) == doctest::Approx(3.0));
  CHECK(proj.projections(0, 1) == doctest::Approx(0.0));

  const DenseMatrix id = DenseMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}});
  const RowspaceProjection full = project_onto_rowspace(targets, id);
  CHECK(full.kept_rows.size() == 2);
  CHECK(full.projections(0, 0) == doctest::Approx(3.0));
  CHECK(full.projections(0, 1) == doctest::Approx(5.0));

  const RowspaceProjection none = project_onto_rowspace(targets, DenseMatrix(0, 2));
  CHECK(none.kept_rows.empty());
  CHECK(none.projections(0, 0) == 0.0);
  CHECK(none.projections(0, 1) == 0.0);
}

TEST_CASE("small determinants") {
  Lcg g{42};
  lcg_matrix(g, 6, 4);  // advance the stream past the 6x4 fixture
  const DenseMatrix m4 = lcg_matrix(g, 4, 4);
  CHECK(det_small(m4) == doctest::Approx(0.090842236190247214).epsilon(1e-12));

  CHECK(det_small(DenseMatrix::from_rows({{1, 0}, {0, 1}})) == doctest::Approx(1.0));
  CHECK(det_small(DenseMatrix::from_rows({{0, 1}, {1, 0}})) == doctest::Approx(-1.0));
  CHECK(det_small(DenseMatrix::from_rows({{1, 2}, {2, 4}})) == doctest::Approx(0.0));
  CHECK(det_small(DenseMatrix::from_rows({{7.0}})) == doctest::Approx(7.0));
  CHECK_THROWS_AS(det_small(DenseMatrix(2, 3)), NotSquareError);
  CHECK_THROWS_AS(det_small(DenseMatrix(17, 17)), TooLargeError);
}

TEST_CASE("multiply") {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
  const DenseMatrix b = DenseMatrix::from_rows({{5, 6}, {7, 8}});
  CHECK(multiply(a, b) == DenseMatrix::from_rows({{19, 22}, {43, 50}}));
  CHECK_THROWS_AS(multiply(a, DenseMatrix(3, 2)), DimensionMismatchError);
}

TEST_CASE("norm ordering holds on random inputs") {
  Lcg g{1234};
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a = lcg_matrix(g, 5, 7);
    const double fro = frobenius_norm(a);
    const double spec = singular_values(a).values[0];
    const double mx = max_norm(a);
    CHECK(mx <= spec + 1e-12);
    CHECK(spec <= fro + 1e-12);
    CHECK(fro <= std::sqrt(35.0) * mx + 1e-12);

    // the spectrum carries the full Frobenius energy
    double energy = 0.0;
    for (const double s : singular_values(a).values) energy += s * s;
    CHECK(energy == doctest::Approx(fro * fro).epsilon(1e-12));
  }
}
