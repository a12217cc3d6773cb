#include "subrank/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace subrank {

IndexSet::IndexSet(std::vector<std::size_t> idx) : indices(std::move(idx)) {
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1])
      throw std::invalid_argument("IndexSet: indices must strictly increase");
  }
}

bool IndexSet::contains(std::size_t v) const {
  return std::binary_search(indices.begin(), indices.end(), v);
}

IndexSet IndexSet::of(std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  IndexSet s;
  s.indices = std::move(idx);
  return s;
}

DenseMatrix::DenseMatrix(std::size_t n_rows, std::size_t n_cols,
                         std::vector<double> data)
    : n_rows_(n_rows), n_cols_(n_cols), data_(std::move(data)) {
  if (data_.size() != n_rows_ * n_cols_)
    throw DimensionMismatchError("DenseMatrix: data size does not match shape");
  if (!all_finite())
    throw std::invalid_argument("DenseMatrix: entries must be finite");
}

DenseMatrix DenseMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::size_t n = rows.size();
  std::size_t m = n == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(n * m);
  for (const auto& r : rows) {
    if (r.size() != m)
      throw DimensionMismatchError("from_rows: ragged row lengths");
    data.insert(data.end(), r.begin(), r.end());
  }
  return DenseMatrix(n, m, std::move(data));
}

std::vector<double> DenseMatrix::col(std::size_t j) const {
  std::vector<double> out(n_rows_);
  for (std::size_t i = 0; i < n_rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(n_cols_, n_rows_);
  for (std::size_t i = 0; i < n_rows_; ++i)
    for (std::size_t j = 0; j < n_cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::submatrix(const IndexSet& rows,
                                   const IndexSet& cols) const {
  if (!rows.valid_for(n_rows_) || !cols.valid_for(n_cols_))
    throw DimensionMismatchError("submatrix: index out of range");
  DenseMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(i, j) = (*this)(rows[i], cols[j]);
  return out;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double frobenius_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double max_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (double v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_cols() != b.n_rows())
    throw DimensionMismatchError("multiply: inner dimensions differ");
  DenseMatrix c(a.n_rows(), b.n_cols());
  for (std::size_t i = 0; i < a.n_rows(); ++i) {
    for (std::size_t k = 0; k < a.n_cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.n_cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

namespace {

std::vector<double> mat_vec(const DenseMatrix& m, std::span<const double> v) {
  std::vector<double> out(m.n_rows(), 0.0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

std::vector<double> mat_t_vec(const DenseMatrix& m,
                                     std::span<const double> v) {
  std::vector<double> out(m.n_cols(), 0.0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    double vi = v[i];
    if (vi == 0.0) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.n_cols(); ++j) out[j] += r[j] * vi;
  }
  return out;
}

void normalize_in_place(std::vector<double>& v) {
  double n = norm2(v);
  if (n > 0.0)
    for (double& x : v) x /= n;
}

// One-sided Jacobi on a tall-or-square matrix: orthogonalizes column pairs
// until column dot products vanish relative to column norms.  w becomes
// U * diag(sigma); v accumulates the right singular vectors.
void jacobi_onesided(DenseMatrix& w, DenseMatrix& v) {
  const std::size_t m = w.n_cols();
  v = DenseMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j) v(j, j) = 1.0;
  const double tol = 1e-14;
  const std::size_t max_sweeps = 60;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = 0.0, beta = 0.0, gam = 0.0;
        for (std::size_t i = 0; i < w.n_rows(); ++i) {
          double wp = w(i, p), wq = w(i, q);
          alpha += wp * wp;
          beta += wq * wq;
          gam += wp * wq;
        }
        double scale = std::sqrt(alpha * beta);
        if (scale == 0.0 || std::abs(gam) <= tol * scale) continue;
        double zeta = (beta - alpha) / (2.0 * gam);
        double t = std::copysign(1.0, zeta) /
                   (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < w.n_rows(); ++i) {
          double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < m; ++i) {
          double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

SvdResult svd_tall(const DenseMatrix& a) {
  DenseMatrix w = a;
  DenseMatrix v;
  jacobi_onesided(w, v);
  const std::size_t m = a.n_cols();
  std::vector<double> sigma(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.n_rows(); ++i) s += w(i, j) * w(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return sigma[x] > sigma[y];
                   });
  SvdResult out;
  out.sigma.resize(m);
  out.u = DenseMatrix(a.n_rows(), m);
  out.v = DenseMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t src = order[j];
    out.sigma[j] = sigma[src];
    if (sigma[src] > 0.0)
      for (std::size_t i = 0; i < a.n_rows(); ++i)
        out.u(i, j) = w(i, src) / sigma[src];
    for (std::size_t i = 0; i < m; ++i) out.v(i, j) = v(i, src);
  }
  return out;
}

}  // namespace

SvdResult svd(const DenseMatrix& m) {
  if (m.n_rows() == 0 || m.n_cols() == 0)
    throw DimensionMismatchError("svd: empty matrix");
  if (m.n_rows() >= m.n_cols()) return svd_tall(m);
  SvdResult t = svd_tall(m.transpose());
  return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

SingularSpectrum singular_values(const DenseMatrix& m) {
  return SingularSpectrum{svd(m).sigma};
}

SpectralNormEstimate spectral_norm(const DenseMatrix& m, double tol,
                                   std::size_t max_iter) {
  if (m.n_rows() == 0 || m.n_cols() == 0) return {0.0, true};
  std::vector<double> v(m.n_cols());
  for (std::size_t j = 0; j < m.n_cols(); ++j)
    v[j] = 1.0 + static_cast<double>(j + 1) / static_cast<double>(m.n_cols() + 1);
  normalize_in_place(v);
  // Restart from basis vectors if the start vector lands in the null space.
  std::size_t restart = 0;
  double prev = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    std::vector<double> w = mat_vec(m, v);
    double sig = norm2(w);
    if (sig == 0.0) {
      if (restart >= m.n_cols()) return {0.0, true};
      std::fill(v.begin(), v.end(), 0.0);
      v[restart++] = 1.0;
      continue;
    }
    std::vector<double> z = mat_t_vec(m, w);
    normalize_in_place(z);
    v = std::move(z);
    if (it > 0 && std::abs(sig - prev) <= tol * sig) return {sig, true};
    prev = sig;
  }
  return {prev, false};
}

double low_rankness_score(const DenseMatrix& m) {
  double f = frobenius_norm(m);
  if (f == 0.0) throw ZeroMatrixError("low_rankness_score: zero matrix");
  SingularSpectrum s = singular_values(m);
  double total = 0.0;
  for (double v : s.values) total += v * v;
  return s.values[0] * s.values[0] / total;
}

std::size_t numerical_rank(const DenseMatrix& m, double rel_tol) {
  SingularSpectrum s = singular_values(m);
  if (s.values.empty() || s.values[0] == 0.0) return 0;
  double cut = rel_tol * s.values[0];
  std::size_t r = 0;
  for (double v : s.values)
    if (v > cut) ++r;
  return r;
}

VectorProjection project_onto_vector(std::span<const double> target,
                                     std::span<const double> direction) {
  if (target.size() != direction.size())
    throw DimensionMismatchError("project_onto_vector: length mismatch");
  double dd = dot(direction, direction);
  if (dd == 0.0) throw ZeroVectorError("project_onto_vector: zero direction");
  VectorProjection out;
  out.coefficient = dot(target, direction) / dd;
  out.residual.resize(target.size());
  for (std::size_t i = 0; i < target.size(); ++i)
    out.residual[i] = target[i] - out.coefficient * direction[i];
  out.residual_norm = norm2(out.residual);
  return out;
}

RowspaceProjection project_onto_rowspace(const DenseMatrix& targets,
                                         const DenseMatrix& basis) {
  if (basis.n_rows() > 0 && targets.n_cols() != basis.n_cols())
    throw DimensionMismatchError("project_onto_rowspace: width mismatch");
  RowspaceProjection out;
  // Modified Gram-Schmidt pass: keep rows that stay independent at relative
  // tolerance 1e-10; dependent and zero rows are dropped.
  std::vector<std::vector<double>> ortho;
  for (std::size_t r = 0; r < basis.n_rows(); ++r) {
    auto row = basis.row(r);
    std::vector<double> v(row.begin(), row.end());
    double original = norm2(v);
    for (const auto& q : ortho) {
      double c = dot(v, q);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * q[j];
    }
    double remaining = norm2(v);
    if (original > 0.0 && remaining > 1e-10 * original) {
      for (double& x : v) x /= remaining;
      ortho.push_back(std::move(v));
      out.kept_rows.push_back(r);
    }
  }
  const std::size_t k = out.kept_rows.size();
  out.coeffs = DenseMatrix(targets.n_rows(), k);
  out.projections = DenseMatrix(targets.n_rows(), targets.n_cols());
  if (k == 0) return out;

  DenseMatrix kept(k, basis.n_cols());
  for (std::size_t i = 0; i < k; ++i) {
    auto row = basis.row(out.kept_rows[i]);
    std::copy(row.begin(), row.end(), kept.row(i).begin());
  }
  // Pseudoinverse through the SVD of the kept basis.
  SvdResult s = svd(kept);
  std::vector<double> inv_sigma(s.sigma.size(), 0.0);
  double cut = s.sigma.empty() ? 0.0 : 1e-10 * s.sigma[0];
  for (std::size_t i = 0; i < s.sigma.size(); ++i)
    if (s.sigma[i] > cut) inv_sigma[i] = 1.0 / s.sigma[i];
  for (std::size_t t = 0; t < targets.n_rows(); ++t) {
    auto y = targets.row(t);
    for (std::size_t r = 0; r < s.sigma.size(); ++r) {
      if (inv_sigma[r] == 0.0) continue;
      double vy = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j) vy += s.v(j, r) * y[j];
      vy *= inv_sigma[r];
      for (std::size_t i = 0; i < k; ++i)
        out.coeffs(t, i) += s.u(i, r) * vy;
    }
    for (std::size_t i = 0; i < k; ++i) {
      double c = out.coeffs(t, i);
      if (c == 0.0) continue;
      auto b = kept.row(i);
      for (std::size_t j = 0; j < targets.n_cols(); ++j)
        out.projections(t, j) += c * b[j];
    }
  }
  return out;
}

double det_small(const DenseMatrix& m) {
  if (m.n_rows() != m.n_cols())
    throw NotSquareError("det_small: matrix is not square");
  const std::size_t n = m.n_rows();
  if (n > 16) throw TooLargeError("det_small: side exceeds 16");
  if (n == 0) return 1.0;
  DenseMatrix lu = m;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    if (lu(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(pivot, j), lu(col, j));
      det = -det;
    }
    det *= lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = lu(r, col) / lu(col, col);
      for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
    }
  }
  return det;
}

}  // namespace subrank
