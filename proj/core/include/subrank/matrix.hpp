#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "subrank/errors.hpp"

namespace subrank {

// Strictly increasing, duplicate-free index list.
struct IndexSet {
  std::vector<std::size_t> indices;

  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> idx);

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  std::size_t operator[](std::size_t i) const { return indices[i]; }
  bool contains(std::size_t v) const;
  bool valid_for(std::size_t dim) const {
    return indices.empty() || indices.back() < dim;
  }
  bool operator==(const IndexSet&) const = default;

  // Sorts and deduplicates arbitrary input.
  static IndexSet of(std::vector<std::size_t> idx);
};

// Row-major dense matrix of finite doubles.
class DenseMatrix {
 public:
  DenseMatrix() : n_rows_(0), n_cols_(0) {}
  DenseMatrix(std::size_t n_rows, std::size_t n_cols, double fill = 0.0)
      : n_rows_(n_rows), n_cols_(n_cols), data_(n_rows * n_cols, fill) {
    if (!std::isfinite(fill))
      throw std::invalid_argument("DenseMatrix: entries must be finite");
  }
  DenseMatrix(std::size_t n_rows, std::size_t n_cols,
              std::vector<double> data);
  static DenseMatrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t size() const { return data_.size(); }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * n_cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_cols_, n_cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * n_cols_, n_cols_};
  }
  std::vector<double> col(std::size_t j) const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  DenseMatrix transpose() const;
  // Materialized copy at the given index products.
  DenseMatrix submatrix(const IndexSet& rows, const IndexSet& cols) const;

  // True when every entry is finite.
  bool all_finite() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t n_rows_, n_cols_;
  std::vector<double> data_;
};

// Row/column index products addressing a block of a host matrix.
struct Submatrix {
  IndexSet rows;
  IndexSet cols;

  std::size_t entry_count() const { return rows.size() * cols.size(); }
  bool operator==(const Submatrix&) const = default;
};

// Singular values in non-increasing order.
struct SingularSpectrum {
  std::vector<double> values;
};

struct SvdResult {
  DenseMatrix u;                // n x r, orthonormal columns (zero where sigma is 0)
  std::vector<double> sigma;    // r = min(n, m), non-increasing
  DenseMatrix v;                // m x r, orthonormal columns
};

struct SpectralNormEstimate {
  double value = 0.0;
  bool converged = true;
};

struct VectorProjection {
  double coefficient = 0.0;        // argmin_a ||y - a x||
  std::vector<double> residual;    // y - coefficient * x
  double residual_norm = 0.0;
};

struct RowspaceProjection {
  // coeffs is targets.n_rows() x kept_rows.size(); projections = coeffs * basis[kept].
  DenseMatrix coeffs;
  DenseMatrix projections;
  std::vector<std::size_t> kept_rows;  // basis rows retained after dropping dependents
};

double frobenius_norm(const DenseMatrix& m);
double max_norm(const DenseMatrix& m);

// Power iteration on the Gram operator; flagged unconverged at the iteration
// cap rather than throwing.
SpectralNormEstimate spectral_norm(const DenseMatrix& m, double tol = 1e-12,
                                   std::size_t max_iter = 10000);

// One-sided Jacobi; returns the full spectrum including exact zeros.
SingularSpectrum singular_values(const DenseMatrix& m);
SvdResult svd(const DenseMatrix& m);

// sigma_1^2 / sum_i sigma_i^2, in (0, 1]; 1 iff numerically rank one.
double low_rankness_score(const DenseMatrix& m);

// Count of singular values above rel_tol * sigma_1 (0 for the zero matrix).
std::size_t numerical_rank(const DenseMatrix& m, double rel_tol = 1e-10);

VectorProjection project_onto_vector(std::span<const double> target,
                                     std::span<const double> direction);

// Least-squares coefficients of each target row in the span of the basis
// rows.  Dependent basis rows (relative residual <= 1e-10 against the rows
// kept so far) are dropped, never an error; kept_rows records the survivors.
RowspaceProjection project_onto_rowspace(const DenseMatrix& targets,
                                         const DenseMatrix& basis);

// LU with partial pivoting; square side <= 16 only.
double det_small(const DenseMatrix& m);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace subrank
