#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subrank/errors.hpp"

namespace subrank {

// Dense boolean matrix marking candidate entries.
class IndicatorMatrix {
 public:
  IndicatorMatrix() : n_rows_(0), n_cols_(0) {}
  IndicatorMatrix(std::size_t n_rows, std::size_t n_cols, bool fill = false)
      : n_rows_(n_rows), n_cols_(n_cols), bits_(n_rows * n_cols, fill ? 1 : 0) {}

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }

  bool get(std::size_t i, std::size_t j) const {
    return bits_[i * n_cols_ + j] != 0;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    bits_[i * n_cols_ + j] = v ? 1 : 0;
  }

  std::size_t count_ones() const {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  IndicatorMatrix transpose() const {
    IndicatorMatrix t(n_cols_, n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i)
      for (std::size_t j = 0; j < n_cols_; ++j)
        if (get(i, j)) t.set(j, i);
    return t;
  }

  bool operator==(const IndicatorMatrix&) const = default;

 private:
  std::size_t n_rows_, n_cols_;
  std::vector<std::uint8_t> bits_;
};

// Entrywise conjunction; shapes must agree.
inline IndicatorMatrix intersect(const IndicatorMatrix& a,
                                 const IndicatorMatrix& b) {
  if (a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols())
    throw DimensionMismatchError("intersect: shapes differ");
  IndicatorMatrix out(a.n_rows(), a.n_cols());
  for (std::size_t i = 0; i < a.n_rows(); ++i)
    for (std::size_t j = 0; j < a.n_cols(); ++j)
      if (a.get(i, j) && b.get(i, j)) out.set(i, j);
  return out;
}

}  // namespace subrank
