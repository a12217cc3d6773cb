#include "subrank/biclique.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace subrank {

namespace {

// Fixed-width bitset over an index universe.
struct Bits {
  std::vector<std::uint64_t> words;

  explicit Bits(std::size_t n = 0) : words((n + 63) / 64, 0) {}

  void set(std::size_t i) { words[i >> 6] |= 1ull << (i & 63); }
  void and_with(const Bits& o) {
    for (std::size_t w = 0; w < words.size(); ++w) words[w] &= o.words[w];
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words) c += std::popcount(w);
    return c;
  }
  template <typename F>
  void for_each(F f) const {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t x = words[w];
      while (x) {
        f(w * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
};

struct Candidate {
  std::size_t edges = 0;
  std::vector<std::size_t> rows;  // original indices, sorted
  std::vector<std::size_t> cols;  // original indices, sorted
};

// edges desc, then row count desc, then lexicographically smaller row set.
bool better(const Candidate& a, const Candidate& b) {
  if (a.edges != b.edges) return a.edges > b.edges;
  if (a.rows.size() != b.rows.size()) return a.rows.size() > b.rows.size();
  return a.rows < b.rows;
}

struct PeelState {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

// Repeatedly deletes the line with the smallest fraction of 1-bits until the
// remaining block is all ones.  Scores are compared by integer
// cross-multiplication, so ties are exact; ties prefer rows, then the
// smallest index.  Requires at least one 1-bit.
PeelState greedy_peel(const IndicatorMatrix& ind,
                      const std::vector<std::size_t>& row_ids,
                      const std::vector<std::size_t>& col_ids) {
  std::vector<std::size_t> rows = row_ids, cols = col_ids;
  std::vector<std::size_t> row_ones(rows.size(), 0), col_ones(cols.size(), 0);
  std::size_t total = 0;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      if (ind.get(rows[a], cols[b])) {
        ++row_ones[a];
        ++col_ones[b];
        ++total;
      }
  while (!rows.empty() && !cols.empty()) {
    if (total == rows.size() * cols.size()) break;
    // min of row_ones[a]/|cols| and col_ones[b]/|rows|
    bool best_is_row = true;
    std::size_t best_pos = 0;
    std::uint64_t best_num = row_ones[0], best_den = cols.size();
    for (std::size_t a = 1; a < rows.size(); ++a)
      if (row_ones[a] * best_den < best_num * cols.size()) {
        best_num = row_ones[a];
        best_pos = a;
      }
    for (std::size_t b = 0; b < cols.size(); ++b)
      if (col_ones[b] * best_den < best_num * rows.size()) {
        best_is_row = false;
        best_pos = b;
        best_num = col_ones[b];
        best_den = rows.size();
      }
    if (best_is_row) {
      for (std::size_t b = 0; b < cols.size(); ++b)
        if (ind.get(rows[best_pos], cols[b])) {
          --col_ones[b];
          --total;
        }
      rows.erase(rows.begin() + best_pos);
      row_ones.erase(row_ones.begin() + best_pos);
    } else {
      for (std::size_t a = 0; a < rows.size(); ++a)
        if (ind.get(rows[a], cols[best_pos])) {
          --row_ones[a];
          --total;
        }
      cols.erase(cols.begin() + best_pos);
      col_ones.erase(col_ones.begin() + best_pos);
    }
  }
  return {std::move(rows), std::move(cols)};
}

Biclique peel_to_biclique(const IndicatorMatrix& ind,
                          const std::vector<std::size_t>& row_ids,
                          const std::vector<std::size_t>& col_ids) {
  PeelState s = greedy_peel(ind, row_ids, col_ids);
  Biclique out;
  out.rows = IndexSet(s.rows);
  out.cols = IndexSet(s.cols);
  out.edge_count = s.rows.size() * s.cols.size();
  out.exact = false;
  return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Branch and bound over subsets of the enumerated dimension.  Masks are
// bitsets over the other dimension.  Returns false when the node budget is
// exhausted.
class ExactSearch {
 public:
  ExactSearch(const std::vector<Bits>& masks,
              const std::vector<std::size_t>& enum_ids,
              const std::vector<std::size_t>& other_ids, bool rows_enumerated,
              std::size_t other_size, std::size_t budget)
      : masks_(masks),
        enum_ids_(enum_ids),
        other_ids_(other_ids),
        rows_enumerated_(rows_enumerated),
        budget_(budget) {
    order_ = all_indices(masks.size());
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return masks[a].count() > masks[b].count();
                     });
    full_ = Bits(other_size);
    for (std::size_t i = 0; i < other_size; ++i) full_.set(i);
  }

  bool run() {
    std::vector<std::size_t> chosen;
    return dfs(0, chosen, full_);
  }

  Candidate best;

 private:
  void consider(const std::vector<std::size_t>& chosen, const Bits& inter) {
    std::size_t edges = chosen.size() * inter.count();
    if (edges == 0) return;
    if (edges < best.edges) return;
    Candidate c;
    c.edges = edges;
    std::vector<std::size_t> enum_orig;
    enum_orig.reserve(chosen.size());
    for (std::size_t p : chosen) enum_orig.push_back(enum_ids_[p]);
    std::sort(enum_orig.begin(), enum_orig.end());
    std::vector<std::size_t> other_orig;
    inter.for_each([&](std::size_t p) { other_orig.push_back(other_ids_[p]); });
    std::sort(other_orig.begin(), other_orig.end());
    if (rows_enumerated_) {
      c.rows = std::move(enum_orig);
      c.cols = std::move(other_orig);
    } else {
      c.rows = std::move(other_orig);
      c.cols = std::move(enum_orig);
    }
    if (best.edges == 0 || better(c, best)) best = std::move(c);
  }

  bool dfs(std::size_t idx, std::vector<std::size_t>& chosen, Bits inter) {
    if (budget_ == 0) return false;
    --budget_;
    std::size_t inter_count = inter.count();
    if (inter_count == 0) return true;
    // Upper bound if every remaining element kept the intersection intact.
    std::size_t bound = (chosen.size() + (order_.size() - idx)) * inter_count;
    if (bound < best.edges) return true;
    if (idx == order_.size()) return true;
    std::size_t el = order_[idx];
    Bits with = inter;
    with.and_with(masks_[el]);
    if (with.count() > 0) {
      chosen.push_back(el);
      consider(chosen, with);
      if (!dfs(idx + 1, chosen, std::move(with))) return false;
      chosen.pop_back();
    }
    return dfs(idx + 1, chosen, std::move(inter));
  }

  const std::vector<Bits>& masks_;
  std::vector<std::size_t> enum_ids_;
  std::vector<std::size_t> other_ids_;
  std::vector<std::size_t> order_;
  Bits full_{0};
  bool rows_enumerated_;
  std::size_t budget_;
};

Biclique exact_solve(const IndicatorMatrix& ind,
                     const BicliqueStrategy& strategy) {
  // Prune isolated rows/columns, then enumerate over the smaller dimension.
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < ind.n_rows(); ++i)
    for (std::size_t j = 0; j < ind.n_cols(); ++j)
      if (ind.get(i, j)) {
        rows.push_back(i);
        break;
      }
  for (std::size_t j = 0; j < ind.n_cols(); ++j)
    for (std::size_t i = 0; i < ind.n_rows(); ++i)
      if (ind.get(i, j)) {
        cols.push_back(j);
        break;
      }
  bool rows_enumerated = rows.size() <= cols.size();
  const auto& enum_ids = rows_enumerated ? rows : cols;
  const auto& other_ids = rows_enumerated ? cols : rows;
  if (enum_ids.size() > strategy.exact_dim_limit)
    return peel_to_biclique(ind, rows, cols);

  std::vector<Bits> masks(enum_ids.size(), Bits(other_ids.size()));
  for (std::size_t a = 0; a < enum_ids.size(); ++a)
    for (std::size_t b = 0; b < other_ids.size(); ++b) {
      bool bit = rows_enumerated ? ind.get(enum_ids[a], other_ids[b])
                                 : ind.get(other_ids[b], enum_ids[a]);
      if (bit) masks[a].set(b);
    }
  ExactSearch search(masks, enum_ids, other_ids, rows_enumerated,
                     other_ids.size(), strategy.exact_node_budget);
  if (!search.run()) return peel_to_biclique(ind, rows, cols);
  Biclique out;
  out.rows = IndexSet(std::move(search.best.rows));
  out.cols = IndexSet(std::move(search.best.cols));
  out.edge_count = search.best.edges;
  out.exact = true;
  return out;
}

Biclique spectral_solve(const IndicatorMatrix& ind,
                        const BicliqueStrategy& strategy) {
  const std::size_t n = ind.n_rows(), m = ind.n_cols();
  // Rank-1 co-clustering of the +/-1 recode.
  std::vector<double> v(m), u(n);
  for (std::size_t j = 0; j < m; ++j)
    v[j] = 1.0 + static_cast<double>(j + 1) / static_cast<double>(m + 1);
  double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (double& x : v) x /= nv;
  double prev_sigma = 0.0;
  for (std::size_t it = 0; it < 200; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        s += (ind.get(i, j) ? 1.0 : -1.0) * v[j];
      u[i] = s;
    }
    double sigma =
        std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    if (sigma == 0.0) break;
    for (double& x : u) x /= sigma;
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += (ind.get(i, j) ? 1.0 : -1.0) * u[i];
      v[j] = s;
    }
    double nv2 =
        std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (nv2 == 0.0) break;
    for (double& x : v) x /= nv2;
    if (it > 0 && std::abs(sigma - prev_sigma) <= 1e-12 * sigma) break;
    prev_sigma = sigma;
  }
  std::vector<std::size_t> row_pos, row_neg, col_pos, col_neg;
  for (std::size_t i = 0; i < n; ++i)
    (u[i] >= 0.0 ? row_pos : row_neg).push_back(i);
  for (std::size_t j = 0; j < m; ++j)
    (v[j] >= 0.0 ? col_pos : col_neg).push_back(j);

  const std::vector<std::size_t>* qr[4] = {&row_pos, &row_pos, &row_neg,
                                           &row_neg};
  const std::vector<std::size_t>* qc[4] = {&col_pos, &col_neg, &col_pos,
                                           &col_neg};
  double best_density = -1.0;
  int best_q = -1;
  for (int q = 0; q < 4; ++q) {
    if (qr[q]->empty() || qc[q]->empty()) continue;
    std::size_t ones = 0;
    for (std::size_t i : *qr[q])
      for (std::size_t j : *qc[q])
        if (ind.get(i, j)) ++ones;
    double density =
        static_cast<double>(ones) /
        static_cast<double>(qr[q]->size() * qc[q]->size());
    if (density > best_density) {
      best_density = density;
      best_q = q;
    }
  }
  if (best_q < 0 || best_density <= 0.0) {
    // No quadrant holds a 1-bit; peel the whole indicator instead.
    return peel_to_biclique(ind, all_indices(n), all_indices(m));
  }
  if (strategy.spectral_raw_quadrant) {
    Biclique out;
    out.rows = IndexSet(*qr[best_q]);
    out.cols = IndexSet(*qc[best_q]);
    out.edge_count = 0;
    for (std::size_t i : *qr[best_q])
      for (std::size_t j : *qc[best_q])
        if (ind.get(i, j)) ++out.edge_count;
    out.exact = false;
    return out;
  }
  return peel_to_biclique(ind, *qr[best_q], *qc[best_q]);
}

}  // namespace

Biclique solve(const IndicatorMatrix& indicator,
               const BicliqueStrategy& strategy) {
  if (indicator.count_ones() == 0)
    throw EmptyIndicatorError("biclique: indicator has no 1-bits");
  switch (strategy.kind) {
    case BicliqueKind::kExact:
      return exact_solve(indicator, strategy);
    case BicliqueKind::kGreedyPeel:
      return peel_to_biclique(indicator, all_indices(indicator.n_rows()),
                              all_indices(indicator.n_cols()));
    case BicliqueKind::kSpectral:
      return spectral_solve(indicator, strategy);
  }
  throw Error("biclique: unknown strategy");
}

Biclique brute_force_oracle(const IndicatorMatrix& indicator) {
  if (indicator.count_ones() == 0)
    throw EmptyIndicatorError("biclique oracle: indicator has no 1-bits");
  bool rows_enumerated = indicator.n_rows() <= indicator.n_cols();
  std::size_t d = std::min(indicator.n_rows(), indicator.n_cols());
  std::size_t other = std::max(indicator.n_rows(), indicator.n_cols());
  if (d > 16) throw TooLargeError("biclique oracle: smaller dimension > 16");

  std::vector<Bits> masks(d, Bits(other));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < other; ++b) {
      bool bit = rows_enumerated ? indicator.get(a, b) : indicator.get(b, a);
      if (bit) masks[a].set(b);
    }
  Candidate best;
  for (std::uint64_t sub = 1; sub < (1ull << d); ++sub) {
    Bits inter(other);
    for (auto& w : inter.words) w = ~0ull;
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < d; ++a)
      if (sub & (1ull << a)) {
        inter.and_with(masks[a]);
        members.push_back(a);
      }
    std::size_t edges = members.size() * inter.count();
    if (edges == 0 || edges < best.edges) continue;
    Candidate c;
    c.edges = edges;
    std::vector<std::size_t> other_members;
    inter.for_each([&](std::size_t p) {
      if (p < other) other_members.push_back(p);
    });
    if (rows_enumerated) {
      c.rows = members;
      c.cols = other_members;
    } else {
      c.rows = other_members;
      c.cols = members;
    }
    if (best.edges == 0 || better(c, best)) best = std::move(c);
  }
  Biclique out;
  out.rows = IndexSet(std::move(best.rows));
  out.cols = IndexSet(std::move(best.cols));
  out.edge_count = best.edges;
  out.exact = true;
  return out;
}

}  // namespace subrank
