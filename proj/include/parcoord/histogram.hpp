#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "parcoord/errors.hpp"

namespace parcoord {

enum class binning_scheme { equal_frequency, equal_width };

struct binning_spec {
  int bins = 8;                                            // requested bins per axis
  binning_scheme scheme = binning_scheme::equal_frequency;
  double smoothing_alpha = 0.0;                            // additive count smoothing

  void validate() const {
    if (bins < 2) throw binning_error("bins_per_axis must be at least 2");
    if (!(smoothing_alpha >= 0)) throw binning_error("smoothing_alpha must be nonnegative");
  }
};

/// Interior cut points for one column. Equal-frequency cuts sit at the j/B
/// empirical quantiles (midpoint interpolation); equal-width cuts divide
/// [min, max] uniformly. Duplicate cuts are collapsed and cuts equal to the
/// column maximum dropped (the left-closed bin rule would leave the top bin
/// permanently empty). Throws when fewer than 2 effective bins remain.
inline std::vector<double> bin_edges(std::span<const double> column, const binning_spec& spec) {
  spec.validate();
  const std::size_t b = static_cast<std::size_t>(spec.bins);
  if (column.empty()) throw binning_error("empty column");

  const auto [mn_it, mx_it] = std::minmax_element(column.begin(), column.end());
  const double mn = *mn_it, mx = *mx_it;
  if (!(mx > mn)) throw binning_error("constant column cannot be binned");

  std::vector<double> cuts;
  cuts.reserve(b - 1);
  if (spec.scheme == binning_scheme::equal_width) {
    const double width = (mx - mn) / static_cast<double>(b);
    for (std::size_t k = 1; k < b; ++k) cuts.push_back(mn + width * static_cast<double>(k));
  } else {
    const std::size_t n = column.size();
    if (n < b)
      throw binning_error("equal-frequency binning needs at least as many observations as bins");
    std::vector<double> sorted(column.begin(), column.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j < b; ++j) {
      if ((n * j) % b == 0) {
        const std::size_t idx = n * j / b;  // 1-based rank of the left neighbor
        cuts.push_back(0.5 * (sorted[idx - 1] + sorted[idx]));
      } else {
        const std::size_t rank = (n * j + b - 1) / b;  // ceil(n*j/b), 1-based
        cuts.push_back(sorted[rank - 1]);
      }
    }
  }

  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  while (!cuts.empty() && cuts.back() >= mx) cuts.pop_back();
  if (cuts.empty())
    throw binning_error("fewer than 2 effective bins after collapsing duplicate cut points");
  return cuts;
}

/// Bin of a value given sorted interior cuts; values exactly on a cut go to
/// the left bin.
inline std::size_t bin_index(double v, std::span<const double> cuts) {
  return static_cast<std::size_t>(
      std::lower_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
}

/// Smoothed joint/marginal probability masses of one attribute pair.
struct contingency_table {
  std::vector<double> joint;          // rows*cols, row-major
  std::vector<double> row_marginal;   // length rows
  std::vector<double> col_marginal;   // length cols
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t n = 0;                  // observation count behind the table
  double smoothing_alpha = 0.0;

  double at(std::size_t i, std::size_t j) const { return joint[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return joint[i * cols + j]; }

  /// True when some cell is empty while its marginal product is positive.
  bool has_zero_cell() const {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (at(i, j) == 0.0 && row_marginal[i] * col_marginal[j] > 0.0) return true;
    return false;
  }

  void validate(double tol = 1e-12) const {
    if (rows < 2 || cols < 2) throw data_error("contingency table needs at least 2x2 cells");
    double total = 0;
    for (double v : joint) {
      if (!(v >= 0)) throw data_error("negative joint probability");
      total += v;
    }
    if (std::abs(total - 1.0) > tol) throw data_error("joint probabilities do not sum to 1");
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += at(i, j);
      if (std::abs(s - row_marginal[i]) > tol) throw data_error("row marginal mismatch");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < rows; ++i) s += at(i, j);
      if (std::abs(s - col_marginal[j]) > tol) throw data_error("column marginal mismatch");
    }
  }
};

/// Bins a pair of columns into a contingency table. Counts are smoothed as
/// p_ij = (c_ij + alpha) / (n + alpha*I*J); marginals are recomputed from the
/// smoothed joint.
inline contingency_table contingency(std::span<const double> x, std::span<const double> y,
                                     const binning_spec& spec) {
  if (x.size() != y.size()) throw data_error("paired columns differ in length");
  if (x.size() < 2) throw data_error("need at least 2 observations");

  const std::vector<double> cuts_x = bin_edges(x, spec);
  const std::vector<double> cuts_y = bin_edges(y, spec);

  contingency_table t;
  t.rows = cuts_x.size() + 1;
  t.cols = cuts_y.size() + 1;
  t.n = x.size();
  t.smoothing_alpha = spec.smoothing_alpha;
  t.joint.assign(t.rows * t.cols, 0.0);

  for (std::size_t r = 0; r < x.size(); ++r)
    t.at(bin_index(x[r], cuts_x), bin_index(y[r], cuts_y)) += 1.0;

  const double alpha = spec.smoothing_alpha;
  const double denom =
      static_cast<double>(t.n) + alpha * static_cast<double>(t.rows * t.cols);
  for (double& v : t.joint) v = (v + alpha) / denom;

  t.row_marginal.assign(t.rows, 0.0);
  t.col_marginal.assign(t.cols, 0.0);
  for (std::size_t i = 0; i < t.rows; ++i)
    for (std::size_t j = 0; j < t.cols; ++j) {
      t.row_marginal[i] += t.at(i, j);
      t.col_marginal[j] += t.at(i, j);
    }
  return t;
}

}  // namespace parcoord
