#pragma once

#include <cstdint>
#include <vector>

#include "spcavrp/covariance.hpp"
#include "spcavrp/linalg.hpp"
#include "spcavrp/projections.hpp"

namespace spcavrp {

/// Configuration for the random-projection eigenspace estimator. With m = 1
/// this is the single-component estimator; m > 1 estimates the leading
/// m-dimensional eigenspace directly.
struct SpcavrpConfig {
  int group_count = 300;   // A
  int group_size = 100;    // B
  int projection_dim = 0;  // d, in [1, p]
  int sparsity = 0;        // l, output support size, in [m, p]
  int components = 1;      // m, in [1, d]
  std::uint64_t seed = 0;
  CovStrategy strategy = CovStrategy::Auto;
  bool exhaustive = false;  // replace the random groups by one pass over all
                            // C(p, d) subsets
  bool center = false;
  int threads = 1;

  void validate(Eigen::Index p) const;
};

/// The projection selected within one group: its index, index within the
/// group, top m+1 eigenvalues and m eigenvectors of the d x d submatrix.
struct GroupSelection {
  int group = 0;         // a
  int selected = 0;      // b*(a), smallest maximizer of the top-m eigensum
  Eigen::VectorXd eigenvalues;  // length m+1, nonincreasing (last is 0 if m == d)
  Eigen::MatrixXd eigenvectors; // d x m, local coordinates of the submatrix
  AxisProjection support;
};

/// Per-coordinate importance scores: eigengap-weighted averages of squared
/// eigenvector components over the selected projections. Coordinates never
/// selected by any group are exactly zero.
struct ImportanceScores {
  Eigen::VectorXd w;
};

struct Estimate {
  OrthonormalFrame vectors;       // p x m, supported on `support`
  std::vector<int> support;       // sorted, |support| = l
  Eigen::VectorXd eigenvalues;    // top m of the restricted covariance
  ImportanceScores scores;
  std::vector<double> group_eigsums;  // selected top-m eigensum per group
  bool sparse_scores = false;     // fewer than l positive scores; support was
                                  // padded with zero-score coordinates
};

/// Pick b*(a) = smallest maximizer over the group of the top-m eigenvalue
/// sum of the projected covariance submatrix.
GroupSelection select_in_group(const CovarianceSource& src,
                               std::vector<AxisProjection> group,
                               int components);

/// w^(j) = A^{-1} sum_a sum_{r<=m} (lambda_r - lambda_{m+1}) v_r(j)^2 over
/// the selected submatrices, mapped back to ambient coordinates.
/// Accumulation runs in group order.
ImportanceScores accumulate_scores(const std::vector<GroupSelection>& selections,
                                   int components, Eigen::Index p);

/// Indices of the l largest scores, ties broken by smallest index. Sorted.
std::vector<int> top_l_support(const ImportanceScores& scores, int l);

/// The full estimator on a data matrix: sample projections, select within
/// groups, aggregate importance scores, pick the top-l support and return
/// the m leading eigenvectors of the restricted sample covariance.
/// Deterministic in (x, cfg), independent of cfg.threads.
Estimate fit(const DataMatrix& x, const SpcavrpConfig& cfg);

/// Same estimator on an existing covariance source (used by the deflation
/// scheme and by tests that start from a population matrix).
Estimate fit_source(const CovarianceSource& src, const SpcavrpConfig& cfg);

}  // namespace spcavrp
