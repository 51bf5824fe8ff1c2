#pragma once

#include <cstdint>
#include <vector>

#include "spcavrp/covariance.hpp"
#include "spcavrp/estimator.hpp"
#include "spcavrp/linalg.hpp"

namespace spcavrp {

/// ||sin Theta(U, V)||_F, the Frobenius norm of the sines of the principal
/// angles; reduces to sqrt(1 - (u^T v)^2) for single vectors.
double subspace_loss(const OrthonormalFrame& u, const OrthonormalFrame& v);

struct SupportMetrics {
  double recovery_rate = 0.0;  // |est ∩ true| / |true|
  int false_inclusions = 0;    // |est \ true|
};

SupportMetrics support_metrics(const std::vector<int>& estimated,
                               const std::vector<int>& truth);

/// Parameters of HyperGeom(d, k, p): number of white balls when drawing d
/// balls without replacement from p balls, k of which are white.
struct HypergeomParams {
  int draws = 0;   // d
  int white = 0;   // k
  int total = 0;   // p
};

/// log P(X = x), -inf outside the support.
double hypergeom_log_pmf(int x, const HypergeomParams& params);

/// P(X <= t). Out-of-range t saturates to 0 or 1; nondecreasing in t.
double hypergeom_cdf(int t, const HypergeomParams& params);

/// P(X >= t), summed directly so that small tails keep full relative
/// accuracy (1 - cdf would cancel).
double hypergeom_upper_tail(int t, const HypergeomParams& params);

/// ceil( 1 / (2 (1 - F_HG(t-1; d, k, p))) ): the group size at which the
/// best projection in a group captures at least t signal coordinates with
/// probability >= 1/4. Throws Unreachable when F_HG(t-1) = 1.
std::uint64_t choose_b(int t, int d, int k, int p);

struct Incoherence {
  int nonzero_rows = 0;  // nnzr(V)
  double mu = 0.0;       // max/min nonzero row norm
};

/// Row-support diagnostics of an eigenvector matrix; rows with norm <= 1e-12
/// count as zero. Throws InvalidInput when all rows are zero.
Incoherence incoherence(const Eigen::MatrixXd& v);

struct VarCurve {
  std::vector<int> l_grid;
  std::vector<double> values;             // Var_l = v^T Sigma v per grid point
  std::vector<std::vector<int>> supports;  // top-l index set per grid point
};

/// Explained-variance tuning curve: for each l, restrict to the top-l scored
/// coordinates and report the leading eigenvalue of the restricted
/// covariance. Reuses the stored scores; no re-run of the projection
/// ensemble.
VarCurve var_curve(const ImportanceScores& scores, const CovarianceSource& src,
                   const std::vector<int>& l_grid);

struct SparsePcOracle {
  std::vector<int> support;  // lexicographically smallest maximizer
  Eigen::VectorXd direction; // ambient, unit, supported on `support`
  double value = 0.0;        // max of v^T Sigma v over k-sparse unit v
};

/// Exact maximizer of v^T Sigma v over k-sparse unit vectors via the leading
/// eigenvalue of every k x k principal submatrix. Throws TooLarge when
/// C(p, k) exceeds the cap.
SparsePcOracle brute_force_sparse_pc(const CovarianceSource& src, int k,
                                     std::uint64_t cap = 100'000);

}  // namespace spcavrp
