#pragma once

#include <cstdint>
#include <vector>

#include "spcavrp/estimator.hpp"

namespace spcavrp {

/// Configuration for the modified deflation scheme: m single-component runs
/// with per-component sparsity, glued by orthogonal-complement projections.
struct DeflationConfig {
  int group_count = 300;                // A
  int group_size = 100;                 // B
  int projection_dim = 0;               // d
  std::vector<int> sparsity;            // l_1..l_m, one entry per component
  std::uint64_t seed = 0;
  CovStrategy strategy = CovStrategy::Auto;
  bool exhaustive = false;
  bool center = false;
  int threads = 1;

  int components() const { return static_cast<int>(sparsity.size()); }
  void validate(Eigen::Index p) const;
};

struct DeflationResult {
  Eigen::MatrixXd components;            // p x m, unit columns, mutually orthogonal
  std::vector<std::vector<int>> supports;  // S~_r per component
  Eigen::MatrixXd pilot_directions;      // p x m, the per-step v~_r (diagnostic)
  Eigen::VectorXd eigenvalues;           // leading eigenvalue per step
};

/// Algorithm: component 1 is the plain single-component estimate; component
/// r >= 2 runs the estimator on data projected onto the orthogonal
/// complement of the previous components, takes the support of that pilot
/// estimate, and extracts the leading eigenvector of the original covariance
/// restricted to the support and re-projected. Outputs are exactly mutually
/// orthogonal by construction. Throws DegenerateDeflation when a step's
/// re-projected submatrix has no positive leading eigenvalue.
DeflationResult deflate_fit(const DataMatrix& x, const DeflationConfig& cfg);

}  // namespace spcavrp
