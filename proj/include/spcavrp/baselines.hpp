#pragma once

#include <vector>

#include "spcavrp/covariance.hpp"
#include "spcavrp/linalg.hpp"

namespace spcavrp {

/// Top-m eigenvectors of the full sample covariance.
OrthonormalFrame vanilla_pca(const CovarianceSource& src, int m);

struct DiagonalThresholdResult {
  std::vector<int> support;  // k largest diagonal entries, ties smallest index
  OrthonormalFrame frame;    // top-m eigenvectors of the submatrix, zero-padded
};

/// Diagonal thresholding: restrict to the k largest-variance coordinates and
/// take the top-m eigenvectors there.
DiagonalThresholdResult diagonal_threshold(const CovarianceSource& src, int k,
                                           int m);

}  // namespace spcavrp
