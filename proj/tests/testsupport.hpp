#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spcavrp/covariance.hpp"
#include "spcavrp/linalg.hpp"
#include "spcavrp/models.hpp"
#include "spcavrp/rng.hpp"

namespace spcavrp::testing {

inline Eigen::MatrixXd random_matrix(RngStream& rng, Eigen::Index rows,
                                     Eigen::Index cols) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = rng.normal();
  return out;
}

inline SymMatrix random_symmetric(RngStream& rng, Eigen::Index dim) {
  const Eigen::MatrixXd a = random_matrix(rng, dim, dim);
  return SymMatrix::from_upper(0.5 * (a + a.transpose()));
}

/// Random PSD matrix G G^T / dim with full rank.
inline SymMatrix random_psd(RngStream& rng, Eigen::Index dim) {
  const Eigen::MatrixXd g = random_matrix(rng, dim, dim + 2);
  return SymMatrix::from_upper((g * g.transpose()) /
                               static_cast<double>(dim));
}

/// Random p x m matrix with orthonormal columns (QR of a Gaussian).
inline Eigen::MatrixXd random_orthonormal(RngStream& rng, Eigen::Index p,
                                          Eigen::Index m) {
  const Eigen::MatrixXd g = random_matrix(rng, p, m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(p, m);
}

/// Random spiked model with exactly orthonormal (dense) spike directions.
inline SpikedModel random_spiked_model(RngStream& rng, int p, int m) {
  const Eigen::MatrixXd v = random_orthonormal(rng, p, m);
  std::vector<SpikedModel::Spike> spikes;
  double theta = 2.0 + 8.0 * rng.uniform_unit();
  for (int r = 0; r < m; ++r) {
    spikes.push_back({theta, v.col(r)});
    theta *= 0.5 + 0.4 * rng.uniform_unit();
  }
  return SpikedModel::identity_base(p, std::move(spikes));
}

inline int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform_below(
                  static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace spcavrp::testing
