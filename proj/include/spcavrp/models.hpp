#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spcavrp/covariance.hpp"
#include "spcavrp/linalg.hpp"

namespace spcavrp {

/// A spiked covariance model Sigma = base + sum_r theta_r v_r v_r^T with
/// unit-norm spike directions and theta_1 >= ... >= theta_m > 0. The base is
/// the identity unless a construction needs an explicit matrix.
class SpikedModel {
 public:
  struct Spike {
    double theta = 0.0;
    Eigen::VectorXd direction;  // unit norm
  };

  /// Identity base. Spikes must be sorted by nonincreasing theta; pairwise
  /// orthogonality is required unless relax_orthogonality is set.
  static SpikedModel identity_base(Eigen::Index p, std::vector<Spike> spikes,
                                   bool relax_orthogonality = false);

  /// Explicit base matrix.
  static SpikedModel explicit_base(SymMatrix base, std::vector<Spike> spikes,
                                   bool relax_orthogonality = false);

  Eigen::Index p() const { return p_; }
  const std::vector<Spike>& spikes() const { return spikes_; }
  bool identity() const { return !base_.has_value(); }
  bool relaxed() const { return relaxed_; }

  /// The full covariance matrix.
  SymMatrix covariance() const;

  /// The leading m spike directions as a frame (requires m <= #spikes and
  /// orthonormal spikes).
  OrthonormalFrame leading_directions(int m) const;

  /// Union of the spike supports (entries with |v| > 1e-12), sorted.
  std::vector<int> signal_support(int m) const;

 private:
  SpikedModel() = default;

  Eigen::Index p_ = 0;
  std::vector<Spike> spikes_;
  std::optional<SymMatrix> base_;
  bool relaxed_ = false;
};

enum class SpikeProfile { Homogeneous, Linear };

/// Single spike on the first k coordinates: homogeneous v = k^{-1/2} 1_k or
/// linearly decaying v ~ (k, k-1, ..., 1), zero elsewhere.
SpikedModel make_single_spike(int p, int k, double theta, SpikeProfile profile);

/// Sigma_1 = blockdiag(2 J_k, J_k, 0) + I_p. Requires 2k <= p.
SpikedModel make_sigma1(int p, int k);

/// Sigma_2 = blockdiag(k J_k, 0.99k J_3k, I_{p-4k}) + 0.01 I_p.
/// Requires 4k <= p.
SpikedModel make_sigma2(int p, int k);

/// The 400-dimensional model blockdiag(10 J_10, 8.9 J_390 + I_390) +
/// 0.01 I_400, whose leading eigenvector is supported on the first 10
/// coordinates while the larger diagonal entries all sit in the second
/// block.
SpikedModel make_intro_model();

/// Spikes with homogeneous magnitude and the given sign pattern on each
/// support. Signs default to all +1. Rejects non-orthonormal directions
/// (|v_r^T v_q| > 1e-10) unless relax_orthogonality is set.
SpikedModel make_multi_spike(
    int p, const std::vector<std::vector<int>>& supports,
    const std::vector<double>& thetas,
    const std::vector<std::vector<int>>& signs = {},
    bool relax_orthogonality = false);

/// Draws from N_p(0, Sigma) with per-row substreams: row i of the output
/// uses the stream derived from (seed, i), so sampling is reproducible and
/// parallelizable over observations. The symmetric square root of Sigma is
/// factored once at construction (eigendecomposition; eigenvalues in
/// [-1e-8, 0) are clipped to zero, anything lower is an error).
class GaussianSampler {
 public:
  explicit GaussianSampler(const SpikedModel& model);

  DataMatrix sample(Eigen::Index n, std::uint64_t seed, int threads = 1) const;

 private:
  Eigen::MatrixXd sqrt_cov_;
};

/// One-shot convenience over GaussianSampler.
DataMatrix sample_gaussian(const SpikedModel& model, Eigen::Index n,
                           std::uint64_t seed, int threads = 1);

}  // namespace spcavrp
