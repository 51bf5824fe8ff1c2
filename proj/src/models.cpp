#include "spcavrp/models.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "spcavrp/errors.hpp"
#include "spcavrp/parallel.hpp"
#include "spcavrp/rng.hpp"

namespace spcavrp {

namespace {

void check_spikes(Eigen::Index p, const std::vector<SpikedModel::Spike>& spikes,
                  bool relaxed) {
  for (std::size_t r = 0; r < spikes.size(); ++r) {
    const auto& spike = spikes[r];
    if (spike.direction.size() != p)
      throw InvalidInput("SpikedModel: spike dimension mismatch");
    if (!(spike.theta > 0.0))
      throw InvalidInput("SpikedModel: spike strengths must be positive");
    if (std::abs(spike.direction.norm() - 1.0) > 1e-10)
      throw InvalidInput("SpikedModel: spike directions must be unit norm");
    if (r > 0 && spikes[r - 1].theta < spike.theta)
      throw InvalidInput("SpikedModel: spike strengths must be nonincreasing");
    if (!relaxed) {
      for (std::size_t q = 0; q < r; ++q)
        if (std::abs(spike.direction.dot(spikes[q].direction)) > 1e-10)
          throw InvalidInput("SpikedModel: spike directions not orthogonal");
    }
  }
}

}  // namespace

SpikedModel SpikedModel::identity_base(Eigen::Index p, std::vector<Spike> spikes,
                                       bool relax_orthogonality) {
  if (p < 1) throw InvalidInput("SpikedModel: p must be >= 1");
  check_spikes(p, spikes, relax_orthogonality);
  SpikedModel out;
  out.p_ = p;
  out.spikes_ = std::move(spikes);
  out.relaxed_ = relax_orthogonality;
  return out;
}

SpikedModel SpikedModel::explicit_base(SymMatrix base, std::vector<Spike> spikes,
                                       bool relax_orthogonality) {
  const Eigen::Index p = base.dim();
  check_spikes(p, spikes, relax_orthogonality);
  SpikedModel out;
  out.p_ = p;
  out.spikes_ = std::move(spikes);
  out.base_ = std::move(base);
  out.relaxed_ = relax_orthogonality;
  return out;
}

SymMatrix SpikedModel::covariance() const {
  Eigen::MatrixXd sigma = base_.has_value()
                              ? base_->mat()
                              : Eigen::MatrixXd::Identity(p_, p_);
  for (const Spike& spike : spikes_)
    sigma.noalias() += spike.theta * spike.direction * spike.direction.transpose();
  return SymMatrix::from_upper(sigma);
}

OrthonormalFrame SpikedModel::leading_directions(int m) const {
  if (m < 1 || m > static_cast<int>(spikes_.size()))
    throw InvalidInput("SpikedModel: not enough spikes for requested m");
  Eigen::MatrixXd frame(p_, m);
  for (int r = 0; r < m; ++r) frame.col(r) = spikes_[r].direction;
  return OrthonormalFrame::adopt(std::move(frame));
}

std::vector<int> SpikedModel::signal_support(int m) const {
  if (m < 1 || m > static_cast<int>(spikes_.size()))
    throw InvalidInput("SpikedModel: not enough spikes for requested m");
  std::set<int> support;
  for (int r = 0; r < m; ++r)
    for (Eigen::Index j = 0; j < p_; ++j)
      if (std::abs(spikes_[r].direction[j]) > 1e-12)
        support.insert(static_cast<int>(j));
  return {support.begin(), support.end()};
}

SpikedModel make_single_spike(int p, int k, double theta, SpikeProfile profile) {
  if (k < 1 || k > p) throw InvalidInput("make_single_spike: need 1 <= k <= p");
  if (!(theta > 0.0)) throw InvalidInput("make_single_spike: theta must be > 0");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
  if (profile == SpikeProfile::Homogeneous) {
    v.head(k).setConstant(1.0 / std::sqrt(static_cast<double>(k)));
  } else {
    for (int j = 0; j < k; ++j) v[j] = static_cast<double>(k - j);
    v /= v.norm();
  }
  return SpikedModel::identity_base(p, {{theta, std::move(v)}});
}

namespace {

Eigen::VectorXd homogeneous_direction(int p, int first, int count) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
  v.segment(first, count).setConstant(1.0 / std::sqrt(static_cast<double>(count)));
  return v;
}

}  // namespace

SpikedModel make_sigma1(int p, int k) {
  if (k < 1 || 2 * k > p) throw InvalidInput("make_sigma1: need 1 <= 2k <= p");
  std::vector<SpikedModel::Spike> spikes;
  spikes.push_back({2.0, homogeneous_direction(p, 0, k)});
  spikes.push_back({1.0, homogeneous_direction(p, k, k)});
  return SpikedModel::identity_base(p, std::move(spikes));
}

SpikedModel make_sigma2(int p, int k) {
  if (k < 1 || 4 * k > p) throw InvalidInput("make_sigma2: need 1 <= 4k <= p");
  SymMatrix base(p);
  for (int j = 0; j < p; ++j) base.set(j, j, j < 4 * k ? 0.01 : 1.01);
  std::vector<SpikedModel::Spike> spikes;
  spikes.push_back({static_cast<double>(k), homogeneous_direction(p, 0, k)});
  spikes.push_back({0.99 * k, homogeneous_direction(p, k, 3 * k)});
  return SpikedModel::explicit_base(std::move(base), std::move(spikes));
}

SpikedModel make_intro_model() {
  constexpr int p = 400;
  SymMatrix base(p);
  for (int j = 0; j < p; ++j) base.set(j, j, j < 10 ? 0.01 : 1.01);
  std::vector<SpikedModel::Spike> spikes;
  spikes.push_back({10.0, homogeneous_direction(p, 0, 10)});
  spikes.push_back({8.9, homogeneous_direction(p, 10, 390)});
  return SpikedModel::explicit_base(std::move(base), std::move(spikes));
}

SpikedModel make_multi_spike(int p, const std::vector<std::vector<int>>& supports,
                             const std::vector<double>& thetas,
                             const std::vector<std::vector<int>>& signs,
                             bool relax_orthogonality) {
  if (supports.empty() || supports.size() != thetas.size())
    throw InvalidInput("make_multi_spike: supports/thetas size mismatch");
  if (!signs.empty() && signs.size() != supports.size())
    throw InvalidInput("make_multi_spike: signs size mismatch");

  std::vector<SpikedModel::Spike> spikes;
  for (std::size_t r = 0; r < supports.size(); ++r) {
    const auto& support = supports[r];
    if (support.empty())
      throw InvalidInput("make_multi_spike: empty support");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
      const int j = support[i];
      if (j < 0 || j >= p)
        throw InvalidInput("make_multi_spike: support index out of range");
      if (v[j] != 0.0)
        throw InvalidInput("make_multi_spike: duplicate support index");
      int sign = 1;
      if (!signs.empty()) {
        if (signs[r].size() != support.size())
          throw InvalidInput("make_multi_spike: sign pattern length mismatch");
        sign = signs[r][i];
        if (sign != 1 && sign != -1)
          throw InvalidInput("make_multi_spike: signs must be +1 or -1");
      }
      v[j] = sign * magnitude;
    }
    spikes.push_back({thetas[r], std::move(v)});
  }
  return SpikedModel::identity_base(p, std::move(spikes), relax_orthogonality);
}

GaussianSampler::GaussianSampler(const SpikedModel& model) {
  const SymMatrix sigma = model.covariance();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma.mat());
  if (solver.info() != Eigen::Success)
    throw InvalidInput("GaussianSampler: eigendecomposition failed");
  Eigen::VectorXd values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -1e-8)
      throw InvalidInput("GaussianSampler: covariance is not PSD");
    values[i] = std::max(values[i], 0.0);
  }
  sqrt_cov_ = solver.eigenvectors() * values.cwiseSqrt().asDiagonal() *
              solver.eigenvectors().transpose();
}

DataMatrix GaussianSampler::sample(Eigen::Index n, std::uint64_t seed,
                                   int threads) const {
  if (n < 1) throw InvalidInput("GaussianSampler: need n >= 1");
  const Eigen::Index p = sqrt_cov_.rows();
  Eigen::MatrixXd z(n, p);
  parallel_for(n, threads, [&](std::int64_t i) {
    RngStream stream(substream_seed(seed, static_cast<std::uint64_t>(i)));
    for (Eigen::Index j = 0; j < p; ++j) z(i, j) = stream.normal();
  });
  // Row i of the output is sqrt_cov * z_i; sqrt_cov is symmetric.
  return DataMatrix::create(z * sqrt_cov_);
}

DataMatrix sample_gaussian(const SpikedModel& model, Eigen::Index n,
                           std::uint64_t seed, int threads) {
  return GaussianSampler(model).sample(n, seed, threads);
}

}  // namespace spcavrp
