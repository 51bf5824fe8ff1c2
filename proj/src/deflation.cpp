#include "spcavrp/deflation.hpp"

#include <cmath>

#include "spcavrp/errors.hpp"

namespace spcavrp {

void DeflationConfig::validate(Eigen::Index p) const {
  if (sparsity.empty())
    throw InvalidInput("DeflationConfig: need at least one sparsity level");
  if (group_count < 1 || group_size < 1)
    throw InvalidInput("DeflationConfig: need A >= 1 and B >= 1");
  if (projection_dim < 1 || projection_dim > p)
    throw InvalidInput("DeflationConfig: need 1 <= d <= p");
  for (int l : sparsity)
    if (l < 1 || l > p)
      throw InvalidInput("DeflationConfig: each l_r must be in [1, p]");
  if (threads < 1) throw InvalidInput("DeflationConfig: need threads >= 1");
}

namespace {

SpcavrpConfig single_component_config(const DeflationConfig& cfg, int step) {
  SpcavrpConfig out;
  out.group_count = cfg.group_count;
  out.group_size = cfg.group_size;
  out.projection_dim = cfg.projection_dim;
  out.sparsity = cfg.sparsity[step];
  out.components = 1;
  out.seed = substream_seed(cfg.seed, static_cast<std::uint64_t>(step));
  out.strategy = cfg.strategy;
  out.exhaustive = cfg.exhaustive;
  out.threads = cfg.threads;
  return out;
}

}  // namespace

DeflationResult deflate_fit(const DataMatrix& x, const DeflationConfig& cfg) {
  cfg.validate(x.p());
  const Eigen::Index p = x.p();
  const int m = cfg.components();

  const DataMatrix working = cfg.center ? center_columns(x) : x;
  const CovarianceSource original = CovarianceSource::from_data(
      working, cfg.strategy, cfg.group_count, cfg.group_size,
      cfg.projection_dim, cfg.center);

  DeflationResult result;
  result.components = Eigen::MatrixXd::Zero(p, m);
  result.pilot_directions = Eigen::MatrixXd::Zero(p, m);
  result.eigenvalues.resize(m);
  result.supports.resize(m);

  const Estimate first = fit_source(original, single_component_config(cfg, 0));
  result.components.col(0) = first.vectors.cols.col(0);
  result.pilot_directions.col(0) = first.vectors.cols.col(0);
  result.eigenvalues[0] = first.eigenvalues[0];
  result.supports[0] = first.support;

  for (int r = 1; r < m; ++r) {
    const auto previous = result.components.leftCols(r);

    // Pilot estimate on the deflated data H_r x_i, where H_r projects onto
    // the orthogonal complement of the previous components. The components
    // are orthonormal, so H_r x = x - V (V^T x).
    Eigen::MatrixXd deflated = working.rows;
    deflated -= (working.rows * previous) * previous.transpose();
    const DataMatrix deflated_data{std::move(deflated)};
    const CovarianceSource deflated_src = CovarianceSource::from_data(
        deflated_data, cfg.strategy, cfg.group_count, cfg.group_size,
        cfg.projection_dim);
    const Estimate pilot =
        fit_source(deflated_src, single_component_config(cfg, r));
    result.pilot_directions.col(r) = pilot.vectors.cols.col(0);

    // S~_r: the nonzero pattern of the pilot direction.
    std::vector<int> support;
    for (Eigen::Index j = 0; j < p; ++j)
      if (pilot.vectors.cols(j, 0) != 0.0)
        support.push_back(static_cast<int>(j));
    if (support.empty())
      throw DegenerateDeflation(
          r + 1, "deflate_fit: pilot direction vanished at step " +
                     std::to_string(r + 1));
    result.supports[r] = support;

    // Restricted eigenproblem: leading eigenvector of H P Sigma P H with
    // H = Proj-perp(P_S V_{r-1}), all expressed in the coordinates of S.
    const AxisProjection s{support, static_cast<int>(p)};
    const auto s_dim = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd previous_on_s(s_dim, r);
    for (Eigen::Index local = 0; local < s_dim; ++local)
      previous_on_s.row(local) = previous.row(support[local]);
    const Eigen::MatrixXd basis = orthonormal_basis(previous_on_s);

    const SymMatrix sigma_s = original.projected_covariance(s);
    Eigen::MatrixXd reduced = sigma_s.mat();
    if (basis.cols() > 0) {
      const Eigen::MatrixXd h =
          Eigen::MatrixXd::Identity(s_dim, s_dim) - basis * basis.transpose();
      reduced = h * reduced * h;
    }
    const EigenSystem eig = eig_top(SymMatrix::from_upper(reduced), 1);
    if (eig.values[0] <= 1e-12)
      throw DegenerateDeflation(
          r + 1,
          "deflate_fit: deflated submatrix has no positive leading "
          "eigenvalue at step " +
              std::to_string(r + 1));

    // Re-project the eigenvector onto the complement of the previous
    // components (twice) so the orthogonality holds to machine precision,
    // then renormalize.
    Eigen::VectorXd direction = eig.vectors.col(0);
    for (int pass = 0; pass < 2; ++pass)
      if (basis.cols() > 0)
        direction -= basis * (basis.transpose() * direction);
    const double norm = direction.norm();
    if (norm <= 1e-6)
      throw DegenerateDeflation(
          r + 1, "deflate_fit: eigenvector collapsed under re-projection at "
                 "step " +
                     std::to_string(r + 1));
    direction /= norm;
    canonicalize_sign(direction);

    for (Eigen::Index local = 0; local < s_dim; ++local)
      result.components(support[local], r) = direction[local];
    result.eigenvalues[r] = eig.values[0];
  }

  return result;
}

}  // namespace spcavrp
