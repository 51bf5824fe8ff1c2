#include "spcavrp/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "spcavrp/errors.hpp"

namespace spcavrp {

OrthonormalFrame vanilla_pca(const CovarianceSource& src, int m) {
  if (m < 1 || m > src.p())
    throw InvalidInput("vanilla_pca: need 1 <= m <= p");
  const EigenSystem eig = eig_top(src.full(), m);
  return OrthonormalFrame{eig.vectors};
}

DiagonalThresholdResult diagonal_threshold(const CovarianceSource& src, int k,
                                           int m) {
  const Eigen::Index p = src.p();
  if (k < 1 || k > p) throw InvalidInput("diagonal_threshold: need 1 <= k <= p");
  if (m < 1 || m > k) throw InvalidInput("diagonal_threshold: need 1 <= m <= k");

  const Eigen::VectorXd diag = src.diagonal();
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return diag[a] > diag[b]; });
  std::vector<int> support(order.begin(), order.begin() + k);
  std::sort(support.begin(), support.end());

  const AxisProjection s{support, static_cast<int>(p)};
  const EigenSystem eig = eig_top(src.projected_covariance(s), m);
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(p, m);
  for (int local = 0; local < k; ++local)
    frame.row(support[local]) = eig.vectors.row(local);
  return DiagonalThresholdResult{std::move(support),
                                 OrthonormalFrame{std::move(frame)}};
}

}  // namespace spcavrp
