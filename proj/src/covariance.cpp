#include "spcavrp/covariance.hpp"

#include "spcavrp/errors.hpp"

namespace spcavrp {

DataMatrix DataMatrix::create(Eigen::MatrixXd values) {
  if (values.rows() < 1 || values.cols() < 1)
    throw InvalidInput("DataMatrix: need n >= 1 and p >= 1");
  if (!values.allFinite())
    throw InvalidInput("DataMatrix: non-finite entries");
  return DataMatrix{std::move(values)};
}

DataMatrix center_columns(const DataMatrix& x) {
  Eigen::MatrixXd centered = x.rows;
  const Eigen::RowVectorXd means = centered.colwise().mean();
  centered.rowwise() -= means;
  return DataMatrix{std::move(centered)};
}

SymMatrix sample_covariance(const DataMatrix& x) {
  const double inv_n = 1.0 / static_cast<double>(x.n());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(x.p(), x.p());
  gram.selfadjointView<Eigen::Upper>().rankUpdate(x.rows.transpose(), inv_n);
  return SymMatrix::from_upper(gram);
}

CovStrategy choose_strategy(Eigen::Index n, Eigen::Index p, int group_count,
                            int group_size, int d) {
  if (n < 1 || p < 1 || group_count < 1 || group_size < 1 || d < 1)
    throw InvalidInput("choose_strategy: all parameters must be positive");
  if (d == p) return CovStrategy::Precomputed;
  const long double ab = static_cast<long double>(group_count) *
                         static_cast<long double>(group_size);
  const long double d2 = static_cast<long double>(d) * d;
  const long double full_cost =
      static_cast<long double>(n) * p * p + ab * d2;
  const long double per_projection_cost = ab * static_cast<long double>(n) * d2;
  return full_cost <= per_projection_cost ? CovStrategy::Precomputed
                                          : CovStrategy::OnDemand;
}

CovarianceSource CovarianceSource::precomputed(SymMatrix sigma, bool centered) {
  const Eigen::Index p = sigma.dim();
  if (!sigma.mat().allFinite())
    throw InvalidInput("CovarianceSource: non-finite covariance entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      sigma.mat(), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()[0] < -1e-8)
    throw InvalidInput("CovarianceSource: matrix is not positive semidefinite");
  CovarianceSource out;
  out.p_ = p;
  out.centered_ = centered;
  out.sigma_ = std::move(sigma);
  return out;
}

CovarianceSource CovarianceSource::precomputed_from_data(const DataMatrix& x,
                                                         bool centered) {
  CovarianceSource out;
  out.p_ = x.p();
  out.centered_ = centered;
  out.sigma_ = sample_covariance(x);
  return out;
}

CovarianceSource CovarianceSource::on_demand(const DataMatrix& x,
                                             bool centered) {
  CovarianceSource out;
  out.p_ = x.p();
  out.centered_ = centered;
  out.data_ = &x;
  return out;
}

CovarianceSource CovarianceSource::from_data(const DataMatrix& x,
                                             CovStrategy strategy,
                                             int group_count, int group_size,
                                             int d, bool centered) {
  if (strategy == CovStrategy::Auto)
    strategy = choose_strategy(x.n(), x.p(), group_count, group_size, d);
  return strategy == CovStrategy::Precomputed
             ? precomputed_from_data(x, centered)
             : on_demand(x, centered);
}

SymMatrix CovarianceSource::projected_covariance(const AxisProjection& s) const {
  if (s.ambient_dim != p_)
    throw InvalidInput("projected_covariance: projection has wrong ambient dim");
  for (int idx : s.indices)
    if (idx < 0 || idx >= p_)
      throw InvalidInput("projected_covariance: index out of range");

  if (data_ == nullptr) return sigma_.submatrix(s.indices);

  const Eigen::Index d = s.size();
  const double inv_n = 1.0 / static_cast<double>(data_->n());
  Eigen::MatrixXd sub(data_->n(), d);
  for (Eigen::Index j = 0; j < d; ++j) sub.col(j) = data_->rows.col(s.indices[j]);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  gram.selfadjointView<Eigen::Upper>().rankUpdate(sub.transpose(), inv_n);
  return SymMatrix::from_upper(gram);
}

SymMatrix CovarianceSource::full() const {
  if (data_ == nullptr) return sigma_;
  return sample_covariance(*data_);
}

Eigen::VectorXd CovarianceSource::diagonal() const {
  if (data_ == nullptr) return sigma_.mat().diagonal();
  return (data_->rows.colwise().squaredNorm() /
          static_cast<double>(data_->n()))
      .transpose();
}

}  // namespace spcavrp
