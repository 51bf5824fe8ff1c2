#include "spcavrp/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "spcavrp/errors.hpp"

namespace spcavrp {

namespace {
constexpr double kZeroMatrixTol = 1e-12;
constexpr double kRankPivotTol = 1e-10;
}  // namespace

SymMatrix::SymMatrix(Eigen::Index dim) {
  if (dim < 1) throw InvalidInput("SymMatrix: dim must be >= 1");
  mat_ = Eigen::MatrixXd::Zero(dim, dim);
}

SymMatrix SymMatrix::from_upper(const Eigen::MatrixXd& any) {
  if (any.rows() != any.cols())
    throw InvalidInput("SymMatrix::from_upper: matrix must be square");
  SymMatrix out(any.rows());
  for (Eigen::Index j = 0; j < any.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i) out.set(i, j, any(i, j));
  return out;
}

void SymMatrix::set(Eigen::Index i, Eigen::Index j, double value) {
  mat_(i, j) = value;
  mat_(j, i) = value;
}

SymMatrix SymMatrix::submatrix(std::span<const int> indices) const {
  SymMatrix out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i)
      out.set(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j),
              mat_(indices[i], indices[j]));
  return out;
}

OrthonormalFrame OrthonormalFrame::adopt(Eigen::MatrixXd u) {
  const Eigen::Index m = u.cols();
  const Eigen::MatrixXd gram = u.transpose() * u;
  const double err =
      (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10))
    throw InvalidInput("OrthonormalFrame: columns not orthonormal");
  return OrthonormalFrame{std::move(u)};
}

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index best = 0;
  double best_abs = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (v[best] < 0.0) v = -v;
}

EigenSystem eig_top(const SymMatrix& m, Eigen::Index r) {
  const Eigen::Index p = m.dim();
  if (r < 1 || r > p) throw InvalidInput("eig_top: r out of range");
  if (!m.mat().allFinite()) throw InvalidInput("eig_top: non-finite entries");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.mat());
  if (solver.info() != Eigen::Success)
    throw InvalidInput("eig_top: eigendecomposition failed");

  // Eigen returns eigenvalues in increasing order; take the last r, reversed.
  EigenSystem out;
  out.values.resize(r);
  out.vectors.resize(p, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    out.values[i] = solver.eigenvalues()[p - 1 - i];
    out.vectors.col(i) = solver.eigenvectors().col(p - 1 - i);
    canonicalize_sign(out.vectors.col(i));
  }
  return out;
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& v) {
  const Eigen::Index p = v.rows();
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() <= kZeroMatrixTol)
    return Eigen::MatrixXd(p, 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(kZeroMatrixTol);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(p, rank);
  return q;
}

namespace {

SymMatrix complement_projector(const Eigen::MatrixXd& basis, Eigen::Index p) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(p, p);
  if (basis.cols() > 0) h -= basis * basis.transpose();
  // Symmetrize exactly: the product above is symmetric only to rounding.
  SymMatrix out(p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) out.set(i, j, 0.5 * (h(i, j) + h(j, i)));
  return out;
}

}  // namespace

SymMatrix proj_orth_complement(const Eigen::MatrixXd& v) {
  const Eigen::Index p = v.rows();
  if (p < 1) throw InvalidInput("proj_orth_complement: empty matrix");
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() <= kZeroMatrixTol)
    return complement_projector(Eigen::MatrixXd(p, 0), p);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(kRankPivotTol);
  if (qr.rank() < v.cols())
    throw RankDeficient("proj_orth_complement: V is column-rank-deficient");
  Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(p, v.cols());
  return complement_projector(q, p);
}

SymMatrix proj_orth_complement_span(const Eigen::MatrixXd& v) {
  const Eigen::Index p = v.rows();
  if (p < 1) throw InvalidInput("proj_orth_complement_span: empty matrix");
  return complement_projector(orthonormal_basis(v), p);
}

Eigen::VectorXd principal_angle_sines(const OrthonormalFrame& u,
                                      const OrthonormalFrame& v) {
  if (u.rows() != v.rows() || u.width() != v.width())
    throw InvalidInput("principal_angle_sines: shape mismatch");
  // sin(arccos sigma_j) for the singular values sigma_j of U^T V, computed
  // through the residual (I - U U^T) V whose singular values are the sines
  // directly; sqrt(1 - sigma^2) would lose half the digits at small angles.
  const Eigen::MatrixXd residual =
      v.cols - u.cols * (u.cols.transpose() * v.cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  const Eigen::Index m = u.width();
  Eigen::VectorXd sines(m);
  // Reverse so entry j matches the jth principal angle (sigma nonincreasing,
  // sines nondecreasing).
  for (Eigen::Index j = 0; j < m; ++j)
    sines[j] = std::clamp(svd.singularValues()[m - 1 - j], 0.0, 1.0);
  return sines;
}

}  // namespace spcavrp
