#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace spcavrp {

/// Dense real symmetric matrix. Symmetry holds exactly as stored: every
/// construction path writes the upper triangle and mirrors it, so
/// m(i,j) == m(j,i) bit for bit.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::Index dim);

  /// Build from the upper triangle (incl. diagonal) of `any`; the lower
  /// triangle of the argument is ignored.
  static SymMatrix from_upper(const Eigen::MatrixXd& any);

  Eigen::Index dim() const { return mat_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

  /// Write entry (i, j) and its mirror (j, i).
  void set(Eigen::Index i, Eigen::Index j, double value);

  const Eigen::MatrixXd& mat() const { return mat_; }

  /// Principal submatrix on the (sorted, in-range) index set.
  SymMatrix submatrix(std::span<const int> indices) const;

 private:
  Eigen::MatrixXd mat_;
};

/// Top-r eigenpairs of a symmetric matrix, eigenvalues nonincreasing,
/// eigenvectors orthonormal and sign-canonicalized.
struct EigenSystem {
  Eigen::VectorXd values;   // length r, nonincreasing
  Eigen::MatrixXd vectors;  // dim x r, orthonormal columns
};

/// p x m matrix with orthonormal columns.
struct OrthonormalFrame {
  Eigen::MatrixXd cols;

  Eigen::Index rows() const { return cols.rows(); }
  Eigen::Index width() const { return cols.cols(); }

  /// Validating factory: requires |U^T U - I|_max <= 1e-10.
  static OrthonormalFrame adopt(Eigen::MatrixXd u);
};

/// Flip the sign of v, if needed, so that its component of largest absolute
/// value is positive (ties broken by smallest index). Identity on the zero
/// vector.
void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v);

/// The r algebraically largest eigenvalues of M with orthonormal,
/// sign-canonicalized eigenvectors. Throws InvalidInput on non-finite
/// entries or r out of range.
EigenSystem eig_top(const SymMatrix& m, Eigen::Index r);

/// I_p - V (V^T V)^{-1} V^T for full-column-rank V; I_p when V is
/// numerically zero (max |entry| <= 1e-12). Throws RankDeficient when V is
/// nonzero but rank-deficient (pivot threshold 1e-10).
SymMatrix proj_orth_complement(const Eigen::MatrixXd& v);

/// Projector onto the orthogonal complement of span(V), valid for any rank;
/// directions with negligible pivots are simply absorbed into the span.
/// Used where a rank-deficient V is legitimate (deflation with partially
/// overlapping supports).
SymMatrix proj_orth_complement_span(const Eigen::MatrixXd& v);

/// Orthonormal basis of span(V) via column-pivoted QR; empty (p x 0) when V
/// is numerically zero.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& v);

/// sin(arccos sigma_j) for the singular values sigma_j of U^T V, clamped to
/// [0, 1], in the principal-angle order (sigma nonincreasing). Frames must
/// have identical shapes.
Eigen::VectorXd principal_angle_sines(const OrthonormalFrame& u,
                                      const OrthonormalFrame& v);

}  // namespace spcavrp
