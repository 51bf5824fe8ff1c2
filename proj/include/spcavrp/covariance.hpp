#pragma once

#include <Eigen/Dense>

#include "spcavrp/linalg.hpp"
#include "spcavrp/projections.hpp"

namespace spcavrp {

/// n x p observation matrix, rows are observations. Entries are validated
/// finite at construction.
struct DataMatrix {
  Eigen::MatrixXd rows;

  Eigen::Index n() const { return rows.rows(); }
  Eigen::Index p() const { return rows.cols(); }

  static DataMatrix create(Eigen::MatrixXd values);
};

/// Subtract the column mean from every column.
DataMatrix center_columns(const DataMatrix& x);

/// n^{-1} sum_i x_i x_i^T. Divisor n, no mean subtraction; centering is a
/// separate explicit step.
SymMatrix sample_covariance(const DataMatrix& x);

enum class CovStrategy { Auto, Precomputed, OnDemand };

/// Precomputed iff the full-matrix route n p^2 + A B d^2 is no more
/// expensive than the per-projection route A B n d^2; d == p short-circuits
/// to Precomputed since both routes then compute the same matrix.
CovStrategy choose_strategy(Eigen::Index n, Eigen::Index p, int group_count,
                            int group_size, int d);

/// Access to principal submatrices of the sample covariance, either from a
/// precomputed p x p matrix or recomputed per projection from the data.
/// Read-only after construction; safe for concurrent projected-covariance
/// calls. OnDemand keeps a reference to the data, which must outlive the
/// source.
class CovarianceSource {
 public:
  /// Precomputed mode from an explicit matrix. Validates positive
  /// semidefiniteness (smallest eigenvalue >= -1e-8).
  static CovarianceSource precomputed(SymMatrix sigma, bool centered = false);

  /// Precomputed mode, materializing the covariance of x now.
  static CovarianceSource precomputed_from_data(const DataMatrix& x,
                                                bool centered = false);

  /// OnDemand mode over x (no caching).
  static CovarianceSource on_demand(const DataMatrix& x, bool centered = false);

  /// Dispatch on the cost model of choose_strategy (or the forced mode).
  static CovarianceSource from_data(const DataMatrix& x, CovStrategy strategy,
                                    int group_count, int group_size, int d,
                                    bool centered = false);

  Eigen::Index p() const { return p_; }
  bool centered() const { return centered_; }
  bool is_precomputed() const { return data_ == nullptr; }

  /// Sigma-hat^(S,S). The two modes agree entrywise to 1e-10.
  SymMatrix projected_covariance(const AxisProjection& s) const;

  /// The full p x p sample covariance (materialized on demand).
  SymMatrix full() const;

  /// diag(Sigma-hat) without materializing the full matrix.
  Eigen::VectorXd diagonal() const;

 private:
  CovarianceSource() = default;

  Eigen::Index p_ = 0;
  bool centered_ = false;
  SymMatrix sigma_{1};            // valid iff data_ == nullptr
  const DataMatrix* data_ = nullptr;
};

}  // namespace spcavrp
