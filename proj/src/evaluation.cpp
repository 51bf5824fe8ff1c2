#include "spcavrp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spcavrp/errors.hpp"

namespace spcavrp {

double subspace_loss(const OrthonormalFrame& u, const OrthonormalFrame& v) {
  const Eigen::VectorXd sines = principal_angle_sines(u, v);
  return sines.norm();
}

SupportMetrics support_metrics(const std::vector<int>& estimated,
                               const std::vector<int>& truth) {
  if (truth.empty()) throw InvalidInput("support_metrics: empty true support");
  std::vector<int> est_sorted = estimated;
  std::vector<int> true_sorted = truth;
  std::sort(est_sorted.begin(), est_sorted.end());
  std::sort(true_sorted.begin(), true_sorted.end());
  std::vector<int> overlap;
  std::set_intersection(est_sorted.begin(), est_sorted.end(),
                        true_sorted.begin(), true_sorted.end(),
                        std::back_inserter(overlap));
  SupportMetrics out;
  out.recovery_rate =
      static_cast<double>(overlap.size()) / static_cast<double>(true_sorted.size());
  out.false_inclusions = static_cast<int>(est_sorted.size() - overlap.size());
  return out;
}

namespace {

void check_params(const HypergeomParams& params) {
  if (params.total < 0 || params.white < 0 || params.white > params.total ||
      params.draws < 0 || params.draws > params.total)
    throw InvalidInput("hypergeom: need 0 <= k <= p and 0 <= d <= p");
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double hypergeom_log_pmf(int x, const HypergeomParams& params) {
  check_params(params);
  const int lo = std::max(0, params.draws + params.white - params.total);
  const int hi = std::min(params.draws, params.white);
  if (x < lo || x > hi) return -std::numeric_limits<double>::infinity();
  return log_choose(params.white, x) +
         log_choose(params.total - params.white, params.draws - x) -
         log_choose(params.total, params.draws);
}

namespace {

// Pmf weights relative to the modal value, built by the exact ratio
//   w(x+1)/w(x) = (k-x)(d-x) / ((x+1)(p-k-d+x+1)).
// Anchoring at the mode keeps every weight in [0, 1], so nothing overflows,
// and the anchor constant cancels when tail masses are normalized by the
// weight total.
struct HypergeomWeights {
  int lo = 0;
  int hi = 0;
  std::vector<double> w;  // w[x - lo]

  explicit HypergeomWeights(const HypergeomParams& params) {
    const int d = params.draws;
    const int k = params.white;
    const int p = params.total;
    lo = std::max(0, d + k - p);
    hi = std::min(d, k);
    const int mode = std::clamp(
        static_cast<int>((static_cast<std::int64_t>(d) + 1) *
                         (static_cast<std::int64_t>(k) + 1) / (p + 2LL)),
        lo, hi);
    w.assign(static_cast<std::size_t>(hi - lo) + 1, 0.0);
    w[mode - lo] = 1.0;
    for (int x = mode; x < hi; ++x)
      w[x + 1 - lo] = w[x - lo] * (static_cast<double>(k - x) * (d - x)) /
                      (static_cast<double>(x + 1) * (p - k - d + x + 1));
    for (int x = mode; x > lo; --x)
      w[x - 1 - lo] = w[x - lo] * (static_cast<double>(x) * (p - k - d + x)) /
                      (static_cast<double>(k - x + 1) * (d - x + 1));
  }

  long double total() const {
    long double sum = 0.0L;
    for (double value : w) sum += value;
    return sum;
  }
};

}  // namespace

double hypergeom_cdf(int t, const HypergeomParams& params) {
  check_params(params);
  const HypergeomWeights weights(params);
  if (t < weights.lo) return 0.0;
  if (t >= weights.hi) return 1.0;

  // One ascending pass in extended precision; the prefix grows through the
  // same running sum as the total, so the cdf is nondecreasing in t and
  // never exceeds one.
  long double total = 0.0L;
  long double prefix = 0.0L;
  for (int x = weights.lo; x <= weights.hi; ++x) {
    total += weights.w[x - weights.lo];
    if (x == t) prefix = total;
  }
  return static_cast<double>(prefix / total);
}

double hypergeom_upper_tail(int t, const HypergeomParams& params) {
  check_params(params);
  const HypergeomWeights weights(params);
  if (t <= weights.lo) return 1.0;
  if (t > weights.hi) return 0.0;

  // Summed directly rather than as 1 - cdf(t-1): small tails would cancel
  // to noise under the subtraction. Terms accumulate from the far end so
  // the tiny ones are added first.
  long double suffix = 0.0L;
  for (int x = weights.hi; x >= t; --x) suffix += weights.w[x - weights.lo];
  return static_cast<double>(suffix / weights.total());
}

std::uint64_t choose_b(int t, int d, int k, int p) {
  if (k < 1 || t < 1 || t > k)
    throw InvalidInput("choose_b: need t in [1, k]");
  const HypergeomParams params{d, k, p};
  check_params(params);
  const double tail = hypergeom_upper_tail(t, params);
  if (tail <= 0.0)
    throw Unreachable("choose_b: t signal coordinates are unreachable for "
                      "these (d, k, p)");
  const double raw = 0.5 / tail;
  if (raw >= 1.8e19)
    throw TooLarge("choose_b: required group size exceeds 2^64");
  // A few ulps of slack so values that are exact integers are not bumped to
  // the next one by the last rounding.
  return static_cast<std::uint64_t>(std::ceil(raw * (1.0 - 16 * 2.3e-16)));
}

Incoherence incoherence(const Eigen::MatrixXd& v) {
  if (v.rows() < 1 || v.cols() < 1)
    throw InvalidInput("incoherence: empty matrix");
  Incoherence out;
  double min_norm = std::numeric_limits<double>::infinity();
  double max_norm = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double norm = v.row(i).norm();
    if (norm > 1e-12) {
      ++out.nonzero_rows;
      min_norm = std::min(min_norm, norm);
      max_norm = std::max(max_norm, norm);
    }
  }
  if (out.nonzero_rows == 0)
    throw InvalidInput("incoherence: all rows are zero");
  out.mu = max_norm / min_norm;
  return out;
}

VarCurve var_curve(const ImportanceScores& scores, const CovarianceSource& src,
                   const std::vector<int>& l_grid) {
  if (scores.w.size() != src.p())
    throw InvalidInput("var_curve: scores and covariance dimension mismatch");
  VarCurve out;
  out.l_grid = l_grid;
  for (int l : l_grid) {
    if (l < 1 || l > src.p())
      throw InvalidInput("var_curve: grid entry out of [1, p]");
    std::vector<int> support = top_l_support(scores, l);
    const AxisProjection s{support, static_cast<int>(src.p())};
    const EigenSystem eig = eig_top(src.projected_covariance(s), 1);
    out.values.push_back(eig.values[0]);
    out.supports.push_back(std::move(support));
  }
  return out;
}

SparsePcOracle brute_force_sparse_pc(const CovarianceSource& src, int k,
                                     std::uint64_t cap) {
  const int p = static_cast<int>(src.p());
  if (k < 1 || k > p) throw InvalidInput("brute_force_sparse_pc: k out of [1, p]");
  if (binomial_capped(p, k, cap) > cap)
    throw TooLarge("brute_force_sparse_pc: C(p, k) exceeds cap of " +
                   std::to_string(cap));

  // Own odometer over the k-subsets in lexicographic order, kept independent
  // of the enumeration used by the estimator's exhaustive mode.
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;

  SparsePcOracle best;
  bool have_best = false;
  Eigen::VectorXd best_local;
  std::vector<int> best_subset;
  while (true) {
    const AxisProjection s{subset, p};
    const EigenSystem eig = eig_top(src.projected_covariance(s), 1);
    if (!have_best || eig.values[0] > best.value) {
      have_best = true;
      best.value = eig.values[0];
      best_local = eig.vectors.col(0);
      best_subset = subset;
    }
    int i = k - 1;
    while (i >= 0 && subset[i] == p - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }

  best.support = best_subset;
  best.direction = Eigen::VectorXd::Zero(p);
  for (int local = 0; local < k; ++local)
    best.direction[best_subset[local]] = best_local[local];
  return best;
}

}  // namespace spcavrp
