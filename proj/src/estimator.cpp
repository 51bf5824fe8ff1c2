#include "spcavrp/estimator.hpp"

#include <algorithm>
#include <numeric>

#include "spcavrp/errors.hpp"
#include "spcavrp/parallel.hpp"

namespace spcavrp {

void SpcavrpConfig::validate(Eigen::Index p) const {
  if (group_count < 1 || group_size < 1)
    throw InvalidInput("SpcavrpConfig: need A >= 1 and B >= 1");
  if (projection_dim < 1 || projection_dim > p)
    throw InvalidInput("SpcavrpConfig: need 1 <= d <= p");
  if (sparsity < 1 || sparsity > p)
    throw InvalidInput("SpcavrpConfig: need 1 <= l <= p");
  if (components < 1 || components > projection_dim)
    throw InvalidInput("SpcavrpConfig: need 1 <= m <= d");
  if (sparsity < components)
    throw InvalidInput("SpcavrpConfig: need l >= m");
  if (threads < 1) throw InvalidInput("SpcavrpConfig: need threads >= 1");
}

namespace {

// Top min(m+1, d) eigenpairs of the submatrix, padded with the
// lambda_{d+1} := 0 convention when m == d. Returns m+1 eigenvalues and the
// first m eigenvectors.
void submatrix_eigs(const CovarianceSource& src, const AxisProjection& s,
                    int m, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const int d = s.size();
  const int r = std::min(m + 1, d);
  const EigenSystem eig = eig_top(src.projected_covariance(s), r);
  values.resize(m + 1);
  values.head(r) = eig.values;
  for (int i = r; i <= m; ++i) values[i] = 0.0;
  vectors = eig.vectors.leftCols(m);
}

double eigsum(const Eigen::VectorXd& values, int m) {
  return values.head(m).sum();
}

struct ExhaustiveSelection {
  double eigsum = 0.0;
  bool valid = false;
  GroupSelection selection;
};

// One pass over all C(p, d) subsets, keeping the global smallest
// lexicographic maximizer; chunked over workers with an ordered merge so the
// result is thread-count independent.
GroupSelection select_exhaustive(const CovarianceSource& src, int d,
                                 int components, int threads) {
  const int p = static_cast<int>(src.p());
  const std::uint64_t total = binomial_capped(p, d, kDefaultEnumerationCap);
  if (total > kDefaultEnumerationCap)
    throw TooLarge("fit: exhaustive mode needs C(p, d) <= 1e6");

  const int chunks = std::max(1, std::min<int>(threads, 64));
  const std::uint64_t chunk_len = (total + chunks - 1) / chunks;
  std::vector<ExhaustiveSelection> best(chunks);

  parallel_for(chunks, threads, [&](std::int64_t c) {
    SubsetEnumerator it(p, d);
    std::vector<int> subset;
    std::uint64_t index = 0;
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_len;
    const std::uint64_t hi = std::min(total, lo + chunk_len);
    ExhaustiveSelection& slot = best[c];
    while (index < hi && it.next(subset)) {
      if (index >= lo) {
        AxisProjection proj{subset, p};
        Eigen::VectorXd values;
        Eigen::MatrixXd vectors;
        submatrix_eigs(src, proj, components, values, vectors);
        const double sum = eigsum(values, components);
        if (!slot.valid || sum > slot.eigsum) {
          slot.valid = true;
          slot.eigsum = sum;
          slot.selection.eigenvalues = std::move(values);
          slot.selection.eigenvectors = std::move(vectors);
          slot.selection.support = std::move(proj);
        }
      }
      ++index;
    }
  });

  // Ordered merge keeps the lexicographically smallest maximizer.
  ExhaustiveSelection winner;
  for (const auto& cand : best) {
    if (!cand.valid) continue;
    if (!winner.valid || cand.eigsum > winner.eigsum) winner = cand;
  }
  winner.selection.group = 0;
  winner.selection.selected = 0;
  return winner.selection;
}

}  // namespace

GroupSelection select_in_group(const CovarianceSource& src,
                               std::vector<AxisProjection> group,
                               int components) {
  if (group.empty()) throw InvalidInput("select_in_group: empty group");
  GroupSelection out;
  double best_sum = 0.0;
  for (std::size_t b = 0; b < group.size(); ++b) {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    submatrix_eigs(src, group[b], components, values, vectors);
    const double sum = eigsum(values, components);
    if (b == 0 || sum > best_sum) {
      best_sum = sum;
      out.selected = static_cast<int>(b);
      out.eigenvalues = std::move(values);
      out.eigenvectors = std::move(vectors);
      out.support = std::move(group[b]);
    }
  }
  return out;
}

ImportanceScores accumulate_scores(const std::vector<GroupSelection>& selections,
                                   int components, Eigen::Index p) {
  if (selections.empty())
    throw InvalidInput("accumulate_scores: no selections");
  ImportanceScores scores;
  scores.w = Eigen::VectorXd::Zero(p);
  const double inv_a = 1.0 / static_cast<double>(selections.size());
  for (const GroupSelection& sel : selections) {
    const double tail = sel.eigenvalues[components];
    for (int r = 0; r < components; ++r) {
      const double weight = sel.eigenvalues[r] - tail;
      for (int local = 0; local < sel.support.size(); ++local) {
        const double component = sel.eigenvectors(local, r);
        scores.w[sel.support.indices[local]] +=
            inv_a * weight * component * component;
      }
    }
  }
  return scores;
}

std::vector<int> top_l_support(const ImportanceScores& scores, int l) {
  const Eigen::Index p = scores.w.size();
  if (l < 0 || l > p) throw InvalidInput("top_l_support: need 0 <= l <= p");
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores.w[a] > scores.w[b];
  });
  std::vector<int> support(order.begin(), order.begin() + l);
  std::sort(support.begin(), support.end());
  return support;
}

Estimate fit_source(const CovarianceSource& src, const SpcavrpConfig& cfg) {
  const Eigen::Index p = src.p();
  cfg.validate(p);
  const int m = cfg.components;

  std::vector<GroupSelection> selections;
  if (cfg.exhaustive) {
    selections.push_back(
        select_exhaustive(src, cfg.projection_dim, m, cfg.threads));
  } else {
    const ProjectionGrid grid =
        sample_grid(static_cast<int>(p), cfg.projection_dim, cfg.group_count,
                    cfg.group_size, cfg.seed, cfg.threads);
    selections.resize(cfg.group_count);
    parallel_for(cfg.group_count, cfg.threads, [&](std::int64_t a) {
      std::vector<AxisProjection> group(
          grid.cells.begin() + a * cfg.group_size,
          grid.cells.begin() + (a + 1) * cfg.group_size);
      selections[a] = select_in_group(src, std::move(group), m);
      selections[a].group = static_cast<int>(a);
    });
  }

  Estimate est;
  est.scores = accumulate_scores(selections, m, p);
  est.group_eigsums.reserve(selections.size());
  for (const auto& sel : selections)
    est.group_eigsums.push_back(eigsum(sel.eigenvalues, m));

  est.support = top_l_support(est.scores, cfg.sparsity);
  int positive = 0;
  for (double w : est.scores.w)
    if (w > 0.0) ++positive;
  est.sparse_scores = positive < cfg.sparsity;

  // Final eigenproblem on the restricted covariance, embedded back into R^p.
  AxisProjection s_hat{est.support, static_cast<int>(p)};
  const EigenSystem final_eig =
      eig_top(src.projected_covariance(s_hat), m);
  Eigen::MatrixXd embedded = Eigen::MatrixXd::Zero(p, m);
  for (int local = 0; local < s_hat.size(); ++local)
    embedded.row(s_hat.indices[local]) = final_eig.vectors.row(local);
  est.vectors = OrthonormalFrame{std::move(embedded)};
  est.eigenvalues = final_eig.values;
  return est;
}

Estimate fit(const DataMatrix& x, const SpcavrpConfig& cfg) {
  cfg.validate(x.p());
  if (cfg.center) {
    const DataMatrix centered = center_columns(x);
    const CovarianceSource src = CovarianceSource::from_data(
        centered, cfg.strategy, cfg.group_count, cfg.group_size,
        cfg.projection_dim, /*centered=*/true);
    return fit_source(src, cfg);
  }
  const CovarianceSource src =
      CovarianceSource::from_data(x, cfg.strategy, cfg.group_count,
                                  cfg.group_size, cfg.projection_dim);
  return fit_source(src, cfg);
}

}  // namespace spcavrp
