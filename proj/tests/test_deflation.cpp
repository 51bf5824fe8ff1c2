#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"
#include "spcavrp/deflation.hpp"
#include "spcavrp/errors.hpp"
#include "spcavrp/evaluation.hpp"
#include "spcavrp/models.hpp"
#include "testsupport.hpp"

using namespace spcavrp;

namespace {

DataMatrix diagonal_data(const std::vector<double>& values) {
  const auto p = static_cast<Eigen::Index>(values.size());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j)
    x(j, j) = std::sqrt(static_cast<double>(p) * values[j]);
  return DataMatrix::create(x);
}

}  // namespace

TEST_CASE("one component reduces to the plain estimator") {
  RngStream rng(3);
  const SpikedModel model = make_single_spike(12, 3, 4.0, SpikeProfile::Homogeneous);
  const DataMatrix x = GaussianSampler(model).sample(60, 17);

  DeflationConfig dcfg;
  dcfg.group_count = 20;
  dcfg.group_size = 5;
  dcfg.projection_dim = 3;
  dcfg.sparsity = {3};
  dcfg.seed = 99;
  const DeflationResult deflated = deflate_fit(x, dcfg);

  SpcavrpConfig cfg;
  cfg.group_count = 20;
  cfg.group_size = 5;
  cfg.projection_dim = 3;
  cfg.sparsity = 3;
  cfg.components = 1;
  cfg.seed = substream_seed(99, 0);  // the per-step stream of component 1
  const Estimate single = fit(x, cfg);

  CHECK((deflated.components.col(0) - single.vectors.cols.col(0))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("diagonal covariance peels off coordinates in order") {
  const DataMatrix x = diagonal_data({3.0, 2.0, 1.0, 0.5});
  DeflationConfig cfg;
  cfg.exhaustive = true;
  cfg.projection_dim = 1;
  cfg.sparsity = {1, 1};
  const DeflationResult result = deflate_fit(x, cfg);
  CHECK(result.components(0, 0) == doctest::Approx(1.0));
  CHECK(result.components(1, 1) == doctest::Approx(1.0));
  CHECK(result.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(result.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(std::abs(result.components.col(0).dot(result.components.col(1))) <=
        1e-15);
}

TEST_CASE("rank-one data degenerates at the second component") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 3);
  x(0, 0) = 1.0;
  x(1, 0) = 1.0;
  DeflationConfig cfg;
  cfg.exhaustive = true;
  cfg.projection_dim = 1;
  cfg.sparsity = {1, 1};
  CHECK_THROWS_AS(deflate_fit(DataMatrix::create(x), cfg),
                  DegenerateDeflation);
}

TEST_CASE("two disjoint spikes at desk scale" * doctest::timeout(300)) {
  // theta = (50, 30) on supports {0..13} and {14..27}, p = 200, n = 150.
  std::vector<std::vector<int>> supports(2);
  for (int j = 0; j < 14; ++j) supports[0].push_back(j);
  for (int j = 14; j < 28; ++j) supports[1].push_back(j);
  const SpikedModel model = make_multi_spike(200, supports, {50.0, 30.0});
  const OrthonormalFrame truth = model.leading_directions(2);

  DeflationConfig cfg;
  cfg.group_count = 300;
  cfg.group_size = 150;
  cfg.projection_dim = 14;
  cfg.sparsity = {14, 14};
  cfg.threads = 4;

  const int reps = 8;
  double total_loss = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    const DataMatrix x =
        GaussianSampler(model).sample(150, substream_seed(4242, rep), 4);
    cfg.seed = substream_seed(777, rep);
    const DeflationResult result = deflate_fit(x, cfg);
    CHECK(std::abs(result.components.col(0).dot(result.components.col(1))) <=
          1e-10);
    total_loss += subspace_loss(OrthonormalFrame{result.components}, truth);
  }
  CHECK(total_loss / reps <= 0.15);
}

TEST_CASE("deflation property suite") {
  const auto failures = spcavrp::testing::prop_deflation(2028, 100);
  for (const auto& f : failures) MESSAGE(f);
  CHECK(failures.empty());
}
