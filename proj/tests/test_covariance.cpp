#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "properties.hpp"
#include "spcavrp/covariance.hpp"
#include "spcavrp/errors.hpp"
#include "testsupport.hpp"

using namespace spcavrp;

TEST_CASE("centering") {
  SUBCASE("a single row becomes zero") {
    Eigen::MatrixXd x(1, 3);
    x << 4.0, -1.0, 2.5;
    const DataMatrix centered = center_columns(DataMatrix::create(x));
    CHECK(centered.rows.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("already-centered data is unchanged") {
    Eigen::MatrixXd x(2, 2);
    x << 1.0, -2.0, -1.0, 2.0;
    const DataMatrix centered = center_columns(DataMatrix::create(x));
    CHECK((centered.rows - x).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("column means are subtracted") {
    Eigen::MatrixXd x(2, 2);
    x << 1.0, 2.0, 3.0, 4.0;
    const DataMatrix centered = center_columns(DataMatrix::create(x));
    Eigen::MatrixXd expected(2, 2);
    expected << -1.0, -1.0, 1.0, 1.0;
    CHECK((centered.rows - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("sample covariance uses divisor n and no mean subtraction") {
  SUBCASE("single row outer product") {
    Eigen::MatrixXd x(1, 2);
    x << 1.0, 2.0;
    const SymMatrix cov = sample_covariance(DataMatrix::create(x));
    CHECK(cov(0, 0) == doctest::Approx(1.0));
    CHECK(cov(0, 1) == doctest::Approx(2.0));
    CHECK(cov(1, 1) == doctest::Approx(4.0));
  }
  SUBCASE("average of basis outer products") {
    const SymMatrix cov =
        sample_covariance(DataMatrix::create(Eigen::MatrixXd::Identity(2, 2)));
    CHECK(cov(0, 0) == doctest::Approx(0.5));
    CHECK(cov(1, 1) == doctest::Approx(0.5));
    CHECK(cov(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("homogeneity of degree two") {
    RngStream rng(5);
    const Eigen::MatrixXd x = testing::random_matrix(rng, 6, 4);
    const SymMatrix base = sample_covariance(DataMatrix::create(x));
    const SymMatrix scaled = sample_covariance(DataMatrix::create(3.0 * x));
    CHECK((scaled.mat() - 9.0 * base.mat()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("projected covariance agrees across modes and with the submatrix") {
  RngStream rng(11);
  const DataMatrix x = DataMatrix::create(testing::random_matrix(rng, 8, 5));
  const CovarianceSource pre = CovarianceSource::precomputed_from_data(x);
  const CovarianceSource lazy = CovarianceSource::on_demand(x);

  SUBCASE("the full index set gives the covariance itself") {
    const AxisProjection all{{0, 1, 2, 3, 4}, 5};
    const SymMatrix full = sample_covariance(x);
    CHECK((pre.projected_covariance(all).mat() - full.mat())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    CHECK((lazy.projected_covariance(all).mat() - full.mat())
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
  SUBCASE("singleton sets give the diagonal entry") {
    const AxisProjection s{{3}, 5};
    const SymMatrix full = sample_covariance(x);
    CHECK(pre.projected_covariance(s)(0, 0) == doctest::Approx(full(3, 3)));
  }
  SUBCASE("modes agree on {1,3}") {
    const AxisProjection s{{1, 3}, 5};
    CHECK((pre.projected_covariance(s).mat() -
           lazy.projected_covariance(s).mat())
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
  SUBCASE("out-of-range index is rejected") {
    const AxisProjection s{{1, 7}, 5};
    CHECK_THROWS_AS(pre.projected_covariance(s), InvalidInput);
  }
}

TEST_CASE("strategy cost model") {
  CHECK(choose_strategy(100, 10, 10, 10, 10) == CovStrategy::Precomputed);
  CHECK(choose_strategy(50, 10'000, 50, 50, 10) == CovStrategy::OnDemand);
  // d == p computes the same matrix either way; keep the full one.
  CHECK(choose_strategy(7, 5, 1, 1, 5) == CovStrategy::Precomputed);
  CHECK(choose_strategy(7, 9, 1, 1, 3) == CovStrategy::OnDemand);
}

TEST_CASE("precomputed sources must be positive semidefinite") {
  SymMatrix bad(2);
  bad.set(0, 0, 1.0);
  bad.set(1, 1, -1.0);
  CHECK_THROWS_AS(CovarianceSource::precomputed(bad), InvalidInput);
}

TEST_CASE("data matrices reject non-finite entries") {
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 2.0, std::nan(""), 4.0;
  CHECK_THROWS_AS(DataMatrix::create(x), InvalidInput);
  CHECK_THROWS_AS(DataMatrix::create(Eigen::MatrixXd(0, 3)), InvalidInput);
}

TEST_CASE("covariance property suite") {
  const auto failures = spcavrp::testing::prop_covariance(2026, 150);
  for (const auto& f : failures) MESSAGE(f);
  CHECK(failures.empty());
}
