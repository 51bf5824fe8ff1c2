#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "properties.hpp"
#include "spcavrp/errors.hpp"
#include "spcavrp/linalg.hpp"

using namespace spcavrp;

TEST_CASE("eig_top on a diagonal matrix") {
  SymMatrix m(2);
  m.set(0, 0, 2.0);
  m.set(1, 1, 1.0);
  const EigenSystem eig = eig_top(m, 2);
  CHECK(eig.values[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.vectors(0, 0) == doctest::Approx(1.0));
  CHECK(eig.vectors(1, 0) == doctest::Approx(0.0));
  CHECK(eig.vectors(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("eig_top on the identity returns a unit vector with the sign convention") {
  SymMatrix m(3);
  for (int i = 0; i < 3; ++i) m.set(i, i, 1.0);
  const EigenSystem eig = eig_top(m, 1);
  CHECK(eig.values[0] == doctest::Approx(1.0));
  CHECK(eig.vectors.col(0).norm() == doctest::Approx(1.0));
  // Largest-|component| entry must be positive.
  Eigen::Index best = 0;
  eig.vectors.col(0).cwiseAbs().maxCoeff(&best);
  CHECK(eig.vectors(best, 0) > 0.0);
}

TEST_CASE("eig_top on [[2,1],[1,2]] matches the characteristic-polynomial roots") {
  // det(M - t I) = t^2 - 4t + 3 = (t - 3)(t - 1).
  SymMatrix m(2);
  m.set(0, 0, 2.0);
  m.set(1, 1, 2.0);
  m.set(0, 1, 1.0);
  const EigenSystem eig = eig_top(m, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.vectors(0, 0) == doctest::Approx(inv_sqrt2));
  CHECK(eig.vectors(1, 0) == doctest::Approx(inv_sqrt2));
  CHECK(eig.vectors(0, 1) == doctest::Approx(inv_sqrt2));
  CHECK(eig.vectors(1, 1) == doctest::Approx(-inv_sqrt2));
}

TEST_CASE("eig_top rejects non-finite entries and bad r") {
  SymMatrix m(2);
  m.set(0, 0, std::nan(""));
  CHECK_THROWS_AS(eig_top(m, 1), InvalidInput);
  SymMatrix ok(2);
  CHECK_THROWS_AS(eig_top(ok, 0), InvalidInput);
  CHECK_THROWS_AS(eig_top(ok, 3), InvalidInput);
}

TEST_CASE("orthogonal-complement projector on a coordinate axis") {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 1);
  v(0, 0) = 1.0;
  const SymMatrix proj = proj_orth_complement(v);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3);
  expected(0, 0) = 0.0;
  CHECK((proj.mat() - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("orthogonal-complement projector of the zero matrix is the identity") {
  const Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 2);
  const SymMatrix proj = proj_orth_complement(v);
  CHECK((proj.mat() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("orthogonal-complement projector of the e1-e2 plane") {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd v(3, 2);
  v << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2, 0.0, 0.0;
  const SymMatrix proj = proj_orth_complement(v);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(2, 2) = 1.0;
  CHECK((proj.mat() - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("rank-deficient nonzero V is rejected") {
  Eigen::MatrixXd v(3, 2);
  v << 1.0, 2.0, 1.0, 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(proj_orth_complement(v), RankDeficient);
}

TEST_CASE("principal angle sines") {
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(3, 1);
  e1(0, 0) = 1.0;
  Eigen::MatrixXd e2 = Eigen::MatrixXd::Zero(3, 1);
  e2(1, 0) = 1.0;
  const OrthonormalFrame u{e1};

  CHECK(principal_angle_sines(u, u)[0] == doctest::Approx(0.0));
  CHECK(principal_angle_sines(u, OrthonormalFrame{e2})[0] ==
        doctest::Approx(1.0));

  Eigen::MatrixXd diag(3, 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  diag << inv_sqrt2, inv_sqrt2, 0.0;
  CHECK(principal_angle_sines(u, OrthonormalFrame{diag})[0] ==
        doctest::Approx(inv_sqrt2));

  Eigen::MatrixXd wide = Eigen::MatrixXd::Identity(3, 2);
  CHECK_THROWS_AS(principal_angle_sines(u, OrthonormalFrame{wide}),
                  InvalidInput);
}

TEST_CASE("OrthonormalFrame::adopt validates") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(OrthonormalFrame::adopt(bad), InvalidInput);
  CHECK_NOTHROW(OrthonormalFrame::adopt(Eigen::MatrixXd::Identity(3, 2)));
}

TEST_CASE("linalg property suite") {
  const auto failures = spcavrp::testing::prop_linalg(2024, 120);
  for (const auto& f : failures) MESSAGE(f);
  CHECK(failures.empty());
}
