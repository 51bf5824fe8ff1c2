#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spcavrp/baselines.hpp"
#include "spcavrp/deflation.hpp"
#include "spcavrp/errors.hpp"
#include "spcavrp/estimator.hpp"
#include "spcavrp/evaluation.hpp"
#include "spcavrp/models.hpp"

namespace py = pybind11;
using namespace spcavrp;

namespace {

CovStrategy strategy_from_name(const std::string& name) {
  if (name == "auto") return CovStrategy::Auto;
  if (name == "precomputed") return CovStrategy::Precomputed;
  if (name == "on-demand") return CovStrategy::OnDemand;
  throw InvalidInput("unknown strategy '" + name + "'");
}

OrthonormalFrame frame_from_array(const Eigen::MatrixXd& array) {
  return OrthonormalFrame{array};
}

SpikeProfile profile_from_name(const std::string& name) {
  if (name == "homogeneous") return SpikeProfile::Homogeneous;
  if (name == "linear") return SpikeProfile::Linear;
  throw InvalidInput("unknown profile '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Sparse principal component estimation by aggregating eigenvector "
      "information over selected axis-aligned random projections";
  m.attr("__version__") = "0.1.0";

  // Base first: translators run newest-first, so the derived ones must be
  // registered after their base to take precedence.
  py::register_exception<Error>(m, "SpcavrpError", PyExc_RuntimeError);
  py::register_exception<DegenerateDeflation>(m, "DegenerateDeflationError",
                                              PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInputError",
                                       PyExc_ValueError);

  py::class_<SpikedModel>(m, "SpikedModel")
      .def_property_readonly("p", &SpikedModel::p)
      .def("covariance",
           [](const SpikedModel& self) { return self.covariance().mat(); })
      .def("directions",
           [](const SpikedModel& self, int m_) {
             return self.leading_directions(m_).cols;
           },
           py::arg("m"))
      .def("signal_support", &SpikedModel::signal_support, py::arg("m"));

  m.def("make_single_spike",
        [](int p, int k, double theta, const std::string& profile) {
          return make_single_spike(p, k, theta, profile_from_name(profile));
        },
        py::arg("p"), py::arg("k"), py::arg("theta"),
        py::arg("profile") = "homogeneous");
  m.def("make_sigma1", &make_sigma1, py::arg("p"), py::arg("k"));
  m.def("make_sigma2", &make_sigma2, py::arg("p"), py::arg("k"));
  m.def("make_intro_model", &make_intro_model);
  m.def("make_multi_spike", &make_multi_spike, py::arg("p"),
        py::arg("supports"), py::arg("thetas"),
        py::arg("signs") = std::vector<std::vector<int>>{},
        py::arg("relax_orthogonality") = false);

  m.def(
      "sample_gaussian",
      [](const SpikedModel& model, Eigen::Index n, std::uint64_t seed,
         int threads) { return sample_gaussian(model, n, seed, threads).rows; },
      py::arg("model"), py::arg("n"), py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "fit",
      [](const Eigen::MatrixXd& x, int A, int B, int d, int l, int m_,
         std::uint64_t seed, const std::string& strategy, bool exhaustive,
         bool center, int threads) {
        SpcavrpConfig cfg;
        cfg.group_count = A;
        cfg.group_size = B;
        cfg.projection_dim = d;
        cfg.sparsity = l;
        cfg.components = m_;
        cfg.seed = seed;
        cfg.strategy = strategy_from_name(strategy);
        cfg.exhaustive = exhaustive;
        cfg.center = center;
        cfg.threads = threads;
        const Estimate est = fit(DataMatrix::create(x), cfg);
        py::dict out;
        out["vectors"] = est.vectors.cols;
        out["support"] = est.support;
        out["eigenvalues"] = est.eigenvalues;
        out["scores"] = est.scores.w;
        out["sparse_scores"] = est.sparse_scores;
        return out;
      },
      py::arg("x"), py::arg("A") = 300, py::arg("B") = 100, py::arg("d"),
      py::arg("l"), py::arg("m") = 1, py::arg("seed") = 0,
      py::arg("strategy") = "auto", py::arg("exhaustive") = false,
      py::arg("center") = false, py::arg("threads") = 1,
      "Estimate the m leading sparse principal components of the rows of x.");

  m.def(
      "deflate_fit",
      [](const Eigen::MatrixXd& x, int A, int B, int d,
         const std::vector<int>& l_per_component, std::uint64_t seed,
         const std::string& strategy, bool exhaustive, bool center,
         int threads) {
        DeflationConfig cfg;
        cfg.group_count = A;
        cfg.group_size = B;
        cfg.projection_dim = d;
        cfg.sparsity = l_per_component;
        cfg.seed = seed;
        cfg.strategy = strategy_from_name(strategy);
        cfg.exhaustive = exhaustive;
        cfg.center = center;
        cfg.threads = threads;
        const DeflationResult result = deflate_fit(DataMatrix::create(x), cfg);
        py::dict out;
        out["components"] = result.components;
        out["supports"] = result.supports;
        out["eigenvalues"] = result.eigenvalues;
        out["pilot_directions"] = result.pilot_directions;
        return out;
      },
      py::arg("x"), py::arg("A") = 300, py::arg("B") = 100, py::arg("d"),
      py::arg("l_per_component"), py::arg("seed") = 0,
      py::arg("strategy") = "auto", py::arg("exhaustive") = false,
      py::arg("center") = false, py::arg("threads") = 1,
      "Estimate mutually orthogonal sparse components by modified deflation.");

  m.def(
      "subspace_loss",
      [](const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
        return subspace_loss(frame_from_array(u), frame_from_array(v));
      },
      py::arg("u"), py::arg("v"),
      "Frobenius norm of the sines of the principal angles between two "
      "orthonormal frames.");

  m.def(
      "support_metrics",
      [](const std::vector<int>& estimated, const std::vector<int>& truth) {
        const SupportMetrics metrics = support_metrics(estimated, truth);
        return py::make_tuple(metrics.recovery_rate, metrics.false_inclusions);
      },
      py::arg("estimated"), py::arg("truth"));

  m.def(
      "hypergeom_cdf",
      [](int t, int d, int k, int p) {
        return hypergeom_cdf(t, HypergeomParams{d, k, p});
      },
      py::arg("t"), py::arg("d"), py::arg("k"), py::arg("p"));

  m.def("choose_b", &choose_b, py::arg("t"), py::arg("d"), py::arg("k"),
        py::arg("p"),
        "Group size at which the best of B projections captures at least t "
        "signal coordinates with probability >= 1/4.");

  m.def(
      "incoherence",
      [](const Eigen::MatrixXd& v) {
        const Incoherence result = incoherence(v);
        return py::make_tuple(result.nonzero_rows, result.mu);
      },
      py::arg("v"));

  m.def(
      "var_curve",
      [](const Eigen::VectorXd& scores, const Eigen::MatrixXd& x,
         const std::vector<int>& l_grid) {
        const DataMatrix data = DataMatrix::create(x);
        const CovarianceSource src =
            CovarianceSource::precomputed_from_data(data);
        const VarCurve curve = var_curve(ImportanceScores{scores}, src, l_grid);
        py::dict out;
        out["l_grid"] = curve.l_grid;
        out["values"] = curve.values;
        out["supports"] = curve.supports;
        return out;
      },
      py::arg("scores"), py::arg("x"), py::arg("l_grid"),
      "Explained variance of the top-l scored coordinates for each l.");

  m.def(
      "brute_force_sparse_pc",
      [](const Eigen::MatrixXd& sigma, int k) {
        const CovarianceSource src =
            CovarianceSource::precomputed(SymMatrix::from_upper(sigma));
        const SparsePcOracle oracle = brute_force_sparse_pc(src, k);
        py::dict out;
        out["support"] = oracle.support;
        out["direction"] = oracle.direction;
        out["value"] = oracle.value;
        return out;
      },
      py::arg("sigma"), py::arg("k"),
      "Exact k-sparse leading eigenvector by exhaustive search.");

  m.def(
      "vanilla_pca",
      [](const Eigen::MatrixXd& x, int m_) {
        const DataMatrix data = DataMatrix::create(x);
        return vanilla_pca(CovarianceSource::precomputed_from_data(data), m_)
            .cols;
      },
      py::arg("x"), py::arg("m") = 1);

  m.def(
      "diagonal_threshold",
      [](const Eigen::MatrixXd& x, int k, int m_) {
        const DataMatrix data = DataMatrix::create(x);
        const DiagonalThresholdResult result = diagonal_threshold(
            CovarianceSource::precomputed_from_data(data), k, m_);
        return py::make_tuple(result.support, result.frame.cols);
      },
      py::arg("x"), py::arg("k"), py::arg("m") = 1);
}
