#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spcavrp/baselines.hpp"
#include "spcavrp/deflation.hpp"
#include "spcavrp/errors.hpp"
#include "spcavrp/estimator.hpp"
#include "spcavrp/evaluation.hpp"
#include "spcavrp/io.hpp"
#include "spcavrp/model_spec.hpp"
#include "spcavrp/models.hpp"

namespace {

using namespace spcavrp;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitConfigError = 3;
constexpr int kExitNumericError = 4;

// ---------------------------------------------------------------------------
// Deterministic JSON emission (fixed key order, %.17g numbers).

std::string json_int_array(const std::vector<int>& values) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  out << ']';
  return out.str();
}

std::string json_double_array(const Eigen::VectorXd& values) {
  std::ostringstream out;
  out << '[';
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << format_double(values[i]);
  }
  out << ']';
  return out.str();
}

std::string json_column_arrays(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out << '[';
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (c > 0) out << ',';
    out << json_double_array(m.col(c));
  }
  out << ']';
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CovStrategy parse_strategy(const std::string& name) {
  if (name == "auto") return CovStrategy::Auto;
  if (name == "precomputed") return CovStrategy::Precomputed;
  if (name == "on-demand") return CovStrategy::OnDemand;
  throw InvalidInput("unknown strategy '" + name + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidInput("bad integer list entry '" + item + "'");
    }
  }
  if (values.empty()) throw InvalidInput("empty integer list");
  return values;
}

// Defaults: A = 300 for p around a hundred, 800 for p around a thousand,
// B = ceil(A/3), d = l.
int default_group_count(Eigen::Index p) { return p < 500 ? 300 : 800; }

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string input;
  std::string output;
  int group_count = 0;
  int group_size = 0;
  int projection_dim = 0;
  int sparsity = 0;
  std::string sparsity_list;
  int components = 1;
  std::uint64_t seed = 0;
  std::string strategy = "auto";
  std::string algorithm = "rp";
  bool exhaustive = false;
  bool center = false;
  bool header = false;
  int threads = 1;
};

std::string fit_config_json(const FitOptions& opt, const std::string& l_field) {
  std::ostringstream out;
  out << "{\"algorithm\":\"" << opt.algorithm << "\",\"A\":" << opt.group_count
      << ",\"B\":" << opt.group_size << ",\"d\":" << opt.projection_dim << ','
      << l_field << ",\"m\":" << opt.components << ",\"seed\":" << opt.seed
      << ",\"strategy\":\"" << opt.strategy << "\",\"exhaustive\":"
      << (opt.exhaustive ? "true" : "false")
      << ",\"center\":" << (opt.center ? "true" : "false") << '}';
  return out.str();
}

int run_fit(FitOptions opt) {
  DataMatrix data = [&] {
    try {
      return read_csv_matrix(opt.input, opt.header);
    } catch (const CsvError& e) {
      std::cerr << "input error: " << e.what() << '\n';
      std::exit(kExitInputError);
    } catch (const InvalidInput& e) {
      std::cerr << "input error: " << e.what() << '\n';
      std::exit(kExitInputError);
    }
  }();

  const Eigen::Index p = data.p();
  std::string document;
  try {
    if (opt.group_count == 0) opt.group_count = default_group_count(p);
    if (opt.group_size == 0)
      opt.group_size = static_cast<int>(std::ceil(opt.group_count / 3.0));

    if (opt.algorithm == "rp") {
      if (opt.sparsity == 0)
        throw InvalidInput("--l is required for --algorithm rp");
      if (opt.projection_dim == 0) opt.projection_dim = opt.sparsity;

      SpcavrpConfig cfg;
      cfg.group_count = opt.group_count;
      cfg.group_size = opt.group_size;
      cfg.projection_dim = opt.projection_dim;
      cfg.sparsity = opt.sparsity;
      cfg.components = opt.components;
      cfg.seed = opt.seed;
      cfg.strategy = parse_strategy(opt.strategy);
      cfg.exhaustive = opt.exhaustive;
      cfg.center = opt.center;
      cfg.threads = opt.threads;
      cfg.validate(p);

      const Estimate est = fit(data, cfg);
      std::ostringstream out;
      out << "{\"config\":"
          << fit_config_json(opt, "\"l\":" + std::to_string(opt.sparsity))
          << ",\"seed\":" << opt.seed
          << ",\"support\":" << json_int_array(est.support)
          << ",\"eigenvalues\":" << json_double_array(est.eigenvalues)
          << ",\"eigenvectors\":" << json_column_arrays(est.vectors.cols)
          << ",\"scores\":" << json_double_array(est.scores.w)
          << ",\"sparse_scores\":" << (est.sparse_scores ? "true" : "false")
          << "}\n";
      document = out.str();
    } else if (opt.algorithm == "deflate") {
      if (opt.sparsity_list.empty()) {
        if (opt.sparsity == 0)
          throw InvalidInput(
              "--l or --l-per-component is required for --algorithm deflate");
        opt.sparsity_list = std::to_string(opt.sparsity);
        for (int r = 1; r < opt.components; ++r)
          opt.sparsity_list += ',' + std::to_string(opt.sparsity);
      }
      const std::vector<int> sparsity = parse_int_list(opt.sparsity_list);
      if (opt.projection_dim == 0) opt.projection_dim = sparsity.front();

      DeflationConfig cfg;
      cfg.group_count = opt.group_count;
      cfg.group_size = opt.group_size;
      cfg.projection_dim = opt.projection_dim;
      cfg.sparsity = sparsity;
      cfg.seed = opt.seed;
      cfg.strategy = parse_strategy(opt.strategy);
      cfg.exhaustive = opt.exhaustive;
      cfg.center = opt.center;
      cfg.threads = opt.threads;
      cfg.validate(p);
      opt.components = cfg.components();

      const DeflationResult result = [&] {
        try {
          return deflate_fit(data, cfg);
        } catch (const DegenerateDeflation& e) {
          std::cerr << "numeric failure: " << e.what() << '\n';
          std::exit(kExitNumericError);
        }
      }();

      std::ostringstream supports;
      supports << '[';
      for (std::size_t r = 0; r < result.supports.size(); ++r) {
        if (r > 0) supports << ',';
        supports << json_int_array(result.supports[r]);
      }
      supports << ']';

      const std::string l_field =
          "\"l_per_component\":" + json_int_array(sparsity);
      std::ostringstream out;
      out << "{\"config\":" << fit_config_json(opt, l_field)
          << ",\"seed\":" << opt.seed << ",\"supports\":" << supports.str()
          << ",\"eigenvalues\":" << json_double_array(result.eigenvalues)
          << ",\"eigenvectors\":" << json_column_arrays(result.components)
          << ",\"pilot_directions\":"
          << json_column_arrays(result.pilot_directions) << "}\n";
      document = out.str();
    } else {
      throw InvalidInput("unknown algorithm '" + opt.algorithm + "'");
    }
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericError;
  }

  write_text(opt.output, document);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string model = "single-spike";
  std::string model_spec_path;
  int p = 0;
  int k = 0;
  double theta = 1.0;
  std::string profile = "homogeneous";
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  std::string output;
  std::string truth;
  int threads = 1;
};

ModelSpec spec_from_flags(const SimulateOptions& opt) {
  if (!opt.model_spec_path.empty())
    return ModelSpec::from_json_text(read_text(opt.model_spec_path));
  ModelSpec spec;
  if (opt.model == "single-spike") {
    spec.type = "single_spike";
    spec.p = opt.p;
    spec.k = opt.k;
    spec.theta = opt.theta;
    spec.profile = opt.profile;
  } else if (opt.model == "sigma1" || opt.model == "sigma2") {
    spec.type = opt.model;
    spec.p = opt.p;
    spec.k = opt.k;
  } else if (opt.model == "intro") {
    spec.type = "intro";
  } else {
    throw InvalidInput("unknown model '" + opt.model +
                       "' (use --model-spec for multi-spike models)");
  }
  return spec;
}

int run_simulate(const SimulateOptions& opt) {
  try {
    const ModelSpec spec = spec_from_flags(opt);
    const SpikedModel model = spec.build();
    if (opt.n < 1) throw InvalidInput("--n must be >= 1");

    const DataMatrix data =
        GaussianSampler(model).sample(opt.n, opt.seed, opt.threads);
    write_csv_matrix(opt.output, data.rows);

    // Sidecar with the ground truth for later scoring.
    const int m = static_cast<int>(model.spikes().size());
    Eigen::MatrixXd directions(model.p(), std::max(m, 0));
    for (int r = 0; r < m; ++r) directions.col(r) = model.spikes()[r].direction;
    Eigen::VectorXd thetas(m);
    for (int r = 0; r < m; ++r) thetas[r] = model.spikes()[r].theta;

    std::ostringstream truth;
    truth << "{\"model\":" << spec.to_json_text() << ",\"seed\":" << opt.seed
          << ",\"n\":" << opt.n << ",\"p\":" << model.p()
          << ",\"thetas\":" << json_double_array(thetas)
          << ",\"directions\":" << json_column_arrays(directions);
    if (m >= 1)
      truth << ",\"signal_support\":"
            << json_int_array(model.signal_support(m));
    truth << "}\n";
    const std::string truth_path =
        opt.truth.empty() ? opt.output + ".truth.json" : opt.truth;
    write_text(truth_path, truth.str());
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericError;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// benchmark

struct EstimatorSpec {
  std::string id;
  std::string algorithm;  // rp | deflate | vanilla_pca | diagonal_threshold
  int group_count = 0;
  int group_size = 0;
  int projection_dim = 0;
  int sparsity = 0;
  std::vector<int> sparsity_per_component;
  int components = 1;
  int k = 0;  // diagonal_threshold
  std::string strategy = "auto";
  bool exhaustive = false;
  bool center = false;
};

struct ExperimentSpec {
  std::string model_id;
  ModelSpec model;
  std::vector<Eigen::Index> n_grid;
  int reps = 1;
  std::uint64_t seed = 0;
  std::string mode = "loss";  // loss | var_curve
  std::vector<int> l_grid;
  std::vector<EstimatorSpec> estimators;
};

ExperimentSpec parse_experiment(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("experiment spec: invalid JSON: ") +
                       e.what());
  }
  ExperimentSpec spec;
  try {
    spec.model_id = doc.at("model_id").get<std::string>();
    spec.model = ModelSpec::from_json_text(doc.at("model").dump());
    for (const auto& n : doc.at("n_grid")) {
      spec.n_grid.push_back(n.get<Eigen::Index>());
      if (spec.n_grid.size() > 1 &&
          spec.n_grid.back() <= spec.n_grid[spec.n_grid.size() - 2])
        throw InvalidInput("experiment spec: n_grid must be increasing");
    }
    if (spec.n_grid.empty())
      throw InvalidInput("experiment spec: n_grid must be nonempty");
    spec.reps = doc.at("reps").get<int>();
    if (spec.reps < 1) throw InvalidInput("experiment spec: reps must be >= 1");
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("mode")) spec.mode = doc.at("mode").get<std::string>();
    if (doc.contains("l_grid"))
      spec.l_grid = doc.at("l_grid").get<std::vector<int>>();
    for (const auto& est : doc.at("estimators")) {
      EstimatorSpec e;
      e.id = est.at("id").get<std::string>();
      e.algorithm = est.at("algorithm").get<std::string>();
      if (est.contains("A")) e.group_count = est.at("A").get<int>();
      if (est.contains("B")) e.group_size = est.at("B").get<int>();
      if (est.contains("d")) e.projection_dim = est.at("d").get<int>();
      if (est.contains("l")) e.sparsity = est.at("l").get<int>();
      if (est.contains("l_per_component"))
        e.sparsity_per_component =
            est.at("l_per_component").get<std::vector<int>>();
      if (est.contains("m")) e.components = est.at("m").get<int>();
      if (est.contains("k")) e.k = est.at("k").get<int>();
      if (est.contains("strategy"))
        e.strategy = est.at("strategy").get<std::string>();
      if (est.contains("exhaustive"))
        e.exhaustive = est.at("exhaustive").get<bool>();
      if (est.contains("center")) e.center = est.at("center").get<bool>();
      spec.estimators.push_back(std::move(e));
    }
    if (spec.estimators.empty())
      throw InvalidInput("experiment spec: no estimators");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("experiment spec: bad field: ") + e.what());
  }
  return spec;
}

// The frame losses are measured against: the spike directions when they are
// orthonormal, otherwise the population eigenvectors.
OrthonormalFrame truth_frame(const SpikedModel& model, int m) {
  if (!model.relaxed()) return model.leading_directions(m);
  const EigenSystem eig = eig_top(model.covariance(), m);
  return OrthonormalFrame{eig.vectors};
}

struct EstimatorOutcome {
  OrthonormalFrame frame{Eigen::MatrixXd()};
  std::vector<int> support;
};

EstimatorOutcome run_estimator(const EstimatorSpec& e, const DataMatrix& data,
                               std::uint64_t seed, int threads) {
  EstimatorOutcome outcome;
  if (e.algorithm == "rp") {
    SpcavrpConfig cfg;
    cfg.group_count = e.group_count;
    cfg.group_size = e.group_size;
    cfg.projection_dim = e.projection_dim;
    cfg.sparsity = e.sparsity;
    cfg.components = e.components;
    cfg.seed = seed;
    cfg.strategy = parse_strategy(e.strategy);
    cfg.exhaustive = e.exhaustive;
    cfg.center = e.center;
    cfg.threads = threads;
    const Estimate est = fit(data, cfg);
    outcome.frame = est.vectors;
    outcome.support = est.support;
  } else if (e.algorithm == "deflate") {
    DeflationConfig cfg;
    cfg.group_count = e.group_count;
    cfg.group_size = e.group_size;
    cfg.projection_dim = e.projection_dim;
    cfg.sparsity = e.sparsity_per_component;
    cfg.seed = seed;
    cfg.strategy = parse_strategy(e.strategy);
    cfg.exhaustive = e.exhaustive;
    cfg.center = e.center;
    cfg.threads = threads;
    const DeflationResult result = deflate_fit(data, cfg);
    outcome.frame = OrthonormalFrame{result.components};
    std::set<int> support;
    for (const auto& s : result.supports) support.insert(s.begin(), s.end());
    outcome.support.assign(support.begin(), support.end());
  } else if (e.algorithm == "vanilla_pca") {
    const CovarianceSource src = CovarianceSource::precomputed_from_data(data);
    outcome.frame = vanilla_pca(src, e.components);
    for (int j = 0; j < data.p(); ++j) outcome.support.push_back(j);
  } else if (e.algorithm == "diagonal_threshold") {
    const CovarianceSource src = CovarianceSource::precomputed_from_data(data);
    const DiagonalThresholdResult result =
        diagonal_threshold(src, e.k, e.components);
    outcome.frame = result.frame;
    outcome.support = result.support;
  } else {
    throw InvalidInput("unknown estimator algorithm '" + e.algorithm + "'");
  }
  return outcome;
}

int run_benchmark(const std::string& spec_path, const std::string& output_path,
                  int threads, bool wall_time) {
  ExperimentSpec spec;
  SpikedModel model = SpikedModel::identity_base(1, {});
  try {
    spec = parse_experiment(read_text(spec_path));
    model = spec.model.build();
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    const GaussianSampler sampler(model);
    std::ostringstream out;

    if (spec.mode == "var_curve") {
      if (spec.l_grid.empty())
        throw InvalidInput("experiment spec: var_curve mode needs l_grid");
      out << "model_id,estimator_id,n,rep,l,var_l\n";
      for (const EstimatorSpec& e : spec.estimators) {
        if (e.algorithm != "rp")
          throw InvalidInput("var_curve mode supports only rp estimators");
        for (std::size_t ni = 0; ni < spec.n_grid.size(); ++ni) {
          for (int rep = 0; rep < spec.reps; ++rep) {
            const std::uint64_t data_seed = substream_seed(spec.seed, ni, rep);
            const DataMatrix data =
                sampler.sample(spec.n_grid[ni], data_seed, threads);
            SpcavrpConfig cfg;
            cfg.group_count = e.group_count;
            cfg.group_size = e.group_size;
            cfg.projection_dim = e.projection_dim;
            cfg.sparsity = e.sparsity;
            cfg.components = e.components;
            cfg.seed = substream_seed(data_seed, 1000);
            cfg.strategy = parse_strategy(e.strategy);
            cfg.threads = threads;
            const Estimate est = fit(data, cfg);
            const CovarianceSource src =
                CovarianceSource::precomputed_from_data(data);
            const VarCurve curve = var_curve(est.scores, src, spec.l_grid);
            for (std::size_t i = 0; i < curve.l_grid.size(); ++i)
              out << spec.model_id << ',' << e.id << ',' << spec.n_grid[ni]
                  << ',' << rep << ',' << curve.l_grid[i] << ','
                  << format_double(curve.values[i]) << '\n';
          }
        }
      }
      write_text(output_path, out.str());
      return kExitOk;
    }

    if (spec.mode != "loss")
      throw InvalidInput("experiment spec: unknown mode '" + spec.mode + "'");

    out << "model_id,estimator_id,n,rep,loss,support_recovery,"
           "wall_time_seconds,seed\n";

    struct Cell {
      double loss_sum = 0.0;
      double recovery_sum = 0.0;
      double wall_sum = 0.0;
    };
    std::vector<Cell> cells(spec.estimators.size() * spec.n_grid.size());

    for (std::size_t ni = 0; ni < spec.n_grid.size(); ++ni) {
      for (int rep = 0; rep < spec.reps; ++rep) {
        const std::uint64_t data_seed = substream_seed(spec.seed, ni, rep);
        const DataMatrix data =
            sampler.sample(spec.n_grid[ni], data_seed, threads);
        for (std::size_t ei = 0; ei < spec.estimators.size(); ++ei) {
          const EstimatorSpec& e = spec.estimators[ei];
          const OrthonormalFrame truth = truth_frame(model, e.components);
          const std::vector<int> signal = model.signal_support(e.components);

          const auto start = std::chrono::steady_clock::now();
          const EstimatorOutcome outcome = run_estimator(
              e, data, substream_seed(data_seed, 1000 + ei), threads);
          const auto stop = std::chrono::steady_clock::now();
          const double elapsed =
              wall_time ? std::chrono::duration<double>(stop - start).count()
                        : 0.0;

          const double loss = subspace_loss(outcome.frame, truth);
          const double recovery =
              support_metrics(outcome.support, signal).recovery_rate;
          Cell& cell = cells[ei * spec.n_grid.size() + ni];
          cell.loss_sum += loss;
          cell.recovery_sum += recovery;
          cell.wall_sum += elapsed;

          out << spec.model_id << ',' << e.id << ',' << spec.n_grid[ni] << ','
              << rep << ',' << format_double(loss) << ','
              << format_double(recovery) << ',' << format_double(elapsed)
              << ',' << data_seed << '\n';
        }
      }
    }

    // Aggregate rows (rep = -1): means over the repetitions of each cell.
    for (std::size_t ei = 0; ei < spec.estimators.size(); ++ei)
      for (std::size_t ni = 0; ni < spec.n_grid.size(); ++ni) {
        const Cell& cell = cells[ei * spec.n_grid.size() + ni];
        const double inv = 1.0 / spec.reps;
        out << spec.model_id << ',' << spec.estimators[ei].id << ','
            << spec.n_grid[ni] << ",-1," << format_double(cell.loss_sum * inv)
            << ',' << format_double(cell.recovery_sum * inv) << ','
            << format_double(cell.wall_sum * inv) << ',' << spec.seed << '\n';
      }

    write_text(output_path, out.str());
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sparse principal component estimation by aggregating eigenvector "
      "information over selected axis-aligned random projections"};
  app.require_subcommand(1);

  // fit ----------------------------------------------------------------
  FitOptions fit_opt;
  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "Estimate sparse principal components from a CSV");
  fit_cmd->add_option("--input", fit_opt.input, "n x p data CSV")->required();
  fit_cmd->add_option("--output", fit_opt.output, "estimate JSON path")
      ->required();
  fit_cmd->add_option("--A", fit_opt.group_count, "number of groups");
  fit_cmd->add_option("--B", fit_opt.group_size, "projections per group");
  fit_cmd->add_option("--d", fit_opt.projection_dim, "projection dimension");
  fit_cmd->add_option("--l", fit_opt.sparsity, "output sparsity");
  fit_cmd->add_option("--l-per-component", fit_opt.sparsity_list,
                      "comma-separated sparsities (deflate)");
  fit_cmd->add_option("--m", fit_opt.components, "number of components");
  fit_cmd->add_option("--seed", fit_opt.seed, "random seed");
  fit_cmd->add_option("--strategy", fit_opt.strategy,
                      "auto|precomputed|on-demand");
  fit_cmd->add_option("--algorithm", fit_opt.algorithm, "rp|deflate");
  fit_cmd->add_flag("--exhaustive", fit_opt.exhaustive,
                    "enumerate all C(p,d) projections");
  fit_cmd->add_flag("--center", fit_opt.center, "center each variable first");
  fit_cmd->add_flag("--header", fit_opt.header, "skip a header row");
  fit_cmd->add_option("--threads", fit_opt.threads, "worker threads");

  // simulate -------------------------------------------------------------
  SimulateOptions sim_opt;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Sample synthetic data from a model");
  sim_cmd->add_option("--model", sim_opt.model,
                      "single-spike|sigma1|sigma2|intro");
  sim_cmd->add_option("--model-spec", sim_opt.model_spec_path,
                      "JSON model spec file (e.g. multi_spike)");
  sim_cmd->add_option("--p", sim_opt.p, "dimension");
  sim_cmd->add_option("--k", sim_opt.k, "sparsity");
  sim_cmd->add_option("--theta", sim_opt.theta, "spike strength");
  sim_cmd->add_option("--profile", sim_opt.profile, "homogeneous|linear");
  sim_cmd->add_option("--n", sim_opt.n, "observations")->required();
  sim_cmd->add_option("--seed", sim_opt.seed, "random seed");
  sim_cmd->add_option("--output", sim_opt.output, "data CSV path")->required();
  sim_cmd->add_option("--truth", sim_opt.truth,
                      "sidecar JSON path (default: <output>.truth.json)");
  sim_cmd->add_option("--threads", sim_opt.threads, "worker threads");

  // benchmark ------------------------------------------------------------
  std::string bench_spec;
  std::string bench_output;
  int bench_threads = 1;
  bool bench_no_wall = false;
  CLI::App* bench_cmd = app.add_subcommand(
      "benchmark", "Run a Monte Carlo experiment described by a JSON spec");
  bench_cmd->add_option("--spec", bench_spec, "experiment spec JSON")
      ->required();
  bench_cmd->add_option("--output", bench_output, "results CSV path")
      ->required();
  bench_cmd->add_option("--threads", bench_threads, "worker threads");
  bench_cmd->add_flag("--no-wall-time", bench_no_wall,
                      "write zeros in wall_time_seconds (reproducible bytes)");

  // choose-b ---------------------------------------------------------------
  int cb_t = 0, cb_d = 0, cb_k = 0, cb_p = 0;
  CLI::App* cb_cmd = app.add_subcommand(
      "choose-b", "Group size needed to capture t signal coordinates");
  cb_cmd->add_option("--t", cb_t, "target signal coordinates")->required();
  cb_cmd->add_option("--d", cb_d, "projection dimension")->required();
  cb_cmd->add_option("--k", cb_k, "signal sparsity")->required();
  cb_cmd->add_option("--p", cb_p, "ambient dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(fit_opt);
    if (sim_cmd->parsed()) return run_simulate(sim_opt);
    if (bench_cmd->parsed())
      return run_benchmark(bench_spec, bench_output, bench_threads,
                           !bench_no_wall);
    if (cb_cmd->parsed()) {
      std::cout << choose_b(cb_t, cb_d, cb_k, cb_p) << '\n';
      return kExitOk;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Unreachable& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericError;
  }
  return kExitOk;
}
