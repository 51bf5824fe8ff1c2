#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* path = std::getenv("SPCAVRP_CLI");
  REQUIRE_MESSAGE(path != nullptr, "SPCAVRP_CLI environment variable not set");
  return path;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "spcavrp_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>/dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("fit on a toy identity-covariance csv") {
  const fs::path dir = work_dir();
  const fs::path data = dir / "toy.csv";
  std::ofstream(data) << "1.0,0.0\n0.0,1.0\n";
  const fs::path out = dir / "toy.json";

  CHECK(run("fit --input " + data.string() + " --output " + out.string() +
            " --A 5 --B 2 --d 1 --l 1 --m 1 --seed 7") == 0);

  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["support"].size() == 1);
  const auto vec = doc["eigenvectors"][0].get<std::vector<double>>();
  double norm = 0.0;
  for (double v : vec) norm += v * v;
  CHECK(norm == doctest::Approx(1.0));
  CHECK(doc["scores"].size() == 2);
}

TEST_CASE("repeated invocations with the same seed are byte-identical") {
  const fs::path dir = work_dir();
  const fs::path data = dir / "repeat.csv";
  CHECK(run("simulate --model single-spike --p 15 --k 3 --theta 2 --n 40"
            " --seed 5 --output " + data.string()) == 0);
  const fs::path out1 = dir / "repeat1.json";
  const fs::path out2 = dir / "repeat2.json";
  const std::string flags = " --A 20 --B 5 --l 3 --seed 7 --output ";
  CHECK(run("fit --input " + data.string() + flags + out1.string()) == 0);
  CHECK(run("fit --input " + data.string() + flags + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("simulate writes a truth sidecar with the spike") {
  const fs::path dir = work_dir();
  const fs::path data = dir / "sim.csv";
  CHECK(run("simulate --model single-spike --p 20 --k 4 --theta 3 --n 25"
            " --seed 9 --output " + data.string()) == 0);

  // Shape: 25 rows, 20 columns.
  std::ifstream in(data);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);

  const auto truth = nlohmann::json::parse(slurp(dir / "sim.csv.truth.json"));
  const auto v1 = truth["directions"][0].get<std::vector<double>>();
  int nonzeros = 0;
  for (double v : v1) nonzeros += v != 0.0;
  CHECK(nonzeros == 4);
  CHECK(truth["signal_support"].get<std::vector<int>>() ==
        std::vector<int>{0, 1, 2, 3});

  // Resampling with the same seed reproduces the file.
  const fs::path again = dir / "sim2.csv";
  CHECK(run("simulate --model single-spike --p 20 --k 4 --theta 3 --n 25"
            " --seed 9 --output " + again.string()) == 0);
  CHECK(slurp(data) == slurp(again));
}

TEST_CASE("simulate accepts a model spec file") {
  const fs::path dir = work_dir();
  const fs::path spec = dir / "multi.json";
  std::ofstream(spec)
      << R"({"type":"multi_spike","p":16,"supports":[[0,1,2],[3,4,5]],)"
      << R"("thetas":[6,3]})";
  const fs::path data = dir / "multi.csv";
  CHECK(run("simulate --model-spec " + spec.string() + " --n 12 --seed 3"
            " --output " + data.string()) == 0);
  const auto truth = nlohmann::json::parse(slurp(dir / "multi.csv.truth.json"));
  CHECK(truth["directions"].size() == 2);
  CHECK(truth["signal_support"].get<std::vector<int>>() ==
        std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(truth["model"]["type"] == "multi_spike");

  // Non-orthogonal spikes are a config error.
  const fs::path bad = dir / "bad_multi.json";
  std::ofstream(bad)
      << R"({"type":"multi_spike","p":16,"supports":[[0,1,2],[2,3,4]],)"
      << R"("thetas":[6,3]})";
  CHECK(run("simulate --model-spec " + bad.string() + " --n 12 --output " +
            data.string()) == 3);
}

TEST_CASE("exit codes distinguish input, config, and numeric failures") {
  const fs::path dir = work_dir();
  const fs::path bad = dir / "bad.csv";
  std::ofstream(bad) << "1.0,2.0\nx,3.0\n";
  const fs::path out = dir / "unused.json";
  CHECK(run("fit --input " + bad.string() + " --output " + out.string() +
            " --l 1") == 2);
  CHECK(run("fit --input " + bad.string() + " --output " + out.string()) == 2);

  const fs::path ok = dir / "ok.csv";
  std::ofstream(ok) << "1.0,2.0\n2.0,3.0\n";
  CHECK(run("fit --input " + ok.string() + " --output " + out.string() +
            " --l 5") == 3);
  CHECK(run("fit --input " + ok.string() + " --output " + out.string() +
            " --l 1 --m 2 --d 1") == 3);
  CHECK(run("nonsense") == 3);

  // Rank-one data cannot produce a second orthogonal sparse component.
  const fs::path rank1 = dir / "rank1.csv";
  std::ofstream(rank1) << "1.0,0.0,0.0\n1.0,0.0,0.0\n";
  CHECK(run("fit --input " + rank1.string() + " --output " + out.string() +
            " --algorithm deflate --l-per-component 1,1 --d 1 --A 3 --B 2"
            " --exhaustive") == 4);
}

TEST_CASE("benchmark emits the documented columns plus aggregate rows") {
  const fs::path dir = work_dir();
  const fs::path spec = dir / "spec.json";
  std::ofstream(spec)
      << R"({"model_id":"toy","model":{"type":"single_spike","p":12,"k":3,)"
      << R"("theta":3,"profile":"homogeneous"},"n_grid":[10],"reps":1,)"
      << R"("seed":4,"estimators":[{"id":"rp","algorithm":"rp","A":10,)"
      << R"("B":3,"d":3,"l":3,"m":1}]})";
  const fs::path out = dir / "results.csv";
  CHECK(run("benchmark --spec " + spec.string() + " --output " + out.string() +
            " --no-wall-time") == 0);

  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "model_id,estimator_id,n,rep,loss,support_recovery,"
        "wall_time_seconds,seed");
  std::string data_row, aggregate_row;
  std::getline(in, data_row);
  std::getline(in, aggregate_row);
  CHECK(data_row.substr(0, 10) == "toy,rp,10,");
  CHECK(aggregate_row.find(",-1,") != std::string::npos);

  const fs::path bad_spec = dir / "bad_spec.json";
  std::ofstream(bad_spec) << "{}";
  CHECK(run("benchmark --spec " + bad_spec.string() + " --output " +
            out.string()) == 3);
}

TEST_CASE("benchmark var-curve mode tabulates explained variance per l") {
  const fs::path dir = work_dir();
  const fs::path spec = dir / "var_spec.json";
  std::ofstream(spec)
      << R"({"model_id":"vc","model":{"type":"single_spike","p":12,"k":3,)"
      << R"("theta":5,"profile":"homogeneous"},"n_grid":[60],"reps":1,)"
      << R"("seed":2,"mode":"var_curve","l_grid":[1,2,3,4,5],)"
      << R"("estimators":[{"id":"rp","algorithm":"rp","A":20,"B":5,)"
      << R"("d":3,"l":3,"m":1}]})";
  const fs::path out = dir / "var_curve.csv";
  CHECK(run("benchmark --spec " + spec.string() + " --output " +
            out.string()) == 0);

  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "model_id,estimator_id,n,rep,l,var_l");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("choose-b prints the group size") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "b.txt";
  const std::string command = cli_path() +
                              " choose-b --t 2 --d 2 --k 2 --p 4 > " +
                              out.string();
  CHECK(WEXITSTATUS(std::system(command.c_str())) == 0);
  CHECK(slurp(out) == "3\n");
}
