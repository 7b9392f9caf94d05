#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abc/config.hpp"
#include "abc/engine.hpp"
#include "abc/errors.hpp"
#include "abc/output.hpp"

using namespace abc;
namespace fs = std::filesystem;

namespace {

const char* kMinimalReject = R"json({
  "algorithm": "reject",
  "n": 10,
  "epsilon": 1.5,
  "observed": {"times": [0.5, 1.0], "values": [[0.8], [0.6]]},
  "model": {
    "simulator": {"type": "decay-ode"},
    "prior": [{"uniform": [0.1, 5.0]}]
  }
})json";

std::string parse_error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "(no error)";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string hex16(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("abc_engine_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const fs::path& dir,
                  const std::string& env_prefix = "") {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = env_prefix + ABC_CLI_PATH + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

ModelConfig random_model(RandomStream& rng, std::string name,
                         bool needs_kernel) {
  ModelConfig m;
  m.name = std::move(name);
  std::size_t dims = 1;
  if (rng.uniform() < 0.3) {
    m.simulator.type = "bernoulli-count";
    m.simulator.fields = {
        {"trials", static_cast<double>(2 + rng.next_u64() % 8)}};
    double p = 0.05;
    for (int i = 0; i < 3; ++i) {
      p += rng.uniform(0.05, 0.25);
      m.simulator.grid.push_back(p);
    }
    m.prior = {GridDim{m.simulator.grid}};
  } else {
    m.simulator.type = rng.uniform() < 0.5 ? "decay-ode" : "birth-death-ssa";
    if (m.simulator.type == "decay-ode" && rng.uniform() < 0.5) {
      m.simulator.fields = {{"noise_sd", rng.uniform(0.01, 0.3)},
                            {"x0", rng.uniform(0.5, 2.0)}};
    }
    dims = m.simulator.type == "birth-death-ssa" ? 2 : 1;
    for (std::size_t d = 0; d < dims; ++d) {
      const double lo = rng.uniform(0.0, 1.0);
      m.prior.push_back(UniformDim{lo, lo + rng.uniform(0.5, 3.0)});
    }
  }
  if (needs_kernel || rng.uniform() < 0.5) {
    for (std::size_t d = 0; d < dims; ++d) {
      m.kernel_sigma.push_back(rng.uniform(0.05, 0.5));
    }
    m.kernel_reflect = rng.uniform() < 0.5;
  }
  return m;
}

RunConfig random_config(RandomStream& rng, int index) {
  static const char* kAlgorithms[] = {"reject", "smc", "reject-joint",
                                      "smc-joint"};
  static const char* kNames[] = {"alpha", "beta", "gamma"};
  RunConfig c;
  c.algorithm = kAlgorithms[rng.next_u64() % 4];
  c.n = 2 + static_cast<std::size_t>(rng.next_u64() % 40);
  c.seed = rng.next_u64();
  c.workers = 1 + static_cast<unsigned>(rng.next_u64() % 8);
  c.max_attempts = c.n + rng.next_u64() % 90000;
  c.distance = rng.uniform() < 0.5 ? "euclidean" : "sumsq";
  c.hist_bins = 1 + static_cast<int>(rng.next_u64() % 40);
  c.output_dir = "results_" + std::to_string(index % 5);

  const std::size_t n_times = 2 + rng.next_u64() % 3;
  const std::size_t n_species = 1 + rng.next_u64() % 2;
  for (std::size_t i = 0; i < n_times; ++i) {
    c.observed.times.push_back(0.5 * static_cast<double>(i + 1));
    std::vector<double> row;
    for (std::size_t s = 0; s < n_species; ++s) row.push_back(rng.uniform());
    c.observed.values.push_back(row);
  }

  if (c.is_sequential()) {
    double eps = 2.0 + rng.uniform();
    const std::size_t generations = 1 + rng.next_u64() % 3;
    for (std::size_t t = 0; t < generations; ++t) {
      c.schedule.push_back(eps);
      eps *= 0.5 + 0.3 * rng.uniform();
    }
  } else if (rng.uniform() < 0.15) {
    c.epsilon = std::numeric_limits<double>::infinity();
  } else {
    c.epsilon = rng.uniform(0.0, 3.0);
  }

  const std::size_t n_models = c.is_joint() ? 1 + rng.next_u64() % 3 : 1;
  for (std::size_t m = 0; m < n_models; ++m) {
    const std::string name = c.is_joint() ? kNames[m] : "model";
    c.models.push_back(random_model(rng, name, c.is_sequential()));
  }
  if (c.is_joint()) {
    double total = 0.0;
    for (std::size_t m = 0; m < n_models; ++m) {
      c.model_prior.push_back(0.1 + rng.uniform());
      total += c.model_prior.back();
    }
    for (double& w : c.model_prior) w /= total;
    if (c.algorithm == "smc-joint") {
      c.model_stay_prob = rng.uniform(0.05, 1.0);
    }
  } else {
    c.model_prior = {1.0};
  }
  return c;
}

/// A reject run that accepts generously, for exercising the output layer.
RunConfig quick_run_config() {
  RunConfig c = parse_config(kMinimalReject);
  c.n = 150;
  c.seed = 61001;
  c.max_attempts = 200000;
  c.hist_bins = 10;
  return c;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("parsing fills every optional field with its default") {
  const RunConfig c = parse_config(kMinimalReject);
  CHECK(c.algorithm == "reject");
  CHECK(c.n == 10);
  CHECK(c.seed == 0);
  CHECK(c.workers == 1);
  CHECK(c.max_attempts == 10'000'000);
  CHECK(c.distance == "euclidean");
  CHECK(c.epsilon == 1.5);
  CHECK(c.schedule.empty());
  CHECK(c.hist_bins == 20);
  CHECK(c.output_dir == "out");
  REQUIRE(c.models.size() == 1);
  CHECK(c.models[0].name == "model");
  CHECK(c.models[0].kernel_sigma.empty());
  CHECK(c.model_prior == std::vector<double>{1.0});
}

TEST_CASE("config errors name the offending key by path") {
  nlohmann::json base = nlohmann::json::parse(kMinimalReject);

  SUBCASE("broken JSON") {
    CHECK(contains(parse_error_of("{algorithm:"), "config is not valid JSON"));
  }
  SUBCASE("unknown algorithm lists the choices") {
    base["algorithm"] = "annealing";
    const std::string msg = parse_error_of(base.dump());
    CHECK(contains(msg, "/algorithm"));
    CHECK(contains(msg, "reject, smc, reject-joint, smc-joint"));
  }
  SUBCASE("unknown top-level key") {
    base["frobnicate"] = 1;
    const std::string msg = parse_error_of(base.dump());
    CHECK(contains(msg, "/frobnicate"));
    CHECK(contains(msg, "unknown key"));
  }
  SUBCASE("a rising schedule is rejected") {
    base["algorithm"] = "smc";
    base.erase("epsilon");
    base["schedule"] = {1.0, 2.0};
    base["model"]["kernel"] = {{"sigma", {0.3}}};
    const std::string msg = parse_error_of(base.dump());
    CHECK(contains(msg, "/schedule"));
    CHECK(contains(msg, "strictly decreasing"));
  }
  SUBCASE("unknown distances list the registry") {
    base["distance"] = "manhattan";
    const std::string msg = parse_error_of(base.dump());
    CHECK(contains(msg, "/distance"));
    CHECK(contains(msg, "euclidean"));
    CHECK(contains(msg, "sumsq"));
  }
  SUBCASE("negative tolerance") {
    base["epsilon"] = -1.0;
    CHECK(contains(parse_error_of(base.dump()), "/epsilon"));
  }
  SUBCASE("workers out of range") {
    base["workers"] = 0;
    CHECK(contains(parse_error_of(base.dump()), "/workers"));
    base["workers"] = 300;
    CHECK(contains(parse_error_of(base.dump()), "between 1 and 256"));
  }
  SUBCASE("sequential algorithms demand a kernel") {
    base["algorithm"] = "smc";
    base.erase("epsilon");
    base["schedule"] = {2.0, 1.0};
    CHECK(contains(parse_error_of(base.dump()),
                   "missing required key 'kernel'"));
  }
  SUBCASE("unknown simulator field") {
    base["model"]["simulator"]["fields"] = {{"stepp", 0.01}};
    const std::string msg = parse_error_of(base.dump());
    CHECK(contains(msg, "/model/simulator"));
    CHECK(contains(msg, "no field 'stepp'"));
  }
  SUBCASE("stay probability is only an smc-joint key") {
    base["model_stay_prob"] = 0.5;
    CHECK(contains(parse_error_of(base.dump()), "/model_stay_prob"));
  }
  SUBCASE("observed data must form a table") {
    base["observed"]["values"] = {{0.8}};
    CHECK(contains(parse_error_of(base.dump()), "/observed"));
  }
}

TEST_CASE("joint configs validate the model prior vector") {
  nlohmann::json base = nlohmann::json::parse(kMinimalReject);
  base["algorithm"] = "reject-joint";
  base["models"] = {base["model"], base["model"]};
  base.erase("model");

  nlohmann::json wrong_len = base;
  wrong_len["model_prior"] = {1.0};
  CHECK(contains(parse_error_of(wrong_len.dump()), "one probability per model"));

  nlohmann::json bad_sum = base;
  bad_sum["model_prior"] = {0.5, 0.4};
  CHECK(contains(parse_error_of(bad_sum.dump()), "sum to 1"));

  const RunConfig c = parse_config(base.dump());
  CHECK(c.model_prior == std::vector<double>{0.5, 0.5});
  CHECK(c.models[0].name == "m1");
  CHECK(c.models[1].name == "m2");
}

TEST_CASE("the string tolerance inf means accept everything") {
  nlohmann::json base = nlohmann::json::parse(kMinimalReject);
  base["epsilon"] = "inf";
  const RunConfig c = parse_config(base.dump());
  REQUIRE(c.epsilon.has_value());
  CHECK(std::isinf(*c.epsilon));

  base["epsilon"] = "huge";
  CHECK(contains(parse_error_of(base.dump()), "/epsilon"));
}

TEST_CASE("rendering a config and parsing it back is lossless") {
  RandomStream rng(99);
  for (int i = 0; i < 50; ++i) {
    CAPTURE(i);
    const RunConfig original = random_config(rng, i);
    const RunConfig reparsed = parse_config(render(original));
    CHECK(reparsed == original);
  }
  const RunConfig canonical = parse_config(kMinimalReject);
  CHECK(parse_config(render(canonical)) == canonical);
}

TEST_CASE("runs are reproducible per seed and distinct across seeds") {
  RunConfig config = quick_run_config();
  config.n = 40;
  const ResultBundle first = run(config);
  const ResultBundle again = run(config);
  config.seed = 61002;
  const ResultBundle other = run(config);

  REQUIRE(first.populations.size() == 1);
  CHECK(first.stats.attempts == first.stats.simulations);
  CHECK(first.stats.simulations == first.populations[0].simulations_used);
  CHECK(first.config_hash == fnv1a64(render(first.config)));

  const auto& a = first.populations[0].particles;
  const auto& b = again.populations[0].particles;
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta == b[i].theta);
  }
  CHECK(a[0].theta != other.populations[0].particles[0].theta);
}

TEST_CASE("joint runs report one marginal vector per generation") {
  const std::string text = R"json({
    "algorithm": "smc-joint",
    "n": 200,
    "seed": 61003,
    "max_attempts": 500000,
    "schedule": [1.5, 0.5],
    "observed": {"times": [0.0], "values": [[2.0]]},
    "models": [
      {"simulator": {"type": "bernoulli-count", "grid": [0.2, 0.5, 0.8]},
       "prior": [{"grid": [0.2, 0.5, 0.8]}],
       "kernel": {"sigma": [0.3]}},
      {"simulator": {"type": "bernoulli-count", "grid": [0.2, 0.5, 0.8]},
       "prior": [{"grid": [0.2, 0.5, 0.8]}],
       "kernel": {"sigma": [0.3]}}
    ]
  })json";
  const ResultBundle bundle = run(parse_config(text));
  REQUIRE(bundle.marginals.has_value());
  REQUIRE(bundle.marginals->per_generation.size() == 2);
  for (const std::vector<double>& marginal : bundle.marginals->per_generation) {
    REQUIRE(marginal.size() == 2);
    CHECK(marginal[0] + marginal[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("emission refuses weights that do not sum to 1") {
  RunConfig config = quick_run_config();
  config.n = 20;
  ResultBundle bundle = run(config);
  for (Particle& p : bundle.populations[0].particles) p.weight *= 0.5;
  const fs::path dir = fresh_dir("refuse");
  CHECK_THROWS_WITH_AS(emit_outputs(bundle, dir.string()),
                       "refusing to emit generation 1: weights do not sum to 1",
                       NumericError);
}

TEST_CASE("marginal rows are written with full precision") {
  nlohmann::json base = nlohmann::json::parse(kMinimalReject);
  base["algorithm"] = "reject-joint";
  base["models"] = {base["model"], base["model"], base["model"]};
  base.erase("model");
  base["n"] = 6;

  ResultBundle bundle;
  bundle.config = parse_config(base.dump());
  Population pop;
  pop.index = 1;
  pop.epsilon = 1.5;
  for (int i = 0; i < 6; ++i) {
    Particle p;
    p.model = i == 0 ? 0 : 1;
    p.theta = {0.5};
    p.weight = 1.0 / 6;
    pop.particles.push_back(p);
  }
  pop.simulations_used = 9;
  bundle.populations.push_back(pop);
  bundle.marginals = ModelMarginals{{{1.0 / 6, 5.0 / 6, 0.0}}};

  const fs::path dir = fresh_dir("marginals");
  emit_outputs(bundle, dir.string());
  const std::string expected =
      "generation,model,probability\n"
      "1,m1,0.16666666666666666\n"
      "1,m2,0.83333333333333337\n"
      "1,m3,0\n";
  CHECK(slurp(dir / "marginals.csv") == expected);
}

TEST_CASE("histogram fractions sum to one") {
  const RunConfig config = quick_run_config();
  const fs::path dir = fresh_dir("hist");
  emit_outputs(run(config), dir.string());

  std::ifstream in(dir / "hist_gen01_theta1.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "bin_lo,bin_hi,fraction");
  double total = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const std::size_t last_comma = line.rfind(',');
    REQUIRE(last_comma != std::string::npos);
    total += std::strtod(line.c_str() + last_comma + 1, nullptr);
    ++rows;
  }
  CHECK(rows == config.hist_bins);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the manifest hashes match the files on disk") {
  const RunConfig config = quick_run_config();
  const fs::path dir = fresh_dir("manifest");
  const Manifest manifest = emit_outputs(run(config), dir.string());

  CHECK(manifest.files.size() >= 3);
  CHECK(fs::exists(dir / "manifest.json"));
  for (const ManifestEntry& entry : manifest.files) {
    CAPTURE(entry.path);
    CHECK(entry.path != "manifest.json");
    const std::string bytes = slurp(dir / entry.path);
    CHECK(bytes.size() == entry.bytes);
    CHECK(hex16(fnv1a64(bytes)) == entry.fnv1a64);
  }
  CHECK(slurp(dir / "manifest.json") == render_manifest(manifest));
}

TEST_CASE("every result file is byte-identical across worker counts") {
  RunConfig config = quick_run_config();
  config.workers = 1;
  const fs::path serial_dir = fresh_dir("workers1");
  const Manifest serial = emit_outputs(run(config), serial_dir.string());

  config.workers = 8;
  const fs::path parallel_dir = fresh_dir("workers8");
  const Manifest parallel = emit_outputs(run(config), parallel_dir.string());

  REQUIRE(serial.files.size() == parallel.files.size());
  for (std::size_t i = 0; i < serial.files.size(); ++i) {
    CHECK(serial.files[i].path == parallel.files[i].path);
    CHECK(serial.files[i].fnv1a64 == parallel.files[i].fnv1a64);
    CHECK(slurp(serial_dir / serial.files[i].path) ==
          slurp(parallel_dir / parallel.files[i].path));
  }
}

TEST_CASE("the command line validates, runs, and reports budget failures") {
  const fs::path dir = fresh_dir("cli");
  const fs::path good = dir / "good.json";
  {
    std::ofstream out(good);
    nlohmann::json base = nlohmann::json::parse(kMinimalReject);
    base["n"] = 30;
    base["seed"] = 61004;
    base["output_dir"] = (dir / "results").string();
    out << base.dump(2);
  }

  const CliResult validated = run_cli("validate " + good.string(), dir);
  CHECK(validated.exit_code == 0);
  CHECK(contains(validated.out, "valid: reject"));

  const fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    nlohmann::json base = nlohmann::json::parse(kMinimalReject);
    base["epsilon"] = -2.0;
    out << base.dump(2);
  }
  const CliResult rejected = run_cli("validate " + bad.string(), dir);
  CHECK(rejected.exit_code == 2);
  CHECK(contains(rejected.err, "config error at /epsilon"));

  const CliResult ran = run_cli("run " + good.string(), dir);
  CHECK(ran.exit_code == 0);
  const nlohmann::json manifest = nlohmann::json::parse(ran.out);
  CHECK(manifest["algorithm"] == "reject");
  CHECK(manifest["seed"] == 61004);
  bool lists_summary = false;
  for (const auto& entry : manifest["files"]) {
    if (entry["path"] == "summary.json") lists_summary = true;
  }
  CHECK(lists_summary);
  CHECK(fs::exists(dir / "results" / "manifest.json"));
  CHECK(contains(ran.err, "running reject"));

  const CliResult env_run =
      run_cli("run " + good.string() + " --out " + (dir / "env_results").string(),
              dir, "ABC_WORKERS=4 ");
  CHECK(env_run.exit_code == 0);
  CHECK(nlohmann::json::parse(env_run.out)["workers"] == 4);

  const fs::path starved = dir / "starved.json";
  {
    std::ofstream out(starved);
    nlohmann::json base = nlohmann::json::parse(kMinimalReject);
    base["epsilon"] = 0.0;
    base["n"] = 5;
    base["max_attempts"] = 5;
    base["output_dir"] = (dir / "starved_results").string();
    out << base.dump(2);
  }
  const CliResult exhausted = run_cli("run " + starved.string(), dir);
  CHECK(exhausted.exit_code == 3);
  const std::string report = slurp(dir / "starved_results" / "error.json");
  CHECK(contains(report, "\"accepted\""));
  CHECK(contains(report, "\"attempts\""));
}

}  // TEST_SUITE
