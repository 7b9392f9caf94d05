#include "abc/config.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "abc/distance.hpp"
#include "abc/errors.hpp"
#include "abc/kernels.hpp"
#include "abc/schedule.hpp"

namespace abc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at " + (path.empty() ? "/" : path) + ": " +
                    what);
}

std::string quoted_list(const std::vector<const char*>& names) {
  std::string out;
  for (const char* k : names) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
}

const json& require(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(path, std::string("missing required key '") + key + "'");
  }
  return *it;
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::vector<const char*>& known) {
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const char* k : known) {
      if (item.key() == k) found = true;
    }
    if (!found) {
      fail(path + "/" + item.key(),
           "unknown key (known here: " + quoted_list(known) + ")");
    }
  }
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::vector<double> as_double_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_double(v[i], path + "/" + std::to_string(i)));
  }
  return out;
}

MarginalPrior parse_prior_dim(const json& v, const std::string& path) {
  expect_object(v, path);
  if (v.size() != 1) {
    fail(path, "a prior dimension is {\"uniform\": [lo, hi]} or "
               "{\"grid\": [values...]}");
  }
  if (v.contains("uniform")) {
    const std::vector<double> bounds = as_double_array(v["uniform"], path + "/uniform");
    if (bounds.size() != 2) fail(path + "/uniform", "expected [lo, hi]");
    return UniformDim{bounds[0], bounds[1]};
  }
  if (v.contains("grid")) {
    return GridDim{as_double_array(v["grid"], path + "/grid")};
  }
  fail(path, "unknown prior kind '" + v.items().begin().key() +
             "' (available: uniform, grid)");
}

ModelConfig parse_model(const json& v, const std::string& path,
                        bool kernel_required, const std::string& default_name) {
  expect_object(v, path);
  reject_unknown(v, path, {"name", "simulator", "prior", "kernel"});

  ModelConfig m;
  m.name = v.contains("name") ? as_string(v["name"], path + "/name") : default_name;
  if (m.name.empty()) fail(path + "/name", "model name must be non-empty");

  const json& sim = require(v, path, "simulator");
  const std::string sim_path = path + "/simulator";
  expect_object(sim, sim_path);
  reject_unknown(sim, sim_path, {"type", "fields", "grid"});
  m.simulator.type = as_string(require(sim, sim_path, "type"), sim_path + "/type");
  if (sim.contains("fields")) {
    const json& fields = sim["fields"];
    expect_object(fields, sim_path + "/fields");
    for (const auto& item : fields.items()) {
      m.simulator.fields.push_back(
          {item.key(),
           as_double(item.value(), sim_path + "/fields/" + item.key())});
    }
  }
  if (sim.contains("grid")) {
    m.simulator.grid = as_double_array(sim["grid"], sim_path + "/grid");
  }

  const json& prior = require(v, path, "prior");
  const std::string prior_path = path + "/prior";
  if (!prior.is_array() || prior.empty()) {
    fail(prior_path, "expected a non-empty array of prior dimensions");
  }
  for (std::size_t i = 0; i < prior.size(); ++i) {
    m.prior.push_back(
        parse_prior_dim(prior[i], prior_path + "/" + std::to_string(i)));
  }

  if (v.contains("kernel")) {
    const json& kernel = v["kernel"];
    const std::string kernel_path = path + "/kernel";
    expect_object(kernel, kernel_path);
    reject_unknown(kernel, kernel_path, {"sigma", "reflect"});
    m.kernel_sigma =
        as_double_array(require(kernel, kernel_path, "sigma"), kernel_path + "/sigma");
    if (kernel.contains("reflect")) {
      m.kernel_reflect = as_bool(kernel["reflect"], kernel_path + "/reflect");
    }
  } else if (kernel_required) {
    fail(path, "missing required key 'kernel' (sequential algorithms perturb "
               "resampled particles)");
  }
  return m;
}

/// Constructs the run-time objects a model needs, purely to surface
/// configuration mistakes at parse time with a path attached.
void check_model_buildable(const ModelConfig& m, const std::string& path,
                           const std::vector<double>& times) {
  PriorSpec prior;
  try {
    prior = PriorSpec(m.prior);
  } catch (const Error& e) {
    fail(path + "/prior", e.what());
  }
  try {
    make_builtin_simulator(m.simulator.type, m.simulator.fields,
                           m.simulator.grid, times);
  } catch (const Error& e) {
    fail(path + "/simulator", e.what());
  }
  if (!m.kernel_sigma.empty()) {
    try {
      make_param_kernel(m.kernel_sigma, m.kernel_reflect, prior);
    } catch (const Error& e) {
      fail(path + "/kernel", e.what());
    }
  }
}

json prior_dim_json(const MarginalPrior& dim) {
  json v;
  if (const auto* u = std::get_if<UniformDim>(&dim)) {
    v["uniform"] = {u->lo, u->hi};
  } else {
    v["grid"] = std::get<GridDim>(dim).values;
  }
  return v;
}

json model_json(const ModelConfig& m) {
  json v;
  v["name"] = m.name;
  v["simulator"]["type"] = m.simulator.type;
  if (!m.simulator.fields.empty()) {
    json fields;
    for (const SimulatorField& f : m.simulator.fields) fields[f.key] = f.value;
    v["simulator"]["fields"] = fields;
  }
  if (!m.simulator.grid.empty()) v["simulator"]["grid"] = m.simulator.grid;
  json prior = json::array();
  for (const MarginalPrior& dim : m.prior) prior.push_back(prior_dim_json(dim));
  v["prior"] = prior;
  if (!m.kernel_sigma.empty()) {
    v["kernel"]["sigma"] = m.kernel_sigma;
    v["kernel"]["reflect"] = m.kernel_reflect;
  }
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  expect_object(root, "");

  RunConfig c;
  c.algorithm = as_string(require(root, "", "algorithm"), "/algorithm");
  if (c.algorithm != "reject" && c.algorithm != "smc" &&
      c.algorithm != "reject-joint" && c.algorithm != "smc-joint") {
    fail("/algorithm", "unknown algorithm '" + c.algorithm +
                       "' (available: reject, smc, reject-joint, smc-joint)");
  }

  std::vector<const char*> known = {"algorithm", "n",         "seed",
                                    "workers",   "max_attempts", "distance",
                                    "observed",  "hist_bins", "output_dir"};
  known.push_back(c.is_sequential() ? "schedule" : "epsilon");
  if (c.is_joint()) {
    known.push_back("models");
    known.push_back("model_prior");
    if (c.algorithm == "smc-joint") known.push_back("model_stay_prob");
  } else {
    known.push_back("model");
  }
  reject_unknown(root, "", known);

  c.n = as_u64(require(root, "", "n"), "/n");
  const std::size_t min_n = c.is_sequential() ? 2 : 1;
  if (c.n < min_n) {
    fail("/n", "population size must be at least " + std::to_string(min_n) +
               " for algorithm '" + c.algorithm + "'");
  }

  if (root.contains("seed")) c.seed = as_u64(root["seed"], "/seed");
  if (root.contains("workers")) {
    c.workers = static_cast<unsigned>(as_u64(root["workers"], "/workers"));
    if (c.workers < 1 || c.workers > 256) {
      fail("/workers", "worker count must be between 1 and 256");
    }
  }
  if (root.contains("max_attempts")) {
    c.max_attempts = as_u64(root["max_attempts"], "/max_attempts");
    if (c.max_attempts < c.n) {
      fail("/max_attempts", "budget smaller than the population size");
    }
  }
  if (root.contains("distance")) {
    c.distance = as_string(root["distance"], "/distance");
  }
  try {
    distance_by_name(c.distance);
  } catch (const Error& e) {
    fail("/distance", e.what());
  }

  if (c.is_sequential()) {
    c.schedule = as_double_array(require(root, "", "schedule"), "/schedule");
    try {
      validate_schedule(c.schedule);
    } catch (const Error& e) {
      fail("/schedule", e.what());
    }
  } else {
    const json& eps = require(root, "", "epsilon");
    if (eps.is_string()) {
      const std::string word = eps.get<std::string>();
      if (word != "inf") {
        fail("/epsilon", "expected a number >= 0, or \"inf\"");
      }
      c.epsilon = std::numeric_limits<double>::infinity();
    } else {
      c.epsilon = as_double(eps, "/epsilon");
      if (*c.epsilon < 0.0) fail("/epsilon", "tolerance must be >= 0");
    }
  }

  const json& obs = require(root, "", "observed");
  expect_object(obs, "/observed");
  reject_unknown(obs, "/observed", {"times", "values"});
  c.observed.times = as_double_array(require(obs, "/observed", "times"),
                                     "/observed/times");
  const json& values = require(obs, "/observed", "values");
  if (!values.is_array()) fail("/observed/values", "expected an array of rows");
  for (std::size_t i = 0; i < values.size(); ++i) {
    c.observed.values.push_back(
        as_double_array(values[i], "/observed/values/" + std::to_string(i)));
  }
  try {
    c.observed.validate();
  } catch (const Error& e) {
    fail("/observed", e.what());
  }

  const bool kernel_required = c.is_sequential();
  if (c.is_joint()) {
    const json& models = require(root, "", "models");
    if (!models.is_array() || models.empty()) {
      fail("/models", "expected a non-empty array of models");
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
      c.models.push_back(parse_model(models[i],
                                     "/models/" + std::to_string(i),
                                     kernel_required,
                                     "m" + std::to_string(i + 1)));
    }
    if (root.contains("model_prior")) {
      c.model_prior = as_double_array(root["model_prior"], "/model_prior");
      if (c.model_prior.size() != c.models.size()) {
        fail("/model_prior", "expected one probability per model (" +
                             std::to_string(c.models.size()) + ")");
      }
      double total = 0.0;
      for (std::size_t i = 0; i < c.model_prior.size(); ++i) {
        if (!(c.model_prior[i] >= 0.0)) {
          fail("/model_prior/" + std::to_string(i),
               "probabilities must be >= 0");
        }
        total += c.model_prior[i];
      }
      if (std::abs(total - 1.0) > 1e-12) {
        fail("/model_prior", "probabilities must sum to 1");
      }
    } else {
      c.model_prior.assign(c.models.size(),
                           1.0 / static_cast<double>(c.models.size()));
    }
    if (root.contains("model_stay_prob")) {
      c.model_stay_prob = as_double(root["model_stay_prob"], "/model_stay_prob");
      if (!(c.model_stay_prob > 0.0) || c.model_stay_prob > 1.0) {
        fail("/model_stay_prob", "stay probability must be in (0, 1]");
      }
    }
  } else {
    c.models.push_back(
        parse_model(require(root, "", "model"), "/model", kernel_required, "model"));
    c.model_prior = {1.0};
  }

  if (root.contains("hist_bins")) {
    c.hist_bins = static_cast<int>(as_u64(root["hist_bins"], "/hist_bins"));
    if (c.hist_bins < 1) fail("/hist_bins", "need at least one bin");
  }
  if (root.contains("output_dir")) {
    c.output_dir = as_string(root["output_dir"], "/output_dir");
    if (c.output_dir.empty()) fail("/output_dir", "must be non-empty");
  }

  for (std::size_t i = 0; i < c.models.size(); ++i) {
    const std::string path =
        c.is_joint() ? "/models/" + std::to_string(i) : "/model";
    check_model_buildable(c.models[i], path, c.observed.times);
  }
  return c;
}

std::string render(const RunConfig& c) {
  json root;
  root["algorithm"] = c.algorithm;
  root["n"] = c.n;
  root["seed"] = c.seed;
  root["workers"] = c.workers;
  root["max_attempts"] = c.max_attempts;
  root["distance"] = c.distance;
  if (c.is_sequential()) {
    root["schedule"] = c.schedule;
  } else if (c.epsilon && std::isinf(*c.epsilon)) {
    root["epsilon"] = "inf";
  } else if (c.epsilon) {
    root["epsilon"] = *c.epsilon;
  }
  root["observed"]["times"] = c.observed.times;
  root["observed"]["values"] = c.observed.values;
  root["hist_bins"] = c.hist_bins;
  root["output_dir"] = c.output_dir;
  if (c.is_joint()) {
    json models = json::array();
    for (const ModelConfig& m : c.models) models.push_back(model_json(m));
    root["models"] = models;
    root["model_prior"] = c.model_prior;
    if (c.algorithm == "smc-joint") {
      root["model_stay_prob"] = c.model_stay_prob;
    }
  } else {
    root["model"] = model_json(c.models.front());
  }
  return root.dump(2) + "\n";
}

}  // namespace abc
