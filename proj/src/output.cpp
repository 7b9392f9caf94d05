#include "abc/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include <json.hpp>

#include "abc/errors.hpp"

namespace abc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string pad2(std::size_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%02zu", v);
  return buf;
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return out;
}

void write_file_atomic(const fs::path& dir, const std::string& name,
                       const std::string& content) {
  const fs::path tmp = dir / ("." + name + ".tmp");
  const fs::path target = dir / name;
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

/// How many theta columns the particle tables carry: the widest particle
/// anywhere in the bundle (models may differ in dimension).
std::size_t theta_width(const ResultBundle& bundle) {
  std::size_t width = 0;
  for (const Population& pop : bundle.populations) {
    for (const Particle& p : pop.particles) {
      width = std::max(width, p.theta.size());
    }
  }
  return width;
}

std::string model_label(const ResultBundle& bundle, const Particle& p) {
  if (p.model.has_value()) {
    return bundle.config.models[static_cast<std::size_t>(*p.model)].name;
  }
  return bundle.config.models.front().name;
}

std::string population_csv(const ResultBundle& bundle, const Population& pop,
                           std::size_t width) {
  std::string out = "generation,model";
  for (std::size_t d = 1; d <= width; ++d) {
    out += ",theta_" + std::to_string(d);
  }
  out += ",weight,distance\n";
  for (const Particle& p : pop.particles) {
    out += std::to_string(pop.index);
    out += ',';
    out += model_label(bundle, p);
    for (std::size_t d = 0; d < width; ++d) {
      out += ',';
      if (d < p.theta.size()) out += fmt(p.theta[d]);
    }
    out += ',';
    out += fmt(p.weight);
    out += ',';
    out += fmt(p.distance);
    out += '\n';
  }
  return out;
}

std::string marginals_csv(const ResultBundle& bundle) {
  std::string out = "generation,model,probability\n";
  const ModelMarginals& marginals = *bundle.marginals;
  for (std::size_t g = 0; g < marginals.per_generation.size(); ++g) {
    const std::vector<double>& row = marginals.per_generation[g];
    for (std::size_t m = 0; m < row.size(); ++m) {
      out += std::to_string(bundle.populations[g].index);
      out += ',';
      out += bundle.config.models[m].name;
      out += ',';
      out += fmt(row[m]);
      out += '\n';
    }
  }
  return out;
}

/// Weighted histogram of one coordinate over the given particles, weights
/// renormalized so the emitted fractions sum to 1. A degenerate sample
/// (all values equal) widens to a unit interval around the point.
std::string histogram_csv(const std::vector<const Particle*>& particles,
                          std::size_t dim, int bins) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const Particle* p : particles) {
    lo = std::min(lo, p->theta[dim]);
    hi = std::max(hi, p->theta[dim]);
    total += p->weight;
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double span = hi - lo;
  std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
  for (const Particle* p : particles) {
    auto bin = static_cast<std::size_t>((p->theta[dim] - lo) / span *
                                        static_cast<double>(bins));
    if (bin >= mass.size()) bin = mass.size() - 1;  // value at the upper edge
    mass[bin] += p->weight / total;
  }
  std::string out = "bin_lo,bin_hi,fraction\n";
  for (std::size_t b = 0; b < mass.size(); ++b) {
    const double b_lo = lo + span * static_cast<double>(b) / bins;
    const double b_hi = lo + span * static_cast<double>(b + 1) / bins;
    out += fmt(b_lo);
    out += ',';
    out += fmt(b_hi);
    out += ',';
    out += fmt(mass[b]);
    out += '\n';
  }
  return out;
}

std::string summary_json(const ResultBundle& bundle) {
  json root;
  root["algorithm"] = bundle.config.algorithm;
  root["n"] = bundle.config.n;
  root["seed"] = bundle.stats.seed;
  root["distance"] = bundle.config.distance;
  json generations = json::array();
  for (const Population& pop : bundle.populations) {
    json g;
    g["index"] = pop.index;
    g["epsilon"] = std::isinf(pop.epsilon) ? json("inf") : json(pop.epsilon);
    g["accepted"] = pop.particles.size();
    g["simulations"] = pop.simulations_used;
    g["acceptance_rate"] = static_cast<double>(pop.particles.size()) /
                           static_cast<double>(pop.simulations_used);
    generations.push_back(g);
  }
  root["generations"] = generations;
  root["total_simulations"] = bundle.stats.simulations;
  if (bundle.marginals) {
    json names = json::array();
    for (const ModelConfig& m : bundle.config.models) names.push_back(m.name);
    root["model_names"] = names;
    root["marginals"] = bundle.marginals->per_generation;
  }
  return root.dump(2) + "\n";
}

}  // namespace

Manifest emit_outputs(const ResultBundle& bundle, const std::string& dir) {
  if (bundle.populations.empty()) {
    throw NumericError("refusing to emit a bundle with no populations");
  }
  for (const Population& pop : bundle.populations) {
    if (!pop.is_normalized()) {
      throw NumericError("refusing to emit generation " +
                         std::to_string(pop.index) +
                         ": weights do not sum to 1");
    }
  }

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const fs::path out_dir(dir);

  Manifest manifest;
  manifest.algorithm = bundle.config.algorithm;
  manifest.config_hash = hex64(bundle.config_hash);
  manifest.seed = bundle.stats.seed;
  manifest.workers = bundle.stats.workers;
  manifest.wall_time_ms = bundle.stats.wall_time_ms;

  auto emit = [&](const std::string& name, const std::string& content) {
    write_file_atomic(out_dir, name, content);
    manifest.files.push_back({name, content.size(), hex64(fnv1a64(content))});
  };

  const std::size_t width = theta_width(bundle);
  for (const Population& pop : bundle.populations) {
    emit("population_" + pad2(static_cast<std::size_t>(pop.index)) + ".csv",
         population_csv(bundle, pop, width));
  }

  if (bundle.marginals) emit("marginals.csv", marginals_csv(bundle));

  const bool joint = bundle.config.is_joint();
  for (const Population& pop : bundle.populations) {
    const std::string gen_tag =
        "hist_gen" + pad2(static_cast<std::size_t>(pop.index));
    for (std::size_t m = 0; m < bundle.config.models.size(); ++m) {
      std::vector<const Particle*> subset;
      for (const Particle& p : pop.particles) {
        const std::size_t owner =
            p.model.has_value() ? static_cast<std::size_t>(*p.model) : 0;
        if (owner == m) subset.push_back(&p);
      }
      if (subset.empty()) continue;
      double subset_weight = 0.0;
      for (const Particle* p : subset) subset_weight += p->weight;
      if (!(subset_weight > 0.0)) continue;
      const std::string model_tag =
          joint ? "_" + sanitize(bundle.config.models[m].name) : "";
      for (std::size_t d = 0; d < subset.front()->theta.size(); ++d) {
        emit(gen_tag + model_tag + "_theta" + std::to_string(d + 1) + ".csv",
             histogram_csv(subset, d, bundle.config.hist_bins));
      }
    }
  }

  emit("summary.json", summary_json(bundle));

  std::sort(manifest.files.begin(), manifest.files.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return a.path < b.path;
            });
  write_file_atomic(out_dir, "manifest.json", render_manifest(manifest));
  return manifest;
}

std::string render_manifest(const Manifest& manifest) {
  json root;
  root["algorithm"] = manifest.algorithm;
  root["config_hash"] = manifest.config_hash;
  root["seed"] = manifest.seed;
  root["workers"] = manifest.workers;
  root["wall_time_ms"] = manifest.wall_time_ms;
  json files = json::array();
  for (const ManifestEntry& f : manifest.files) {
    json entry;
    entry["path"] = f.path;
    entry["bytes"] = f.bytes;
    entry["fnv1a64"] = f.fnv1a64;
    files.push_back(entry);
  }
  root["files"] = files;
  return root.dump(2) + "\n";
}

void write_error_report(const std::string& dir, const std::string& algorithm,
                        const std::string& message, std::uint64_t accepted,
                        std::uint64_t attempts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  json root;
  root["algorithm"] = algorithm;
  root["error"] = message;
  root["accepted"] = accepted;
  root["attempts"] = attempts;
  write_file_atomic(fs::path(dir), "error.json", root.dump(2) + "\n");
}

}  // namespace abc
