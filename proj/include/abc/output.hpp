#ifndef ABC_OUTPUT_HPP
#define ABC_OUTPUT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "abc/engine.hpp"

namespace abc {

struct ManifestEntry {
  std::string path;      // relative to the output directory
  std::uint64_t bytes = 0;
  std::string fnv1a64;   // 16 hex digits
};

struct Manifest {
  std::string algorithm;
  std::string config_hash;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double wall_time_ms = 0.0;
  std::vector<ManifestEntry> files;
};

/// Writes the bundle into `dir` (created if missing): one particle CSV per
/// generation, marginal probabilities for joint runs, per-parameter
/// posterior histograms, a summary, and manifest.json listing every other
/// file with its content hash. Each file lands via write-then-rename, so a
/// crash never leaves a half-written result. Only wall_time_ms (and worker
/// count, when overridden) distinguishes two runs of the same (config,
/// seed); every listed file is byte-identical. Refuses populations whose
/// weights do not sum to 1.
Manifest emit_outputs(const ResultBundle& bundle, const std::string& dir);

/// The manifest as JSON text, exactly the bytes of manifest.json.
std::string render_manifest(const Manifest& manifest);

/// Persists a diagnostic error.json (same write-then-rename discipline)
/// when a run dies mid-flight, so partial context survives the process.
void write_error_report(const std::string& dir, const std::string& algorithm,
                        const std::string& message, std::uint64_t accepted,
                        std::uint64_t attempts);

}  // namespace abc

#endif  // ABC_OUTPUT_HPP
