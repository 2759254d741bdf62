#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sparsemap/experiments.hpp"

namespace sparsemap {

std::string version_string();

struct OutputFile {
  std::string name;
  std::uint64_t bytes = 0;
  std::string digest_hex;  // FNV-1a 64 of the file contents
};

struct RunManifest {
  std::string experiment;
  std::string config_hash_hex;  // FNV-1a 64 of the canonical config JSON
  std::uint64_t root_seed = 0;
  std::string started_utc;
  std::string finished_utc;
  std::string tool_version;
  std::vector<OutputFile> outputs;
};

/// Writes experiment outputs plus a manifest.json into out_dir. Data files
/// are byte-identical across re-runs with the same config and seed; the
/// manifest additionally carries wall-clock timestamps.
class ReportWriter {
 public:
  ReportWriter(std::filesystem::path out_dir, std::string experiment,
               std::string config_json, std::uint64_t root_seed);

  /// Writes `contents` to out_dir/name and records its digest.
  void add_file(const std::string& name, const std::string& contents);

  /// Writes manifest.json and returns the manifest.
  RunManifest finish();

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  RunManifest manifest_;
  std::string config_json_;
};

// Fixed-column CSV renderings (documented in the README).
std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows);
std::string sweep_plot_csv(const std::vector<SweepRow>& rows);  // grid_value, prob
std::string hebb_csv(const HebbStorageConfig& config, const HebbStorageResult& result);
std::string autoencoder_csv(const AutoencoderConfig& config, const AutoencoderResult& result);
std::string faces_csv(long n, long N, long s, const FrequencyResult& result);
std::string core_csv(long n, long N, double epsilon, const CoreResult& result);
std::string subgauss_csv(const std::vector<std::pair<long, SubgaussResult>>& by_n);
std::string mgf_csv(long n, const std::vector<MgfRow>& rows);
std::string tail_csv(const std::vector<TailRow>& rows);
std::string capacity_csv(const CapacityTable& table);

}  // namespace sparsemap
