#include "sparsemap/report.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "sparsemap/errors.hpp"
#include "sparsemap/stats.hpp"

namespace sparsemap {

namespace {

std::string now_utc_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

void append_num(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_num(std::string& out, long v) { out += std::to_string(v); }

template <typename... Cols>
void append_row(std::string& out, Cols... cols) {
  bool first = true;
  auto one = [&](auto v) {
    if (!first) out += ',';
    first = false;
    append_num(out, v);
  };
  (one(cols), ...);
  out += '\n';
}

}  // namespace

std::string version_string() {
#ifdef SPARSEMAP_VERSION
  return SPARSEMAP_VERSION;
#else
  return "0.0.0";
#endif
}

ReportWriter::ReportWriter(std::filesystem::path out_dir, std::string experiment,
                           std::string config_json, std::uint64_t root_seed)
    : dir_(std::move(out_dir)), config_json_(std::move(config_json)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
  manifest_.experiment = std::move(experiment);
  manifest_.config_hash_hex = hex64(fnv1a64(config_json_));
  manifest_.root_seed = root_seed;
  manifest_.started_utc = now_utc_iso();
  manifest_.tool_version = version_string();
}

void ReportWriter::add_file(const std::string& name, const std::string& contents) {
  const std::filesystem::path path = dir_ / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ConfigError("write failed: " + path.string());
  manifest_.outputs.push_back(
      {name, static_cast<std::uint64_t>(contents.size()), hex64(fnv1a64(contents))});
}

RunManifest ReportWriter::finish() {
  manifest_.finished_utc = now_utc_iso();
  nlohmann::json j;
  j["schema_version"] = 1;
  j["experiment"] = manifest_.experiment;
  j["config"] = nlohmann::json::parse(config_json_);
  j["config_hash"] = manifest_.config_hash_hex;
  j["root_seed"] = manifest_.root_seed;
  j["started"] = manifest_.started_utc;
  j["finished"] = manifest_.finished_utc;
  j["tool_version"] = manifest_.tool_version;
  j["outputs"] = nlohmann::json::array();
  for (const auto& f : manifest_.outputs)
    j["outputs"].push_back({{"name", f.name}, {"bytes", f.bytes}, {"fnv1a64", f.digest_hex}});
  const std::filesystem::path path = dir_ / "manifest.json";
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
  return manifest_;
}

std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows) {
  std::string out = "n,K,m,grid_value,trials,successes,prob,ci_low,ci_high,predicted_critical\n";
  for (const auto& r : rows)
    append_row(out, config.n, config.K, config.m, r.point, r.trials, r.successes, r.prob,
               r.ci_low, r.ci_high, r.predicted_critical);
  return out;
}

std::string sweep_plot_csv(const std::vector<SweepRow>& rows) {
  std::string out = "grid_value,prob\n";
  for (const auto& r : rows) append_row(out, r.point, r.prob);
  return out;
}

std::string hebb_csv(const HebbStorageConfig& config, const HebbStorageResult& result) {
  std::string out =
      "n,m,K,p,q,trials,zero_error_trials,zero_error_rate,mean_bit_error_rate,"
      "signal_ge_np3_freq,noise_le_np12_freq,mean_abs_noise\n";
  append_row(out, config.n, config.m, config.K, config.p, config.q, result.trials,
             result.zero_error_trials, result.zero_error_rate, result.mean_bit_error_rate,
             result.signal_ge_np3_freq, result.noise_le_np12_freq, result.mean_abs_noise);
  return out;
}

std::string autoencoder_csv(const AutoencoderConfig& config, const AutoencoderResult& result) {
  std::string out =
      "n,m,K,p,q,trials,forward_exact_rate,inverse_exact_rate,roundtrip_exact_rate\n";
  append_row(out, config.n, config.m, config.K, config.p, config.q, result.trials,
             result.forward_exact_rate, result.inverse_exact_rate, result.roundtrip_exact_rate);
  return out;
}

std::string faces_csv(long n, long N, long s, const FrequencyResult& result) {
  std::string out = "n,N,s,trials,successes,frequency,ci_low,ci_high\n";
  append_row(out, n, N, s, result.trials, result.successes, result.frequency, result.ci_low,
             result.ci_high);
  return out;
}

std::string core_csv(long n, long N, double epsilon, const CoreResult& result) {
  std::string out =
      "n,N,epsilon,radius,trials,all_contained_trials,containment_freq,ci_low,ci_high,"
      "probes_tested,probes_contained\n";
  append_row(out, n, N, epsilon, result.radius, result.all_probes_contained.trials,
             result.all_probes_contained.successes, result.all_probes_contained.frequency,
             result.all_probes_contained.ci_low, result.all_probes_contained.ci_high,
             result.probes_tested, result.probes_contained);
  return out;
}

std::string subgauss_csv(const std::vector<std::pair<long, SubgaussResult>>& by_n) {
  std::string out = "n,alpha_hat,allones_value,overflow_clamped\n";
  for (const auto& [n, r] : by_n)
    append_row(out, n, r.alpha_hat, r.allones_value, static_cast<long>(r.overflow_clamped));
  return out;
}

std::string mgf_csv(long n, const std::vector<MgfRow>& rows) {
  std::string out = "n,sigma2,lhs_estimate,lhs_stderr,rhs,pass\n";
  for (const auto& r : rows)
    append_row(out, n, r.sigma2, r.lhs_estimate, r.lhs_stderr, r.rhs, static_cast<long>(r.pass));
  return out;
}

std::string tail_csv(const std::vector<TailRow>& rows) {
  std::string out = "r,lower_bound,exact_tail,ratio,pass\n";
  for (const auto& r : rows)
    append_row(out, r.r, r.lower_bound, r.exact_tail, r.lower_bound / r.exact_tail,
               static_cast<long>(r.pass));
  return out;
}

std::string capacity_csv(const CapacityTable& table) {
  std::string out = "n,ones,count\n";
  for (std::size_t k = 0; k < table.count_by_ones.size(); ++k)
    append_row(out, static_cast<long>(table.n), static_cast<long>(k),
               table.count_by_ones[k]);
  out += "total,,";
  append_num(out, table.total);
  out += '\n';
  return out;
}

}  // namespace sparsemap
