// Command-line front end: seeded Monte Carlo experiment drivers with CSV +
// manifest emission. Exit codes: 0 success, 1 config error, 2 numerical or
// solver error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsemap/errors.hpp"
#include "sparsemap/experiments.hpp"
#include "sparsemap/report.hpp"

using namespace sparsemap;
using nlohmann::json;

namespace {

struct GlobalArgs {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir = "runs";
};

void add_common(CLI::App* cmd, GlobalArgs& g) {
  cmd->add_option("--seed", g.seed, "Root seed (all randomness flows from it)");
  cmd->add_option("--threads", g.threads, "Worker count (default: machine parallelism)");
  cmd->add_option("--out", g.out_dir, "Output directory for CSVs and the manifest");
}

json load_config_file(const std::string& path, const std::string& experiment,
                      const std::vector<std::string>& allowed_keys) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config json: ") + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
    throw ConfigError("config: missing or unsupported schema_version (expected 1)");
  if (!j.contains("experiment") || j["experiment"].get<std::string>() != experiment)
    throw ConfigError("config: experiment field must be \"" + experiment + "\"");
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version" || key == "experiment") continue;
    if (std::find(allowed_keys.begin(), allowed_keys.end(), key) == allowed_keys.end())
      throw ConfigError("config: unknown key \"" + key + "\"");
  }
  return j;
}

json input_dist_json(const InputDistribution& d) {
  return json{{"kind", to_string(d.kind)}, {"p", d.p}, {"binary_as_01", d.binary_as_01}};
}

json target_dist_json(const TargetDistribution& d) {
  return json{{"kind", to_string(d.kind)}, {"q", d.q}, {"s", d.s}};
}

InputDistribution input_dist_from_json(const json& j) {
  InputDistribution d;
  d.kind = input_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("p")) d.p = j.at("p").get<double>();
  if (j.contains("binary_as_01")) d.binary_as_01 = j.at("binary_as_01").get<bool>();
  return d;
}

TargetDistribution target_dist_from_json(const json& j) {
  TargetDistribution d;
  d.kind = target_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("q")) d.q = j.at("q").get<double>();
  if (j.contains("s")) d.s = j.at("s").get<long>();
  return d;
}

int run_sweep(const GlobalArgs& g, SweepConfig cfg, bool auto_grid) {
  cfg.seed = SeedSpec{g.seed, 0};
  if (auto_grid) {
    const double qstar = predict_transition_q(cfg.n, cfg.K);
    cfg.grid = {qstar / 4, qstar / 2, qstar, 2 * qstar, 4 * qstar};
  }
  json cj{{"schema_version", 1},
          {"experiment", "sweep"},
          {"n", cfg.n},
          {"K", cfg.K},
          {"m", cfg.m},
          {"variable", to_string(cfg.variable)},
          {"grid", cfg.grid},
          {"trials_per_point", cfg.trials_per_point},
          {"oracle", to_string(cfg.oracle)},
          {"input", input_dist_json(cfg.input_dist)},
          {"target", target_dist_json(cfg.target_dist)},
          {"seed", g.seed}};
  const auto rows = run_phase_sweep(cfg, g.threads);
  const auto estimate = estimate_crossing(rows);

  ReportWriter writer(g.out_dir, "sweep", cj.dump(2), g.seed);
  writer.add_file("sweep.csv", sweep_csv(cfg, rows));
  writer.add_file("sweep_plot.csv", sweep_plot_csv(rows));
  writer.finish();

  for (const auto& r : rows)
    std::printf("%s=%-12.6g prob=%.3f  [%.3f, %.3f]  trials=%ld solver_errors=%ld\n",
                to_string(cfg.variable), r.point, r.prob, r.ci_low, r.ci_high, r.trials,
                r.solver_errors);
  std::printf("crossing=%.6g (predicted %.6g)%s\n", estimate.crossing,
              rows.empty() ? 0.0 : rows.front().predicted_critical,
              estimate.extrapolated ? " [extrapolated]" : "");
  return 0;
}

int run_hebb(const GlobalArgs& g, HebbStorageConfig cfg) {
  cfg.seed = SeedSpec{g.seed, 0};
  json cj{{"schema_version", 1},
          {"experiment", "hebb"},
          {"n", cfg.n},
          {"m", cfg.m},
          {"K", cfg.K},
          {"p", cfg.p},
          {"q", cfg.q},
          {"center_x", cfg.variant.center_x},
          {"center_y", cfg.variant.center_y},
          {"transform",
           cfg.variant.transform == HebbTransform::None
               ? "none"
               : (cfg.variant.transform == HebbTransform::SignQuantize ? "sign_quantize"
                                                                       : "sparsify")},
          {"rho", cfg.variant.rho},
          {"bias",
           cfg.bias.kind == BiasKind::BinomialWindow
               ? "binomial_window"
               : (cfg.bias.kind == BiasKind::SubgaussianWindow ? "subgaussian_window"
                                                               : "explicit")},
          {"gamma", cfg.bias.gamma},
          {"trials", cfg.trials},
          {"seed", g.seed}};
  const auto res = hebb_storage_experiment(cfg, g.threads);
  ReportWriter writer(g.out_dir, "hebb", cj.dump(2), g.seed);
  writer.add_file("hebb.csv", hebb_csv(cfg, res));
  writer.finish();
  std::printf("zero_error_rate=%.3f mean_bit_error_rate=%.3g signal>=np/3: %.3f |noise|<=np/12: %.3f\n",
              res.zero_error_rate, res.mean_bit_error_rate, res.signal_ge_np3_freq,
              res.noise_le_np12_freq);
  return 0;
}

int run_autoencoder(const GlobalArgs& g, AutoencoderConfig cfg) {
  cfg.seed = SeedSpec{g.seed, 0};
  json cj{{"schema_version", 1}, {"experiment", "autoencoder"}, {"n", cfg.n},
          {"m", cfg.m},          {"K", cfg.K},                  {"p", cfg.p},
          {"q", cfg.q},          {"trials", cfg.trials},        {"seed", g.seed}};
  const auto res = autoencoder_roundtrip(cfg, g.threads);
  ReportWriter writer(g.out_dir, "autoencoder", cj.dump(2), g.seed);
  writer.add_file("autoencoder.csv", autoencoder_csv(cfg, res));
  writer.finish();
  if (res.regime_warning)
    std::fprintf(stderr, "warning: config violates a side condition (Kq log(Km) vs n or Kp log(Kn) vs m)\n");
  std::printf("forward=%.3f inverse=%.3f roundtrip=%.3f\n", res.forward_exact_rate,
              res.inverse_exact_rate, res.roundtrip_exact_rate);
  return 0;
}

int run_faces(const GlobalArgs& g, long n, long N, long s, long trials) {
  json cj{{"schema_version", 1}, {"experiment", "faces"}, {"n", n}, {"N", N},
          {"s", s},              {"trials", trials},      {"seed", g.seed}};
  const auto res = face_experiment(n, N, s, trials, SeedSpec{g.seed, 0}, g.threads);
  ReportWriter writer(g.out_dir, "faces", cj.dump(2), g.seed);
  writer.add_file("faces.csv", faces_csv(n, N, s, res));
  writer.finish();
  std::printf("face_frequency=%.3f [%.3f, %.3f] (%ld/%ld)\n", res.frequency, res.ci_low,
              res.ci_high, res.successes, res.trials);
  return 0;
}

int run_core(const GlobalArgs& g, long n, long N, double eps, long probes, long trials) {
  json cj{{"schema_version", 1}, {"experiment", "core"},   {"n", n},
          {"N", N},              {"epsilon", eps},         {"probes", probes},
          {"trials", trials},    {"seed", g.seed}};
  const auto res = core_experiment(n, N, eps, probes, trials, SeedSpec{g.seed, 0}, g.threads);
  ReportWriter writer(g.out_dir, "core", cj.dump(2), g.seed);
  writer.add_file("core.csv", core_csv(n, N, eps, res));
  writer.finish();
  if (res.regime_warning) std::fprintf(stderr, "warning: N/n < 10, outside the core regime\n");
  std::printf("radius=%.4f containment=%.3f probes %ld/%ld\n", res.radius,
              res.all_probes_contained.frequency, res.probes_contained, res.probes_tested);
  return 0;
}

int run_subgauss(const GlobalArgs& g, long n, const std::string& mode, long directions,
                 long samples, int tensor_degree, bool mgf,
                 const std::vector<double>& sigma2) {
  json cj{{"schema_version", 1}, {"experiment", "subgauss"},   {"n", n},
          {"mode", mode},        {"directions", directions},   {"samples", samples},
          {"tensor_degree", tensor_degree}, {"mgf", mgf},      {"sigma2", sigma2},
          {"seed", g.seed}};
  ReportWriter writer(g.out_dir, "subgauss", cj.dump(2), g.seed);
  if (mgf) {
    const auto rows = mgf_bound_check(sigma2, n, samples, SeedSpec{g.seed, 0});
    writer.add_file("mgf.csv", mgf_csv(n, rows));
    for (const auto& r : rows)
      std::printf("sigma2=%.4g lhs=%.6f rhs=%.6f %s\n", r.sigma2, r.lhs_estimate, r.rhs,
                  r.pass ? "pass" : "FAIL");
  } else if (tensor_degree > 1) {
    const auto res = subgauss_tensor_probe(n, tensor_degree, samples, SeedSpec{g.seed, 0});
    writer.add_file("subgauss.csv", subgauss_csv({{n, res}}));
    std::printf("alpha_hat(n=%ld, d=%d) = %.6f%s\n", n, tensor_degree, res.alpha_hat,
                res.overflow_clamped ? " (exp clamped)" : "");
  } else {
    const SubgaussMode m =
        mode == "exact" ? SubgaussMode::ExactEnumeration : SubgaussMode::MonteCarlo;
    const auto res = subgauss_norm_estimate(n, m, directions, samples, SeedSpec{g.seed, 0});
    writer.add_file("subgauss.csv", subgauss_csv({{n, res}}));
    std::printf("alpha_hat(n=%ld) = %.6f (all-ones %.6f, bound sqrt(8/3) = %.6f)\n", n,
                res.alpha_hat, res.allones_value, std::sqrt(8.0 / 3.0));
  }
  writer.finish();
  return 0;
}

int run_tailcheck(const GlobalArgs& g, const std::vector<double>& grid) {
  json cj{{"schema_version", 1}, {"experiment", "tailcheck"}, {"r", grid}, {"seed", g.seed}};
  const auto rows = gaussian_tail_check(grid);
  ReportWriter writer(g.out_dir, "tailcheck", cj.dump(2), g.seed);
  writer.add_file("tailcheck.csv", tail_csv(rows));
  writer.finish();
  for (const auto& r : rows)
    std::printf("r=%.3g lower=%.6e exact=%.6e %s\n", r.r, r.lower_bound, r.exact_tail,
                r.pass ? "pass" : "FAIL");
  return 0;
}

int run_count(const GlobalArgs& g, int n, std::optional<long> ones, bool emit) {
  if (ones) {
    const long c = enumerate_threshold_dichotomies(n, ones);
    std::printf("n=%d ones=%ld count=%ld\n", n, *ones, c);
    return 0;
  }
  const auto table = capacity_count_experiment(n, g.threads);
  for (std::size_t k = 0; k < table.count_by_ones.size(); ++k)
    std::printf("ones=%zu count=%ld\n", k, table.count_by_ones[k]);
  std::printf("total=%ld\n", table.total);
  if (emit) {
    json cj{{"schema_version", 1}, {"experiment", "count"}, {"n", n}, {"seed", g.seed}};
    ReportWriter writer(g.out_dir, "count", cj.dump(2), g.seed);
    writer.add_file("count.csv", capacity_csv(table));
    writer.finish();
  }
  return 0;
}

int run_dataset(const GlobalArgs& g, long n, long m, long K, const std::string& input_kind,
                double p, bool binary01, const std::string& target_kind, double q, long s,
                const std::string& format) {
  InputDistribution in;
  in.kind = input_kind_from_string(input_kind);
  in.p = p;
  in.binary_as_01 = binary01;
  TargetDistribution tgt;
  tgt.kind = target_kind_from_string(target_kind);
  tgt.q = q;
  tgt.s = s;
  const Dataset data = make_dataset(in, tgt, n, m, K, SeedSpec{g.seed, 0});

  json cj{{"schema_version", 1}, {"experiment", "dataset"},      {"n", n},
          {"m", m},              {"K", K},                       {"input", input_dist_json(in)},
          {"target", target_dist_json(tgt)},                     {"format", format},
          {"seed", g.seed}};
  ReportWriter writer(g.out_dir, "dataset", cj.dump(2), g.seed);
  if (format == "csv") {
    write_dataset_csv(data, writer.dir() / "dataset.csv");
  } else if (format == "binary") {
    write_dataset_binary(data, writer.dir() / "dataset.smds");
  } else {
    throw ConfigError("dataset: format must be csv or binary");
  }
  writer.finish();
  if (K >= 2) {
    const auto h = hamming_stats(data.targets);
    std::printf("hamming: min=%ld max=%ld mean=%.3f theoretical_max=%.3f\n", h.min, h.max,
                h.mean, h.theoretical_max);
  }
  std::printf("wrote %s dataset (K=%ld, n=%ld, m=%ld) to %s\n", format.c_str(), K, n, m,
              writer.dir().string().c_str());
  return 0;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::string cell;
  std::stringstream ss(csv);
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"threshold-map storage experiments"};
  app.require_subcommand(1);

  GlobalArgs g;

  // sweep
  auto* sweep = app.add_subcommand("sweep", "phase-transition sweep over q, s, or K");
  GlobalArgs gs = g;
  add_common(sweep, gs);
  std::string sweep_config;
  SweepConfig scfg;
  std::string sweep_var = "q";
  std::string sweep_oracle = "lp";
  std::string sweep_grid;
  std::string sweep_input = "gaussian_iid";
  double sweep_input_p = 0.5;
  sweep->add_option("--config", sweep_config, "JSON experiment config");
  sweep->add_option("--n", scfg.n, "input dimension");
  sweep->add_option("--k", scfg.K, "memories per trial");
  sweep->add_option("--m", scfg.m, "target dimension");
  sweep->add_option("--variable", sweep_var, "sweep variable: q, s, or K");
  sweep->add_option("--grid", sweep_grid, "comma-separated grid (default: q* multiples)");
  sweep->add_option("--trials", scfg.trials_per_point, "trials per grid point");
  sweep->add_option("--oracle", sweep_oracle, "success oracle: lp, hebb, perceptron");
  sweep->add_option("--input", sweep_input, "input distribution");
  sweep->add_option("--input-p", sweep_input_p, "input density (sparse kinds)");

  // hebb
  auto* hebb = app.add_subcommand("hebb", "Hebb storage experiment with diagnostics");
  GlobalArgs gh = g;
  add_common(hebb, gh);
  HebbStorageConfig hcfg;
  std::string hebb_transform = "none";
  std::string hebb_bias = "binomial_window";
  hebb->add_option("--n", hcfg.n, "input dimension");
  hebb->add_option("--m", hcfg.m, "target dimension");
  hebb->add_option("--k", hcfg.K, "memories");
  hebb->add_option("--p", hcfg.p, "input density");
  hebb->add_option("--q", hcfg.q, "target density");
  hebb->add_option("--trials", hcfg.trials, "trial count");
  hebb->add_flag("--center-x,!--no-center-x", hcfg.variant.center_x, "center inputs");
  hebb->add_flag("--center-y", hcfg.variant.center_y, "center targets");
  hebb->add_option("--transform", hebb_transform, "none, sign_quantize, sparsify");
  hebb->add_option("--rho", hcfg.variant.rho, "sparsify keep-probability");
  hebb->add_option("--bias", hebb_bias, "binomial_window, subgaussian_window");
  hebb->add_option("--gamma", hcfg.bias.gamma, "subgaussian window gamma");

  // autoencoder
  auto* autoenc = app.add_subcommand("autoencoder", "Hebb autoencoder round trips");
  GlobalArgs ga = g;
  add_common(autoenc, ga);
  AutoencoderConfig acfg;
  autoenc->add_option("--n", acfg.n, "input dimension");
  autoenc->add_option("--m", acfg.m, "hidden dimension");
  autoenc->add_option("--k", acfg.K, "memories");
  autoenc->add_option("--p", acfg.p, "input density");
  autoenc->add_option("--q", acfg.q, "hidden density");
  autoenc->add_option("--trials", acfg.trials, "trial count");

  // faces
  auto* faces = app.add_subcommand("faces", "Gaussian polytope face frequency");
  GlobalArgs gf = g;
  add_common(faces, gf);
  long fn = 40, fN = 400, fs = 4, ftrials = 100;
  faces->add_option("--n", fn, "ambient dimension");
  faces->add_option("--points", fN, "polytope points N");
  faces->add_option("--s", fs, "face subset size");
  faces->add_option("--trials", ftrials, "trial count");

  // core
  auto* core = app.add_subcommand("core", "round core containment probes");
  GlobalArgs gc = g;
  add_common(core, gc);
  long cn = 30, cN = 3000, cprobes = 50, ctrials = 20;
  double ceps = 0.3;
  core->add_option("--n", cn, "ambient dimension");
  core->add_option("--points", cN, "polytope points N");
  core->add_option("--epsilon", ceps, "radius shrink factor");
  core->add_option("--probes", cprobes, "probe points per trial");
  core->add_option("--trials", ctrials, "trial count");

  // subgauss
  auto* subgauss = app.add_subcommand("subgauss", "sub-gaussian norm estimates and MGF check");
  GlobalArgs gg = g;
  add_common(subgauss, gg);
  long sgn = 16, sg_dirs = 16, sg_samples = 1000000;
  std::string sg_mode = "exact";
  int sg_tensor = 1;
  bool sg_mgf = false;
  std::string sg_sigma = "0.25,0.5,0.75";
  subgauss->add_option("--n", sgn, "vector dimension");
  subgauss->add_option("--mode", sg_mode, "exact (n <= 20) or mc");
  subgauss->add_option("--directions", sg_dirs, "random directions beside all-ones");
  subgauss->add_option("--samples", sg_samples, "Monte Carlo draws");
  subgauss->add_option("--tensor-degree", sg_tensor, "probe <x,a>^d along all-ones");
  subgauss->add_flag("--mgf", sg_mgf, "check E exp(s2 X^2/2) <= 1/sqrt(1-s2)");
  subgauss->add_option("--sigma2", sg_sigma, "comma-separated sigma^2 grid for --mgf");

  // tailcheck
  auto* tail = app.add_subcommand("tailcheck", "Gaussian tail lower-bound check");
  GlobalArgs gt = g;
  add_common(tail, gt);
  std::string tail_grid = "1.5,2,3,4,6,8";
  tail->add_option("--r", tail_grid, "comma-separated r grid");

  // count
  auto* count = app.add_subcommand("count", "threshold Boolean function counts");
  GlobalArgs gn = g;
  add_common(count, gn);
  int count_n = 3;
  long count_ones = -1;
  bool count_emit = false;
  count->add_option("--n", count_n, "variables (<= 4 for the full table)");
  count->add_option("--ones", count_ones, "restrict to truth tables with this many ones");
  count->add_flag("--emit", count_emit, "also write count.csv + manifest");

  // predict
  auto* predict = app.add_subcommand("predict", "closed-form critical sparsity");
  long pn = 100, pk = 1000;
  bool uniform_s = false;
  predict->add_option("--n", pn, "input dimension")->required();
  predict->add_option("--k", pk, "memories")->required();
  predict->add_flag("--uniform-s", uniform_s, "print s* (all label assignments) instead of q*");

  // dataset
  auto* dataset = app.add_subcommand("dataset", "sample and serialize a dataset");
  GlobalArgs gd = g;
  add_common(dataset, gd);
  long dn = 100, dm = 10, dK = 50, ds = 0;
  double dp = 0.1, dq = 0.05;
  bool d01 = false;
  std::string dinput = "gaussian_iid", dtarget = "bernoulli_iid", dformat = "csv";
  dataset->add_option("--n", dn, "input dimension");
  dataset->add_option("--m", dm, "target dimension");
  dataset->add_option("--k", dK, "memories");
  dataset->add_option("--input", dinput, "input distribution kind");
  dataset->add_option("--p", dp, "input density (sparse kinds)");
  dataset->add_flag("--binary01", d01, "emit binary inputs as {0,1} instead of {-1,+1}");
  dataset->add_option("--target", dtarget, "target distribution kind");
  dataset->add_option("--q", dq, "target density (bernoulli)");
  dataset->add_option("--s", ds, "ones per column (exact_s_sparse)");
  dataset->add_option("--format", dformat, "csv or binary");

  try {
    app.parse(argc, argv);

    if (*sweep) {
      bool auto_grid = sweep_grid.empty();
      if (!sweep_config.empty()) {
        const json j = load_config_file(
            sweep_config, "sweep",
            {"n", "K", "m", "variable", "grid", "trials_per_point", "oracle", "input",
             "target", "seed"});
        if (j.contains("n")) scfg.n = j["n"].get<long>();
        if (j.contains("K")) scfg.K = j["K"].get<long>();
        if (j.contains("m")) scfg.m = j["m"].get<long>();
        if (j.contains("variable")) sweep_var = j["variable"].get<std::string>();
        if (j.contains("oracle")) sweep_oracle = j["oracle"].get<std::string>();
        if (j.contains("grid")) {
          scfg.grid = j["grid"].get<std::vector<double>>();
          auto_grid = false;
        }
        if (j.contains("trials_per_point"))
          scfg.trials_per_point = j["trials_per_point"].get<long>();
        if (j.contains("input")) scfg.input_dist = input_dist_from_json(j["input"]);
        if (j.contains("target")) scfg.target_dist = target_dist_from_json(j["target"]);
        if (j.contains("seed") && gs.seed == 0) gs.seed = j["seed"].get<std::uint64_t>();
      } else {
        scfg.input_dist.kind = input_kind_from_string(sweep_input);
        scfg.input_dist.p = sweep_input_p;
        if (!sweep_grid.empty()) scfg.grid = parse_grid(sweep_grid);
      }
      scfg.variable = sweep_variable_from_string(sweep_var);
      scfg.oracle = sweep_oracle_from_string(sweep_oracle);
      return run_sweep(gs, scfg, auto_grid);
    }
    if (*hebb) {
      if (hebb_transform == "none") hcfg.variant.transform = HebbTransform::None;
      else if (hebb_transform == "sign_quantize")
        hcfg.variant.transform = HebbTransform::SignQuantize;
      else if (hebb_transform == "sparsify") hcfg.variant.transform = HebbTransform::Sparsify;
      else throw ConfigError("unknown transform: " + hebb_transform);
      if (hebb_bias == "binomial_window") hcfg.bias.kind = BiasKind::BinomialWindow;
      else if (hebb_bias == "subgaussian_window") hcfg.bias.kind = BiasKind::SubgaussianWindow;
      else throw ConfigError("unknown bias policy: " + hebb_bias);
      hcfg.variant.mask_seed = SeedSpec{gh.seed, 7777};
      return run_hebb(gh, hcfg);
    }
    if (*autoenc) return run_autoencoder(ga, acfg);
    if (*faces) return run_faces(gf, fn, fN, fs, ftrials);
    if (*core) return run_core(gc, cn, cN, ceps, cprobes, ctrials);
    if (*subgauss)
      return run_subgauss(gg, sgn, sg_mode, sg_dirs, sg_samples, sg_tensor, sg_mgf,
                          parse_grid(sg_sigma));
    if (*tail) return run_tailcheck(gt, parse_grid(tail_grid));
    if (*count)
      return run_count(gn, count_n,
                       count_ones >= 0 ? std::optional<long>(count_ones) : std::nullopt,
                       count_emit);
    if (*predict) {
      if (uniform_s) std::printf("s* = %.9g\n", predict_uniform_s(pn, pk));
      else std::printf("q* = %.9g\n", predict_transition_q(pn, pk));
      return 0;
    }
    if (*dataset)
      return run_dataset(gd, dn, dm, dK, dinput, dp, d01, dtarget, dq, ds, dformat);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
