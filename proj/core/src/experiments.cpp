#include "sparsemap/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "sparsemap/errors.hpp"
#include "sparsemap/parallel.hpp"
#include "sparsemap/stats.hpp"

namespace sparsemap {

namespace {

// Stable stream ids so adding experiments never perturbs existing ones.
constexpr std::uint64_t kSweepId = 101;
constexpr std::uint64_t kHebbId = 102;
constexpr std::uint64_t kAutoencoderId = 103;
constexpr std::uint64_t kFacesId = 104;
constexpr std::uint64_t kCoreId = 105;
constexpr std::uint64_t kSubgaussId = 106;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Q: return "q";
    case SweepVariable::S: return "s";
    case SweepVariable::K: return "K";
  }
  return "?";
}

const char* to_string(SweepOracle o) {
  switch (o) {
    case SweepOracle::Lp: return "lp";
    case SweepOracle::Hebb: return "hebb";
    case SweepOracle::Perceptron: return "perceptron";
  }
  return "?";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "q") return SweepVariable::Q;
  if (name == "s") return SweepVariable::S;
  if (name == "K" || name == "k") return SweepVariable::K;
  throw ConfigError("unknown sweep variable: " + name);
}

SweepOracle sweep_oracle_from_string(const std::string& name) {
  if (name == "lp") return SweepOracle::Lp;
  if (name == "hebb") return SweepOracle::Hebb;
  if (name == "perceptron") return SweepOracle::Perceptron;
  throw ConfigError("unknown sweep oracle: " + name);
}

double predict_transition_q(long n, long K) {
  if (n < 1) throw ConfigError("predict_transition_q: n must be >= 1");
  if (K <= n)
    throw ConfigError("predict_transition_q: requires K > n (theorem regime K >> n)");
  const double ratio = static_cast<double>(K) / static_cast<double>(n);
  return static_cast<double>(n) / (2.0 * static_cast<double>(K) * std::log(ratio));
}

double predict_uniform_s(long n, long K) {
  if (n < 1) throw ConfigError("predict_uniform_s: n must be >= 1");
  const double floor_K = 2.0 * std::sqrt(std::numbers::pi) * static_cast<double>(n);
  if (static_cast<double>(K) <= floor_K)
    throw ConfigError("predict_uniform_s: requires K > 2 sqrt(pi) n");
  return static_cast<double>(n) /
         (2.0 * std::numbers::e * std::log(static_cast<double>(K) / floor_K));
}

double predict_transition_K(long n, double q) {
  if (n < 1 || q <= 0.0 || q >= 1.0)
    throw ConfigError("predict_transition_K: need n >= 1 and q in (0,1)");
  // 2 K q ln(K/n) is increasing in K for K > n; bisect on [n e^eps, huge].
  const double dn = static_cast<double>(n);
  auto f = [&](double K) { return 2.0 * K * q * std::log(K / dn) - dn; };
  double lo = dn * 1.0000001;
  double hi = dn * 2.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e18) throw NumericError("predict_transition_K: no crossing below 1e18");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct TrialVerdict {
  bool success = false;
  bool solver_error = false;
};

TrialVerdict sweep_trial(const SweepConfig& cfg, double grid_value, SeedSpec seed) {
  long K = cfg.K;
  TargetDistribution tgt = cfg.target_dist;
  switch (cfg.variable) {
    case SweepVariable::Q:
      tgt.kind = TargetKind::BernoulliIid;
      tgt.q = grid_value;
      break;
    case SweepVariable::S:
      tgt.kind = TargetKind::ExactSSparse;
      tgt.s = std::lround(grid_value);
      break;
    case SweepVariable::K:
      K = std::lround(grid_value);
      break;
  }
  const Dataset data = make_dataset(cfg.input_dist, tgt, cfg.n, cfg.m, K, seed);

  TrialVerdict verdict;
  switch (cfg.oracle) {
    case SweepOracle::Lp: {
      GeometryOptions geo;
      geo.early_verdict = true;  // the sweep consumes verdicts, not margins
      try {
        bool all = true;
        for (long i = 0; i < cfg.m && all; ++i) {
          const BitVector labels = data.targets.col(i);
          all = max_margin_separable(data.inputs, labels, geo).separable;
        }
        verdict.success = all;
      } catch (const SolverError&) {
        verdict.solver_error = true;
      }
      break;
    }
    case SweepOracle::Hebb: {
      const ThresholdMap map = hebb_train(data, cfg.hebb_variant, cfg.hebb_bias);
      verdict.success = recall_errors(map, data).total_bit_errors == 0;
      break;
    }
    case SweepOracle::Perceptron: {
      bool all = true;
      for (long i = 0; i < cfg.m && all; ++i) {
        Eigen::VectorXd labels(K);
        for (long k = 0; k < K; ++k) labels(k) = data.targets(k, i) ? 1.0 : -1.0;
        all = perceptron_train(data.inputs, labels, cfg.perceptron_max_epochs).converged;
      }
      verdict.success = all;
      break;
    }
  }
  return verdict;
}

}  // namespace

std::vector<SweepRow> run_phase_sweep(const SweepConfig& cfg, int threads) {
  if (cfg.grid.empty()) throw ConfigError("sweep: grid must be non-empty");
  for (std::size_t g = 1; g < cfg.grid.size(); ++g)
    if (cfg.grid[g] <= cfg.grid[g - 1])
      throw ConfigError("sweep: grid must be strictly increasing");
  if (cfg.trials_per_point < 1) throw ConfigError("sweep: trials_per_point must be >= 1");

  const long points = static_cast<long>(cfg.grid.size());
  const long total = points * cfg.trials_per_point;
  std::vector<TrialVerdict> verdicts(static_cast<std::size_t>(total));
  parallel_for(total, threads, [&](std::int64_t idx) {
    const long g = static_cast<long>(idx) / cfg.trials_per_point;
    const long t = static_cast<long>(idx) % cfg.trials_per_point;
    const SeedSpec trial_seed = cfg.seed.child(
        {kSweepId, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(t)});
    verdicts[static_cast<std::size_t>(idx)] = sweep_trial(cfg, cfg.grid[static_cast<std::size_t>(g)], trial_seed);
  });

  std::vector<SweepRow> rows(static_cast<std::size_t>(points));
  for (long g = 0; g < points; ++g) {
    SweepRow& row = rows[static_cast<std::size_t>(g)];
    row.point = cfg.grid[static_cast<std::size_t>(g)];
    for (long t = 0; t < cfg.trials_per_point; ++t) {
      const auto& v = verdicts[static_cast<std::size_t>(g * cfg.trials_per_point + t)];
      if (v.solver_error) ++row.solver_errors;
      else {
        ++row.trials;
        row.successes += v.success;
      }
    }
    if (row.trials > 0) {
      row.prob = static_cast<double>(row.successes) / static_cast<double>(row.trials);
      const Interval ci = wilson_interval(row.successes, row.trials);
      row.ci_low = ci.low;
      row.ci_high = ci.high;
    }
    row.predicted_critical = kNaN;
    try {
      switch (cfg.variable) {
        case SweepVariable::Q:
          row.predicted_critical = predict_transition_q(cfg.n, cfg.K);
          break;
        case SweepVariable::S:
          row.predicted_critical = predict_uniform_s(cfg.n, cfg.K);
          break;
        case SweepVariable::K:
          if (cfg.target_dist.kind == TargetKind::BernoulliIid)
            row.predicted_critical = predict_transition_K(cfg.n, cfg.target_dist.q);
          break;
      }
    } catch (const ConfigError&) {
      // outside the formula's regime; leave NaN
    }
  }
  return rows;
}

TransitionEstimate estimate_crossing(const std::vector<SweepRow>& rows) {
  std::vector<double> x;
  std::vector<double> succ;
  std::vector<double> tot;
  for (const auto& row : rows) {
    if (row.trials <= 0 || row.point <= 0.0) continue;
    x.push_back(std::log(row.point));
    succ.push_back(static_cast<double>(row.successes));
    tot.push_back(static_cast<double>(row.trials));
  }
  TransitionEstimate est;
  if (x.size() < 2) {
    est.extrapolated = true;
    est.crossing = kNaN;
    return est;
  }
  bool above = false;
  bool below = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = succ[i] / tot[i];
    above |= p > 0.5;
    below |= p < 0.5;
  }

  // Two-parameter logistic MLE in ln(parameter); small ridge keeps separated
  // grids (probs 1,1,0,0) finite with the crossing inside the bracket.
  const double ridge = 1e-6;
  double a = 0.0;
  double b = 0.0;
  for (int it = 0; it < 200; ++it) {
    double g0 = -ridge * a;
    double g1 = -ridge * b;
    double h00 = ridge;
    double h01 = 0.0;
    double h11 = ridge;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double eta = std::clamp(a + b * x[i], -30.0, 30.0);
      const double p = sigmoid(eta);
      const double w = tot[i] * p * (1.0 - p);
      g0 += succ[i] - tot[i] * p;
      g1 += (succ[i] - tot[i] * p) * x[i];
      h00 += w;
      h01 += w * x[i];
      h11 += w * x[i] * x[i];
    }
    const double det = h00 * h11 - h01 * h01;
    if (std::abs(det) < 1e-300) break;
    double da = (h11 * g0 - h01 * g1) / det;
    double db = (-h01 * g0 + h00 * g1) / det;
    const double step = std::max(std::abs(da), std::abs(db));
    if (step > 10.0) {
      da *= 10.0 / step;
      db *= 10.0 / step;
    }
    a += da;
    b += db;
    if (step < 1e-12) break;
  }
  est.intercept = a;
  est.slope = b;
  est.crossing = b != 0.0 ? std::exp(-a / b) : kNaN;
  const double lo = std::exp(x.front());
  const double hi = std::exp(x.back());
  est.extrapolated = !(above && below) || !(est.crossing >= lo && est.crossing <= hi);
  return est;
}

namespace {

struct HebbTrialStats {
  bool zero_errors = false;
  long bit_errors = 0;
  long cells = 0;
  long ones_cells = 0;
  long signal_ok = 0;
  long noise_ok = 0;
  double abs_noise_sum = 0.0;
};

}  // namespace

HebbStorageResult hebb_storage_experiment(const HebbStorageConfig& cfg, int threads) {
  if (cfg.trials < 1) throw ConfigError("hebb experiment: trials must be >= 1");
  const InputDistribution in_dist{InputKind::SparseBernoulli, cfg.p};
  const TargetDistribution tgt_dist{TargetKind::BernoulliIid, cfg.q, 0};

  std::vector<HebbTrialStats> stats(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, threads, [&](std::int64_t t) {
    const SeedSpec trial_seed = cfg.seed.child({kHebbId, 0, static_cast<std::uint64_t>(t)});
    const Dataset data = make_dataset(in_dist, tgt_dist, cfg.n, cfg.m, cfg.K, trial_seed);
    const Means means = resolve_means(data);
    const ThresholdMap map = hebb_train(data, cfg.variant, cfg.bias, means);
    const RecallReport recall = recall_errors(map, data);

    HebbTrialStats st;
    st.zero_errors = recall.total_bit_errors == 0;
    st.bit_errors = recall.total_bit_errors;
    st.cells = cfg.K * cfg.m;

    // Proof-step diagnostics over every (memory, coordinate) cell.
    const double np = means.input_mean.sum();
    const Eigen::MatrixXd totals = data.inputs * map.weights.transpose();  // K x m
    Eigen::MatrixXd x_hat = data.inputs;
    if (cfg.variant.center_x) x_hat.rowwise() -= means.input_mean.transpose();
    if (cfg.variant.transform == HebbTransform::SignQuantize)
      x_hat = x_hat.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
    const Eigen::VectorXd self_dots = (x_hat.array() * data.inputs.array()).rowwise().sum();
    Eigen::MatrixXd y_hat = data.targets.cast<double>();
    if (cfg.variant.center_y) y_hat.rowwise() -= means.target_mean.transpose();
    for (long k = 0; k < cfg.K; ++k) {
      for (long i = 0; i < cfg.m; ++i) {
        const double signal = y_hat(k, i) * self_dots(k);
        const double noise = totals(k, i) - signal;
        if (data.targets(k, i)) {
          ++st.ones_cells;
          st.signal_ok += signal >= np / 3.0;
        }
        st.noise_ok += std::abs(noise) <= np / 12.0;
        st.abs_noise_sum += std::abs(noise);
      }
    }
    stats[static_cast<std::size_t>(t)] = st;
  });

  HebbStorageResult out;
  out.trials = cfg.trials;
  long cells = 0;
  long ones = 0;
  long signal_ok = 0;
  long noise_ok = 0;
  long bit_errors = 0;
  double abs_noise = 0.0;
  for (const auto& st : stats) {
    out.zero_error_trials += st.zero_errors;
    bit_errors += st.bit_errors;
    cells += st.cells;
    ones += st.ones_cells;
    signal_ok += st.signal_ok;
    noise_ok += st.noise_ok;
    abs_noise += st.abs_noise_sum;
  }
  out.zero_error_rate = static_cast<double>(out.zero_error_trials) / static_cast<double>(cfg.trials);
  out.mean_bit_error_rate = static_cast<double>(bit_errors) / static_cast<double>(cells);
  out.signal_ge_np3_freq = ones > 0 ? static_cast<double>(signal_ok) / static_cast<double>(ones) : 1.0;
  out.noise_le_np12_freq = static_cast<double>(noise_ok) / static_cast<double>(cells);
  out.mean_abs_noise = abs_noise / static_cast<double>(cells);
  const double np = cfg.p * static_cast<double>(cfg.n);
  out.threshold_np3 = np / 3.0;
  out.threshold_np12 = np / 12.0;
  return out;
}

AutoencoderResult autoencoder_roundtrip(const AutoencoderConfig& cfg, int threads) {
  if (cfg.trials < 1) throw ConfigError("autoencoder: trials must be >= 1");
  const InputDistribution in_dist{InputKind::SparseBernoulli, cfg.p};
  const TargetDistribution tgt_dist{TargetKind::BernoulliIid, cfg.q, 0};

  AutoencoderResult out;
  out.trials = cfg.trials;
  const double Kd = static_cast<double>(cfg.K);
  out.regime_warning =
      Kd * cfg.q * std::log(Kd * static_cast<double>(cfg.m)) > static_cast<double>(cfg.n) / 5.0 ||
      Kd * cfg.p * std::log(Kd * static_cast<double>(cfg.n)) > static_cast<double>(cfg.m) / 5.0;

  std::vector<std::array<bool, 3>> flags(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, threads, [&](std::int64_t t) {
    const SeedSpec trial_seed =
        cfg.seed.child({kAutoencoderId, 0, static_cast<std::uint64_t>(t)});
    const Dataset data = make_dataset(in_dist, tgt_dist, cfg.n, cfg.m, cfg.K, trial_seed);
    const Means means = resolve_means(data);

    const Eigen::MatrixXd x_bar = data.inputs.rowwise() - means.input_mean.transpose();
    const Eigen::MatrixXd y_bar =
        data.targets.cast<double>().rowwise() - means.target_mean.transpose();
    const Eigen::MatrixXd w = y_bar.transpose() * x_bar;  // m x n

    ThresholdMap forward;
    forward.weights = w;
    forward.bias = Eigen::VectorXd::Constant(cfg.m, means.input_mean.sum() / 6.0);
    forward.feature = FeatureSpec{FeatureKind::Identity, 1, false, cfg.n};
    ThresholdMap inverse;
    inverse.weights = w.transpose();
    inverse.bias = Eigen::VectorXd::Constant(cfg.n, means.target_mean.sum() / 6.0);
    inverse.feature = FeatureSpec{FeatureKind::Identity, 1, false, cfg.m};

    const BitMatrix fwd = apply_map_all(forward, data.inputs);
    const bool fwd_exact = (fwd.array() == data.targets.array()).all();
    const BitMatrix inv = apply_map_all(inverse, data.targets.cast<double>());
    const bool inv_exact = (inv.cast<double>().array() == data.inputs.array()).all();
    const BitMatrix round = apply_map_all(inverse, fwd.cast<double>());
    const bool round_exact = (round.cast<double>().array() == data.inputs.array()).all();
    flags[static_cast<std::size_t>(t)] = {fwd_exact, inv_exact, round_exact};
  });

  long f = 0;
  long i = 0;
  long r = 0;
  for (const auto& fl : flags) {
    f += fl[0];
    i += fl[1];
    r += fl[2];
  }
  out.forward_exact_rate = static_cast<double>(f) / static_cast<double>(cfg.trials);
  out.inverse_exact_rate = static_cast<double>(i) / static_cast<double>(cfg.trials);
  out.roundtrip_exact_rate = static_cast<double>(r) / static_cast<double>(cfg.trials);
  return out;
}

FrequencyResult face_experiment(long n, long N, long s, long trials, SeedSpec seed,
                                int threads) {
  if (s < 1 || s > N) throw ConfigError("face_experiment: need 1 <= s <= N");
  if (trials < 1) throw ConfigError("face_experiment: trials must be >= 1");
  std::vector<long> subset(static_cast<std::size_t>(s));
  for (long i = 0; i < s; ++i) subset[static_cast<std::size_t>(i)] = i;
  const InputDistribution gauss{InputKind::GaussianIid};

  std::vector<char> outcome(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    const SeedSpec trial_seed = seed.child({kFacesId, 0, static_cast<std::uint64_t>(t)});
    const Eigen::MatrixXd points = sample_inputs(gauss, n, N, trial_seed);
    outcome[static_cast<std::size_t>(t)] = is_face(points, subset) ? 1 : 0;
  });

  FrequencyResult out;
  out.trials = trials;
  for (char c : outcome) out.successes += c;
  out.frequency = static_cast<double>(out.successes) / static_cast<double>(trials);
  const Interval ci = wilson_interval(out.successes, out.trials);
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  return out;
}

CoreResult core_experiment(long n, long N, double epsilon, long probes, long trials,
                           SeedSpec seed, int threads) {
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw ConfigError("core_experiment: epsilon must be in (0, 1]");
  if (probes < 1 || trials < 1)
    throw ConfigError("core_experiment: probes and trials must be >= 1");
  if (N <= n) throw ConfigError("core_experiment: needs N > n");
  const double radius =
      std::sqrt(2.0 * std::log(static_cast<double>(N) / static_cast<double>(n)) *
                (1.0 - epsilon));
  const InputDistribution gauss{InputKind::GaussianIid};

  struct TrialOut {
    bool all_contained = false;
    long contained = 0;
  };
  std::vector<TrialOut> outs(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    const SeedSpec trial_seed = seed.child({kCoreId, 0, static_cast<std::uint64_t>(t)});
    const Eigen::MatrixXd points = sample_inputs(gauss, n, N, trial_seed);
    CounterRng probe_rng(trial_seed.child({1}));
    TrialOut to;
    to.all_contained = true;
    for (long pr = 0; pr < probes; ++pr) {
      Eigen::VectorXd u(n);
      for (long j = 0; j < n; ++j) u(j) = probe_rng.normal();
      const double norm = u.norm();
      u = norm > 0.0 ? Eigen::VectorXd(radius * u / norm) : Eigen::VectorXd::Zero(n);
      if (in_hull(u, points)) ++to.contained;
      else to.all_contained = false;
    }
    outs[static_cast<std::size_t>(t)] = to;
  });

  CoreResult out;
  out.radius = radius;
  out.regime_warning = static_cast<double>(N) / static_cast<double>(n) < 10.0;
  out.all_probes_contained.trials = trials;
  for (const auto& to : outs) {
    out.all_probes_contained.successes += to.all_contained;
    out.probes_contained += to.contained;
  }
  out.probes_tested = probes * trials;
  out.all_probes_contained.frequency =
      static_cast<double>(out.all_probes_contained.successes) / static_cast<double>(trials);
  const Interval ci = wilson_interval(out.all_probes_contained.successes, trials);
  out.all_probes_contained.ci_low = ci.low;
  out.all_probes_contained.ci_high = ci.high;
  return out;
}

namespace {

// Marginal samples of <u, x>^degree with u = all-ones/sqrt(n), x Rademacher.
std::vector<double> allones_marginal_mc(long n, int degree, long samples, SeedSpec stream) {
  CounterRng rng(stream);
  std::vector<double> values(static_cast<std::size_t>(samples));
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (long sidx = 0; sidx < samples; ++sidx) {
    long acc = 0;
    long remaining = n;
    while (remaining > 0) {
      const int take = static_cast<int>(std::min<long>(remaining, 64));
      std::uint64_t word = rng.next_u64();
      if (take < 64) word &= (1ULL << take) - 1;
      acc += 2 * std::popcount(word) - take;
      remaining -= take;
    }
    const double base = static_cast<double>(acc) * inv_sqrt_n;
    values[static_cast<std::size_t>(sidx)] = std::pow(base, degree);
  }
  return values;
}

// Marginal samples of <u, x> for an arbitrary direction.
std::vector<double> direction_marginal_mc(const Eigen::VectorXd& u, long samples,
                                          SeedSpec stream) {
  CounterRng rng(stream);
  const long n = u.size();
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (long sidx = 0; sidx < samples; ++sidx) {
    double acc = 0.0;
    long j = 0;
    while (j < n) {
      std::uint64_t word = rng.next_u64();
      const long take = std::min<long>(n - j, 64);
      for (long bit = 0; bit < take; ++bit, ++j)
        acc += (word >> bit) & 1U ? u(j) : -u(j);
    }
    values[static_cast<std::size_t>(sidx)] = acc;
  }
  return values;
}

// Exact marginal values over all 2^n sign patterns via Gray-code updates.
std::vector<double> direction_marginal_exact(const Eigen::VectorXd& u) {
  const long n = u.size();
  const std::uint64_t count = 1ULL << n;
  std::vector<double> values(static_cast<std::size_t>(count));
  double current = -u.sum();  // pattern 0 = all bits clear = all -1
  values[0] = current;
  std::uint64_t prev_gray = 0;
  for (std::uint64_t i = 1; i < count; ++i) {
    const std::uint64_t gray = i ^ (i >> 1);
    const std::uint64_t flipped = gray ^ prev_gray;
    const int bit = std::countr_zero(flipped);
    // bit flips sign: +-2 u_bit depending on the new state
    current += (gray >> bit) & 1U ? 2.0 * u(bit) : -2.0 * u(bit);
    values[static_cast<std::size_t>(gray)] = current;
    prev_gray = gray;
  }
  return values;
}

struct Psi2Solve {
  double t = 0.0;
  bool clamped = false;
};

// Solves E exp(X^2/t^2) = 2 for t by bisection over cached marginal values.
Psi2Solve solve_psi2(const std::vector<double>& values) {
  bool clamped = false;
  auto mean_exp = [&](double t) {
    const double inv_t2 = 1.0 / (t * t);
    double total = 0.0;
    for (double v : values) {
      double e = v * v * inv_t2;
      if (e > 700.0) {
        e = 700.0;
        clamped = true;
      }
      total += std::exp(e);
    }
    return total / static_cast<double>(values.size());
  };
  double lo = 1e-3;
  double hi = 8.0;
  while (mean_exp(hi) > 2.0) {
    hi *= 2.0;
    if (hi > 1e9) throw NumericError("psi2 bisection: no upper bracket");
  }
  if (mean_exp(lo) < 2.0) throw NumericError("psi2 bisection: no lower bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_exp(mid) > 2.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), clamped};
}

}  // namespace

SubgaussResult subgauss_norm_estimate(long n, SubgaussMode mode, long directions,
                                      long samples, SeedSpec seed) {
  if (n < 1) throw ConfigError("subgauss_norm_estimate: n must be >= 1");
  if (mode == SubgaussMode::ExactEnumeration && n > 20)
    throw ConfigError("subgauss_norm_estimate: exact enumeration needs n <= 20");
  if (mode == SubgaussMode::MonteCarlo && samples < 1)
    throw ConfigError("subgauss_norm_estimate: samples must be >= 1");
  if (directions < 0) throw ConfigError("subgauss_norm_estimate: directions must be >= 0");

  SubgaussResult out;
  const Eigen::VectorXd allones =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));

  auto eval_direction = [&](const Eigen::VectorXd& u, bool is_allones,
                            std::uint64_t dir_index) {
    std::vector<double> values;
    if (mode == SubgaussMode::ExactEnumeration) {
      values = direction_marginal_exact(u);
    } else if (is_allones) {
      values = allones_marginal_mc(n, 1, samples, seed.child({kSubgaussId, 0}));
    } else {
      values = direction_marginal_mc(u, samples, seed.child({kSubgaussId, 2, dir_index}));
    }
    const Psi2Solve solved = solve_psi2(values);
    out.overflow_clamped |= solved.clamped;
    return solved.t;
  };

  out.allones_value = eval_direction(allones, true, 0);
  out.alpha_hat = out.allones_value;
  out.argmax_direction = allones;

  CounterRng dir_rng(seed.child({kSubgaussId, 1}));
  for (long d = 0; d < directions; ++d) {
    Eigen::VectorXd u(n);
    for (long j = 0; j < n; ++j) u(j) = dir_rng.normal();
    const double norm = u.norm();
    if (norm == 0.0) continue;
    u /= norm;
    const double t = eval_direction(u, false, static_cast<std::uint64_t>(d));
    if (t > out.alpha_hat) {
      out.alpha_hat = t;
      out.argmax_direction = u;
    }
  }
  return out;
}

SubgaussResult subgauss_tensor_probe(long n, int degree, long samples, SeedSpec seed) {
  if (n < 1) throw ConfigError("subgauss_tensor_probe: n must be >= 1");
  if (degree < 1) throw ConfigError("subgauss_tensor_probe: degree must be >= 1");
  if (samples < 1) throw ConfigError("subgauss_tensor_probe: samples must be >= 1");
  const std::vector<double> values =
      allones_marginal_mc(n, degree, samples, seed.child({kSubgaussId, 0}));
  const Psi2Solve solved = solve_psi2(values);
  SubgaussResult out;
  out.alpha_hat = solved.t;
  out.allones_value = solved.t;
  out.overflow_clamped = solved.clamped;
  out.argmax_direction =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  return out;
}

std::vector<MgfRow> mgf_bound_check(const std::vector<double>& sigma2_grid, long n,
                                    long samples, SeedSpec seed) {
  if (n < 1) throw ConfigError("mgf_bound_check: n must be >= 1");
  const bool exact = n <= 20;
  const Eigen::VectorXd allones =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> values;
  if (exact) values = direction_marginal_exact(allones);
  else values = allones_marginal_mc(n, 1, samples, seed.child({kSubgaussId, 0}));

  std::vector<MgfRow> rows;
  rows.reserve(sigma2_grid.size());
  for (double s2 : sigma2_grid) {
    if (s2 <= 0.0 || s2 >= 1.0)
      throw ConfigError("mgf_bound_check: sigma^2 must be in (0, 1), rhs diverges otherwise");
    MgfRow row;
    row.sigma2 = s2;
    row.rhs = 1.0 / std::sqrt(1.0 - s2);
    double total = 0.0;
    double total_sq = 0.0;
    for (double v : values) {
      const double e = std::exp(0.5 * s2 * v * v);
      total += e;
      total_sq += e * e;
    }
    const double count = static_cast<double>(values.size());
    row.lhs_estimate = total / count;
    if (!exact) {
      const double var = std::max(total_sq / count - row.lhs_estimate * row.lhs_estimate, 0.0);
      row.lhs_stderr = std::sqrt(var / count);
    }
    const double rel_se = row.lhs_stderr / std::max(row.lhs_estimate, 1e-300);
    row.pass = row.lhs_estimate <= row.rhs * (1.0 + 3.0 * rel_se);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TailRow> gaussian_tail_check(const std::vector<double>& r_grid) {
  std::vector<TailRow> rows;
  rows.reserve(r_grid.size());
  for (double r : r_grid) {
    if (r <= 0.0) throw ConfigError("gaussian_tail_check: r must be positive");
    TailRow row;
    row.r = r;
    row.lower_bound = (1.0 / r - 1.0 / (r * r * r)) * normal_pdf(r);
    row.exact_tail = normal_upper_tail(r);
    row.pass = row.lower_bound <= row.exact_tail;
    rows.push_back(row);
  }
  return rows;
}

CapacityTable capacity_count_experiment(int n, int threads) {
  if (n < 1 || n > 4)
    throw ConfigError("capacity_count_experiment: n must be in [1, 4]");
  const long V = 1L << n;
  const std::uint64_t masks = 1ULL << V;
  const Eigen::MatrixXd points = hypercube_vertices(n);

  std::vector<char> separable(static_cast<std::size_t>(masks));
  parallel_for(static_cast<std::int64_t>(masks), threads, [&](std::int64_t mask) {
    BitVector labels(V);
    for (long v = 0; v < V; ++v) labels(v) = (static_cast<std::uint64_t>(mask) >> v) & 1U ? 1 : 0;
    separable[static_cast<std::size_t>(mask)] =
        max_margin_separable(points, labels).separable ? 1 : 0;
  });

  CapacityTable table;
  table.n = n;
  table.count_by_ones.assign(static_cast<std::size_t>(V + 1), 0);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    if (!separable[static_cast<std::size_t>(mask)]) continue;
    ++table.count_by_ones[static_cast<std::size_t>(std::popcount(mask))];
    ++table.total;
  }
  return table;
}

}  // namespace sparsemap
