#include "sparsemap/data_models.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "sparsemap/errors.hpp"

namespace sparsemap {

namespace {

constexpr std::uint64_t kInputStream = 0x1;
constexpr std::uint64_t kTargetStream = 0x2;

bool is_sparse(InputKind kind) {
  return kind == InputKind::SparseBernoulli || kind == InputKind::SparseUniform;
}

void check_density(const InputDistribution& dist) {
  if (is_sparse(dist.kind) && (dist.p <= 0.0 || dist.p > 1.0))
    throw ConfigError("sample_inputs: sparse kinds require 0 < p <= 1");
}

// Uniformly places `ones` ones into row by partial Fisher-Yates over indices.
template <typename Row>
void fill_exact_ones(Row row, long ones, CounterRng& rng, double one_value, double zero_value) {
  const long n = row.size();
  std::vector<long> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0L);
  for (long j = 0; j < ones; ++j) {
    const long pick = j + static_cast<long>(rng.uniform_index(static_cast<std::uint64_t>(n - j)));
    std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(pick)]);
  }
  row.setConstant(zero_value);
  for (long j = 0; j < ones; ++j) row(idx[static_cast<std::size_t>(j)]) = one_value;
}

}  // namespace

const char* to_string(InputKind kind) {
  switch (kind) {
    case InputKind::GaussianIid: return "gaussian_iid";
    case InputKind::SphereUniform: return "sphere_uniform";
    case InputKind::RademacherIid: return "rademacher_iid";
    case InputKind::BalancedBinary: return "balanced_binary";
    case InputKind::SparseBernoulli: return "sparse_bernoulli";
    case InputKind::SparseUniform: return "sparse_uniform";
  }
  return "unknown";
}

const char* to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::BernoulliIid: return "bernoulli_iid";
    case TargetKind::ExactSSparse: return "exact_s_sparse";
  }
  return "unknown";
}

InputKind input_kind_from_string(const std::string& name) {
  if (name == "gaussian_iid" || name == "gaussian") return InputKind::GaussianIid;
  if (name == "sphere_uniform" || name == "sphere") return InputKind::SphereUniform;
  if (name == "rademacher_iid" || name == "rademacher") return InputKind::RademacherIid;
  if (name == "balanced_binary" || name == "balanced") return InputKind::BalancedBinary;
  if (name == "sparse_bernoulli") return InputKind::SparseBernoulli;
  if (name == "sparse_uniform") return InputKind::SparseUniform;
  throw ConfigError("unknown input distribution: " + name);
}

TargetKind target_kind_from_string(const std::string& name) {
  if (name == "bernoulli_iid" || name == "bernoulli") return TargetKind::BernoulliIid;
  if (name == "exact_s_sparse" || name == "exact_s") return TargetKind::ExactSSparse;
  throw ConfigError("unknown target distribution: " + name);
}

long sparse_ones_count(double p, long n) {
  const double x = p * static_cast<double>(n);
  // round half to even
  const double r = std::nearbyint(x);
  return static_cast<long>(r);
}

Eigen::MatrixXd sample_inputs(const InputDistribution& dist, long n, long K, SeedSpec seed) {
  if (n < 1 || K < 1) throw ConfigError("sample_inputs: n and K must be >= 1");
  check_density(dist);
  Eigen::MatrixXd X(K, n);
  CounterRng rng(seed);
  const double hi = dist.binary_as_01 ? 1.0 : 1.0;
  const double lo = dist.binary_as_01 ? 0.0 : -1.0;
  switch (dist.kind) {
    case InputKind::GaussianIid:
      for (long k = 0; k < K; ++k)
        for (long j = 0; j < n; ++j) X(k, j) = rng.normal();
      break;
    case InputKind::SphereUniform:
      for (long k = 0; k < K; ++k) {
        for (long j = 0; j < n; ++j) X(k, j) = rng.normal();
        const double norm = X.row(k).norm();
        if (norm == 0.0) throw NumericError("sample_inputs: degenerate sphere draw");
        X.row(k) /= norm;
      }
      break;
    case InputKind::RademacherIid:
      for (long k = 0; k < K; ++k)
        for (long j = 0; j < n; ++j) X(k, j) = (rng.next_u64() >> 63) ? hi : lo;
      break;
    case InputKind::BalancedBinary: {
      const long ones = sparse_ones_count(0.5, n);
      for (long k = 0; k < K; ++k) {
        CounterRng row_rng(seed.child({static_cast<std::uint64_t>(k)}));
        fill_exact_ones(X.row(k), ones, row_rng, hi, lo);
      }
      break;
    }
    case InputKind::SparseBernoulli:
      for (long k = 0; k < K; ++k)
        for (long j = 0; j < n; ++j) X(k, j) = rng.bernoulli(dist.p) ? 1.0 : 0.0;
      break;
    case InputKind::SparseUniform: {
      const long ones = sparse_ones_count(dist.p, n);
      for (long k = 0; k < K; ++k) {
        CounterRng row_rng(seed.child({static_cast<std::uint64_t>(k)}));
        fill_exact_ones(X.row(k), ones, row_rng, 1.0, 0.0);
      }
      break;
    }
  }
  return X;
}

BitMatrix sample_targets(const TargetDistribution& dist, long m, long K, SeedSpec seed) {
  if (m < 1 || K < 1) throw ConfigError("sample_targets: m and K must be >= 1");
  BitMatrix Y = BitMatrix::Zero(K, m);
  switch (dist.kind) {
    case TargetKind::BernoulliIid: {
      if (dist.q <= 0.0 || dist.q >= 1.0)
        throw ConfigError("sample_targets: bernoulli_iid requires 0 < q < 1");
      CounterRng rng(seed);
      for (long k = 0; k < K; ++k)
        for (long i = 0; i < m; ++i) Y(k, i) = rng.bernoulli(dist.q) ? 1 : 0;
      break;
    }
    case TargetKind::ExactSSparse: {
      if (dist.s < 0 || dist.s > K)
        throw ConfigError("sample_targets: exact_s_sparse requires 0 <= s <= K");
      // Per column, a uniformly random s-subset of the K rows is set to 1.
      std::vector<long> idx(static_cast<std::size_t>(K));
      for (long i = 0; i < m; ++i) {
        CounterRng rng(seed.child({static_cast<std::uint64_t>(i)}));
        std::iota(idx.begin(), idx.end(), 0L);
        for (long j = 0; j < dist.s; ++j) {
          const long pick =
              j + static_cast<long>(rng.uniform_index(static_cast<std::uint64_t>(K - j)));
          std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(pick)]);
          Y(idx[static_cast<std::size_t>(j)], i) = 1;
        }
      }
      break;
    }
  }
  return Y;
}

Dataset make_dataset(const InputDistribution& in_dist, const TargetDistribution& tgt_dist,
                     long n, long m, long K, SeedSpec seed) {
  Dataset data;
  data.inputs = sample_inputs(in_dist, n, K, seed.child({kInputStream}));
  data.targets = sample_targets(tgt_dist, m, K, seed.child({kTargetStream}));
  data.provenance = Provenance{in_dist, tgt_dist, seed, "synthetic"};
  return data;
}

void validate_dataset(const Dataset& data) {
  if (data.inputs.rows() != data.targets.rows())
    throw ConfigError("dataset: inputs and targets row counts differ");
  if (data.inputs.rows() < 1) throw ConfigError("dataset: K must be >= 1");
  if (!data.inputs.allFinite()) throw ConfigError("dataset: inputs contain NaN/Inf");
  for (long k = 0; k < data.targets.rows(); ++k)
    for (long i = 0; i < data.targets.cols(); ++i)
      if (data.targets(k, i) > 1) throw ConfigError("dataset: targets must be bits");
}

HammingStats hamming_stats(const BitMatrix& targets) {
  const long K = targets.rows();
  const long m = targets.cols();
  if (K < 2) throw ConfigError("hamming_stats: needs at least two rows");
  HammingStats out;
  out.min = m + 1;
  out.max = 0;
  double total = 0.0;
  for (long a = 0; a < K; ++a) {
    for (long b = a + 1; b < K; ++b) {
      long d = 0;
      for (long i = 0; i < m; ++i) d += targets(a, i) != targets(b, i);
      out.min = std::min(out.min, d);
      out.max = std::max(out.max, d);
      total += static_cast<double>(d);
    }
  }
  const double pairs = 0.5 * static_cast<double>(K) * static_cast<double>(K - 1);
  out.mean = total / pairs;
  const double density =
      targets.cast<double>().sum() / (static_cast<double>(K) * static_cast<double>(m));
  out.theoretical_max = 2.0 * density * static_cast<double>(m);
  return out;
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (f == nullptr) throw ConfigError("cannot open for writing: " + path.string());
  const long n = data.input_dim();
  const long m = data.target_dim();
  for (long j = 0; j < n; ++j) std::fprintf(f, "%sx%ld", j == 0 ? "" : ",", j);
  for (long i = 0; i < m; ++i) std::fprintf(f, "%sy%ld", (n == 0 && i == 0) ? "" : ",", i);
  std::fprintf(f, "\n");
  for (long k = 0; k < data.memories(); ++k) {
    for (long j = 0; j < n; ++j)
      std::fprintf(f, "%s%.17g", j == 0 ? "" : ",", data.inputs(k, j));
    for (long i = 0; i < m; ++i)
      std::fprintf(f, "%s%d", (n == 0 && i == 0) ? "" : ",", static_cast<int>(data.targets(k, i)));
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty csv: " + path.string());
  long n = 0;
  long m = 0;
  {
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ',')) {
      if (!col.empty() && col[0] == 'x') ++n;
      else if (!col.empty() && col[0] == 'y') ++m;
      else throw ConfigError("csv header column must start with x or y: " + col);
    }
  }
  std::vector<double> xs;
  std::vector<std::uint8_t> ys;
  long K = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    long col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col < n) xs.push_back(std::stod(cell));
      else ys.push_back(static_cast<std::uint8_t>(std::stoi(cell)));
      ++col;
    }
    if (col != n + m) throw ConfigError("csv row has wrong column count");
    ++K;
  }
  Dataset data;
  data.inputs.resize(K, n);
  data.targets.resize(K, m);
  for (long k = 0; k < K; ++k) {
    for (long j = 0; j < n; ++j) data.inputs(k, j) = xs[static_cast<std::size_t>(k * n + j)];
    for (long i = 0; i < m; ++i) data.targets(k, i) = ys[static_cast<std::size_t>(k * m + i)];
  }
  data.provenance.source = "external";
  validate_dataset(data);
  return data;
}

namespace {
constexpr char kMagic[8] = {'S', 'M', 'D', 'S', '0', '0', '0', '1'};
}

void write_dataset_binary(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t dims[3] = {static_cast<std::uint64_t>(data.memories()),
                                 static_cast<std::uint64_t>(data.input_dim()),
                                 static_cast<std::uint64_t>(data.target_dim())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  for (long k = 0; k < data.memories(); ++k) {
    for (long j = 0; j < data.input_dim(); ++j) {
      const double v = data.inputs(k, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
  for (long k = 0; k < data.memories(); ++k)
    for (long i = 0; i < data.target_dim(); ++i)
      out.write(reinterpret_cast<const char*>(&data.targets(k, i)), 1);
  if (!out) throw ConfigError("write failed: " + path.string());
}

Dataset read_dataset_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + 8, kMagic))
    throw ConfigError("bad dataset container magic: " + path.string());
  std::uint64_t dims[3];
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  const long K = static_cast<long>(dims[0]);
  const long n = static_cast<long>(dims[1]);
  const long m = static_cast<long>(dims[2]);
  Dataset data;
  data.inputs.resize(K, n);
  data.targets.resize(K, m);
  for (long k = 0; k < K; ++k)
    for (long j = 0; j < n; ++j) {
      double v;
      in.read(reinterpret_cast<char*>(&v), sizeof(v));
      data.inputs(k, j) = v;
    }
  for (long k = 0; k < K; ++k)
    for (long i = 0; i < m; ++i) {
      char c;
      in.read(&c, 1);
      data.targets(k, i) = static_cast<std::uint8_t>(c);
    }
  if (!in) throw ConfigError("truncated dataset container: " + path.string());
  data.provenance.source = "external";
  validate_dataset(data);
  return data;
}

}  // namespace sparsemap
