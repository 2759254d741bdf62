#include "sparsemap/threshold_map.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "sparsemap/errors.hpp"

namespace sparsemap {

namespace {

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// DFS over index subsets in lexicographic order on sorted tuples; calls
// emit(product) at every node (non-homogeneous) or only at depth d.
template <typename Emit>
void walk_monomials(const Eigen::VectorXd& x, int degree, bool homogeneous, Emit&& emit) {
  const long n = x.size();
  std::vector<long> stack;
  std::vector<double> prod{1.0};
  auto dfs = [&](auto&& self, long start) -> void {
    for (long j = start; j < n; ++j) {
      stack.push_back(j);
      prod.push_back(prod.back() * x(j));
      if (!homogeneous || static_cast<int>(stack.size()) == degree) emit(prod.back());
      if (static_cast<int>(stack.size()) < degree) self(self, j + 1);
      stack.pop_back();
      prod.pop_back();
    }
  };
  dfs(dfs, 0);
}

}  // namespace

long FeatureSpec::feature_dim() const {
  if (kind == FeatureKind::Identity) return base_n;
  if (degree < 1) throw ConfigError("feature spec: degree must be >= 1");
  if (degree > base_n) throw ConfigError("feature spec: degree exceeds base dimension");
  if (homogeneous) return binomial(base_n, degree);
  long total = 0;
  for (int k = 1; k <= degree; ++k) total += binomial(base_n, k);
  return total;
}

std::uint8_t heaviside(double z) {
  if (std::isnan(z)) throw NumericError("heaviside: NaN argument");
  return z >= 0.0 ? 1 : 0;
}

Eigen::VectorXd tensor_expand(const Eigen::VectorXd& x, const FeatureSpec& spec) {
  if (spec.kind == FeatureKind::Identity) return x;
  if (spec.base_n != x.size())
    throw ConfigError("tensor_expand: input length does not match spec.base_n");
  Eigen::VectorXd out(spec.feature_dim());
  long pos = 0;
  walk_monomials(x, spec.degree, spec.homogeneous, [&](double v) { out(pos++) = v; });
  return out;
}

void validate_map(const ThresholdMap& map) {
  if (map.bias.size() != map.weights.rows())
    throw ConfigError("threshold map: bias length must equal weight rows");
  if (map.feature.feature_dim() != map.weights.cols())
    throw ConfigError("threshold map: weight columns must equal feature dimension");
}

ThresholdMap make_linear_map(Eigen::MatrixXd weights, Eigen::VectorXd bias) {
  ThresholdMap map;
  map.feature = FeatureSpec{FeatureKind::Identity, 1, false, weights.cols()};
  map.weights = std::move(weights);
  map.bias = std::move(bias);
  validate_map(map);
  return map;
}

BitVector apply_map(const ThresholdMap& map, const Eigen::VectorXd& x) {
  if (x.size() != map.feature.base_n)
    throw ConfigError("apply_map: input length does not match feature.base_n");
  Eigen::VectorXd z;
  if (map.feature.kind == FeatureKind::Identity) {
    z = map.weights * x - map.bias;
  } else {
    z = map.weights * tensor_expand(x, map.feature) - map.bias;
  }
  BitVector out(z.size());
  for (long i = 0; i < z.size(); ++i) out(i) = heaviside(z(i));
  return out;
}

BitMatrix apply_map_all(const ThresholdMap& map, const Eigen::MatrixXd& inputs) {
  if (inputs.cols() != map.feature.base_n)
    throw ConfigError("apply_map_all: input width does not match feature.base_n");
  Eigen::MatrixXd z;
  if (map.feature.kind == FeatureKind::Identity) {
    z = (inputs * map.weights.transpose()).rowwise() - map.bias.transpose();
  } else {
    z.resize(inputs.rows(), map.output_dim());
    for (long k = 0; k < inputs.rows(); ++k) {
      const Eigen::VectorXd phi = tensor_expand(inputs.row(k).transpose(), map.feature);
      z.row(k) = (map.weights * phi - map.bias).transpose();
    }
  }
  BitMatrix out(z.rows(), z.cols());
  for (long k = 0; k < z.rows(); ++k)
    for (long i = 0; i < z.cols(); ++i) out(k, i) = heaviside(z(k, i));
  return out;
}

RecallReport recall_errors(const ThresholdMap& map, const Dataset& data) {
  if (data.target_dim() != map.output_dim())
    throw ConfigError("recall_errors: target width does not match map output");
  const BitMatrix predicted = apply_map_all(map, data.inputs);
  RecallReport report;
  report.per_coordinate_errors = Eigen::VectorXi::Zero(map.output_dim());
  for (long k = 0; k < data.memories(); ++k) {
    bool exact = true;
    for (long i = 0; i < map.output_dim(); ++i) {
      if (predicted(k, i) != data.targets(k, i)) {
        ++report.per_coordinate_errors(i);
        ++report.total_bit_errors;
        exact = false;
      }
    }
    report.exact_rows += exact;
  }
  return report;
}

Dataset expand_dataset(const Dataset& data, const FeatureSpec& spec) {
  if (spec.base_n != data.input_dim())
    throw ConfigError("expand_dataset: spec.base_n does not match dataset");
  Dataset out;
  out.inputs.resize(data.memories(), spec.feature_dim());
  for (long k = 0; k < data.memories(); ++k)
    out.inputs.row(k) = tensor_expand(data.inputs.row(k).transpose(), spec).transpose();
  out.targets = data.targets;
  out.provenance = data.provenance;
  out.provenance.input_dist.reset();  // feature means are no longer the base means
  out.provenance.source = "derived:tensor";
  return out;
}

void save_map_json(const ThresholdMap& map, const std::filesystem::path& path) {
  validate_map(map);
  nlohmann::json j;
  j["m"] = map.output_dim();
  j["n"] = map.feature.base_n;
  j["feature"] = {
      {"kind", map.feature.kind == FeatureKind::Identity ? "identity" : "tensor"},
      {"degree", map.feature.degree},
      {"homogeneous", map.feature.homogeneous},
      {"base_n", map.feature.base_n},
  };
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(map.weights.size()));
  for (long r = 0; r < map.weights.rows(); ++r)
    for (long c = 0; c < map.weights.cols(); ++c) w.push_back(map.weights(r, c));
  j["W"] = w;
  j["b"] = std::vector<double>(map.bias.data(), map.bias.data() + map.bias.size());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

ThresholdMap load_map_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad map json: ") + e.what());
  }
  ThresholdMap map;
  const auto& f = j.at("feature");
  const std::string kind = f.at("kind").get<std::string>();
  if (kind == "identity") map.feature.kind = FeatureKind::Identity;
  else if (kind == "tensor") map.feature.kind = FeatureKind::Tensor;
  else throw ConfigError("bad feature kind: " + kind);
  map.feature.degree = f.at("degree").get<int>();
  map.feature.homogeneous = f.at("homogeneous").get<bool>();
  map.feature.base_n = f.at("base_n").get<long>();
  const long m = j.at("m").get<long>();
  const auto w = j.at("W").get<std::vector<double>>();
  const auto b = j.at("b").get<std::vector<double>>();
  const long dim = map.feature.feature_dim();
  if (static_cast<long>(b.size()) != m || static_cast<long>(w.size()) != m * dim)
    throw ConfigError("map json: W/b sizes inconsistent with dimensions");
  map.weights.resize(m, dim);
  for (long r = 0; r < m; ++r)
    for (long c = 0; c < dim; ++c) map.weights(r, c) = w[static_cast<std::size_t>(r * dim + c)];
  map.bias = Eigen::Map<const Eigen::VectorXd>(b.data(), m);
  validate_map(map);
  return map;
}

}  // namespace sparsemap
