#include "bgc/sim.hpp"

#include "bgc/decoder.hpp"
#include "bgc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bgc {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

double parse_double(std::string_view field, int line_no = 0) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    const std::string where = line_no > 0 ? "line " + std::to_string(line_no) + ": " : "";
    throw FormatError(where + "'" + std::string(field) + "' is not a number");
  }
  return value;
}

}  // namespace

// --- data -------------------------------------------------------------------

Samples read_csv(std::istream& in, bool header) {
  Samples out;
  std::string line;
  int line_no = 0;
  bool skipped_header = !header;
  int columns = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() < 2) {
      throw FormatError("line " + std::to_string(line_no) + ": need at least one feature and a label");
    }
    if (columns < 0) {
      columns = static_cast<int>(row.size());
      out.dim = columns - 1;
    } else if (static_cast<int>(row.size()) != columns) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                        " columns, got " + std::to_string(row.size()));
    }
    out.features.insert(out.features.end(), row.begin(), row.end() - 1);
    out.labels.push_back(row.back());
  }
  if (out.labels.empty()) throw FormatError("no samples in CSV input");
  return out;
}

Samples read_csv_file(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_csv(in, header);
}

SyntheticData make_synthetic(const SyntheticSpec& spec) {
  if (spec.samples <= 0 || spec.dim <= 0) {
    throw ParameterError("synthetic data needs positive sample count and dimension");
  }
  auto rng = make_rng(spec.seed, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> small(-3, 3);
  const auto draw = [&] {
    return spec.integer_valued ? static_cast<double>(small(rng)) : normal(rng);
  };

  SyntheticData out;
  out.theta_true.resize(static_cast<std::size_t>(spec.dim));
  for (auto& v : out.theta_true) v = draw();

  auto& samples = out.samples;
  samples.dim = spec.dim;
  samples.features.resize(static_cast<std::size_t>(spec.samples) * static_cast<std::size_t>(spec.dim));
  samples.labels.resize(static_cast<std::size_t>(spec.samples));
  for (int i = 0; i < spec.samples; ++i) {
    double y = 0.0;
    for (int d = 0; d < spec.dim; ++d) {
      const double x = draw();
      samples.features[static_cast<std::size_t>(i) * static_cast<std::size_t>(spec.dim) +
                       static_cast<std::size_t>(d)] = x;
      y += x * out.theta_true[static_cast<std::size_t>(d)];
    }
    if (spec.noise > 0.0) {
      const double e = spec.noise * normal(rng);
      y += spec.integer_valued ? std::round(e) : e;
    }
    samples.labels[static_cast<std::size_t>(i)] = y;
  }
  return out;
}

Dataset::Dataset(Samples samples, std::vector<int> offsets)
    : samples_(std::move(samples)), offsets_(std::move(offsets)) {
  if (offsets_.size() < 2 || offsets_.front() != 0 || offsets_.back() != samples_.size() ||
      !std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw ParameterError("partition offsets must be sorted and span all samples");
  }
}

int Dataset::partition_of(int sample) const {
  if (sample < 0 || sample >= samples_.size()) throw ParameterError("sample index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), sample);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Dataset partition_dataset(Samples samples, int k) {
  const int count = samples.size();
  if (k <= 0) throw ParameterError("partition count must be positive");
  if (count < k) {
    throw ParameterError("cannot split " + std::to_string(count) + " samples into " +
                         std::to_string(k) + " nonempty partitions");
  }
  std::vector<int> offsets(static_cast<std::size_t>(k) + 1, 0);
  const int base = count / k;
  const int extra = count % k;
  for (int j = 0; j < k; ++j) {
    offsets[static_cast<std::size_t>(j) + 1] = offsets[static_cast<std::size_t>(j)] + base + (j < extra ? 1 : 0);
  }
  return Dataset(std::move(samples), std::move(offsets));
}

// --- gradients ----------------------------------------------------------------

Vector GradientMatrix::full_gradient() const {
  Vector total(static_cast<std::size_t>(p_), 0.0);
  for (int j = 0; j < k_; ++j) {
    const auto g = row(j);
    for (int d = 0; d < p_; ++d) total[static_cast<std::size_t>(d)] += g[static_cast<std::size_t>(d)];
  }
  return total;
}

Vector partial_gradient(const Dataset& data, int partition, std::span<const double> theta) {
  const int p = data.dim();
  if (static_cast<int>(theta.size()) != p) {
    throw ParameterError("theta has dimension " + std::to_string(theta.size()) + ", data has " +
                         std::to_string(p));
  }
  if (partition < 0 || partition >= data.partitions()) throw ParameterError("partition out of range");
  Vector g(static_cast<std::size_t>(p), 0.0);
  const auto& samples = data.samples();
  for (int i = data.partition_begin(partition); i < data.partition_end(partition); ++i) {
    const auto x = samples.x(i);
    double residual = -samples.labels[static_cast<std::size_t>(i)];
    for (int d = 0; d < p; ++d) residual += x[static_cast<std::size_t>(d)] * theta[static_cast<std::size_t>(d)];
    for (int d = 0; d < p; ++d) g[static_cast<std::size_t>(d)] += 2.0 * x[static_cast<std::size_t>(d)] * residual;
  }
  return g;
}

double least_squares_loss(const Samples& samples, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != samples.dim) throw ParameterError("theta dimension mismatch");
  double total = 0.0;
  for (int i = 0; i < samples.size(); ++i) {
    const auto x = samples.x(i);
    double residual = -samples.labels[static_cast<std::size_t>(i)];
    for (int d = 0; d < samples.dim; ++d) {
      residual += x[static_cast<std::size_t>(d)] * theta[static_cast<std::size_t>(d)];
    }
    total += residual * residual;
  }
  return total;
}

GradientMatrix compute_partials(const Dataset& data, std::span<const double> theta,
                                const PartialGradientFn& gradient) {
  GradientMatrix out(data.partitions(), data.dim());
  for (int j = 0; j < data.partitions(); ++j) {
    const Vector g = gradient(data, j, theta);
    if (static_cast<int>(g.size()) != data.dim()) throw ParameterError("partial gradient dimension mismatch");
    std::copy(g.begin(), g.end(), out.row(j).begin());
  }
  return out;
}

Vector worker_compute(const EncodingMatrix& matrix, int worker, const GradientMatrix& gradients) {
  if (gradients.partitions() != matrix.partitions()) {
    throw ParameterError("gradient matrix has the wrong number of partitions");
  }
  const auto& interval = matrix.row(worker);
  Vector sum(static_cast<std::size_t>(gradients.dim()), 0.0);
  for (int j = interval.start; j < interval.end(); ++j) {
    const auto g = gradients.row(j);
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += g[d];
  }
  return sum;
}

// --- stragglers -------------------------------------------------------------

StragglerModel StragglerModel::parse(const std::string& text) {
  StragglerModel model;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<std::string> fields;
  if (!args.empty()) {
    std::stringstream ss(args);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
  }
  if (kind == "fixed") {
    model.kind = Kind::Fixed;
    for (const auto& f : fields) {
      const double w = parse_double(f);
      if (w != std::floor(w)) throw FormatError("straggler index '" + f + "' is not an integer");
      model.fixed.push_back(static_cast<int>(w));
    }
  } else if (kind == "uniform") {
    model.kind = Kind::UniformRandom;
    if (!fields.empty()) throw FormatError("'uniform' takes no arguments");
  } else if (kind == "race") {
    model.kind = Kind::DelayRace;
    if (fields.size() > 2) throw FormatError("'race' takes at most unit,noise");
    if (fields.size() > 0) model.unit_time = parse_double(fields[0]);
    if (fields.size() > 1) model.noise_mean = parse_double(fields[1]);
  } else {
    throw FormatError("unknown straggler model '" + text + "' (fixed:..., uniform, race)");
  }
  return model;
}

std::string StragglerModel::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Fixed: {
      out << "fixed:";
      for (std::size_t i = 0; i < fixed.size(); ++i) out << (i ? "," : "") << fixed[i];
      break;
    }
    case Kind::UniformRandom:
      out << "uniform";
      break;
    case Kind::DelayRace:
      out << std::setprecision(17) << "race:" << unit_time << "," << noise_mean;
      break;
  }
  return out.str();
}

std::vector<int> draw_stragglers(const StragglerModel& model, const EncodingMatrix& matrix,
                                 std::mt19937_64& rng) {
  const int n = matrix.workers();
  const int s = matrix.params().s;
  std::vector<int> out;
  switch (model.kind) {
    case StragglerModel::Kind::Fixed: {
      out = model.fixed;
      std::sort(out.begin(), out.end());
      if (static_cast<int>(out.size()) != s || std::adjacent_find(out.begin(), out.end()) != out.end() ||
          (!out.empty() && (out.front() < 0 || out.back() >= n))) {
        throw ParameterError("fixed straggler set must hold exactly s distinct workers in 0..n-1");
      }
      return out;
    }
    case StragglerModel::Kind::UniformRandom: {
      std::vector<int> workers(static_cast<std::size_t>(n));
      std::iota(workers.begin(), workers.end(), 0);
      std::sample(workers.begin(), workers.end(), std::back_inserter(out), s, rng);
      return out;
    }
    case StragglerModel::Kind::DelayRace: {
      std::vector<double> finish(static_cast<std::size_t>(n));
      std::exponential_distribution<double> delay(model.noise_mean > 0 ? 1.0 / model.noise_mean : 1.0);
      for (int w = 0; w < n; ++w) {
        const double noise = model.noise_mean > 0 ? delay(rng) : 0.0;
        finish[static_cast<std::size_t>(w)] = model.unit_time * matrix.load(w) + noise;
      }
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return finish[static_cast<std::size_t>(a)] > finish[static_cast<std::size_t>(b)];
      });
      out.assign(order.begin(), order.begin() + s);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return out;
}

// --- descent ----------------------------------------------------------------

std::string hash_theta(std::span<const double> theta) {
  std::uint64_t h = 14695981039346656037ULL;
  for (double v : theta) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

IterationRecord run_iteration(SimState& state, const StragglerModel& model) {
  const auto& params = state.matrix.params();
  const GradientMatrix partials = compute_partials(state.data, state.theta, state.gradient);
  const Vector direct = partials.full_gradient();

  IterationRecord record;
  record.iteration = state.iteration;
  record.stragglers = draw_stragglers(model, state.matrix, state.rng);
  const auto scenario = StragglerScenario::from_stragglers(params.n, record.stragglers);

  // Only the n - s received workers report; straggler results are discarded.
  std::map<int, Vector> encoded;
  for (int w : scenario.received_workers()) encoded.emplace(w, worker_compute(state.matrix, w, partials));

  const DecodingVector a = select_decoder(params, scenario);
  const Vector recovered = recover_gradient(a, encoded);
  record.selected_class = a.class_index;

  double err = 0.0;
  double scale = 0.0;
  for (std::size_t d = 0; d < direct.size(); ++d) {
    err = std::max(err, std::abs(recovered[d] - direct[d]));
    scale = std::max(scale, std::abs(direct[d]));
  }
  record.reconstruction_error = err;
  if (scale > 0.0) {
    record.relative_error = err / scale;
  } else {
    record.relative_error = err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }

  for (std::size_t d = 0; d < state.theta.size(); ++d) state.theta[d] -= state.lr * recovered[d];
  record.loss = least_squares_loss(state.data.samples(), state.theta);
  record.theta_hash = hash_theta(state.theta);
  ++state.iteration;
  return record;
}

void SimConfig::validate() const {
  derive_params(n, s);
  if (iterations < 0) throw ParameterError("iteration count must be nonnegative");
  if (!std::isfinite(lr)) throw ParameterError("learning rate must be finite");
  if (!data_path && (synthetic_samples <= 0 || synthetic_dim <= 0)) {
    throw ParameterError("either a data file or a synthetic N,p must be given");
  }
  if (data_path && synthetic_samples > 0) throw ParameterError("data file and synthetic data are exclusive");
  if (noise < 0) throw ParameterError("noise must be nonnegative");
  if (model.kind == StragglerModel::Kind::Fixed) {
    std::set<int> distinct(model.fixed.begin(), model.fixed.end());
    if (static_cast<int>(distinct.size()) != s || static_cast<int>(model.fixed.size()) != s ||
        (!distinct.empty() && (*distinct.begin() < 0 || *distinct.rbegin() >= n))) {
      throw ParameterError("fixed straggler set must hold exactly s distinct workers in 0..n-1");
    }
  }
  if (model.kind == StragglerModel::Kind::DelayRace && (model.unit_time < 0 || model.noise_mean < 0)) {
    throw ParameterError("race model needs nonnegative unit time and noise");
  }
}

SimState make_state(const SimConfig& config) {
  config.validate();
  const auto params = derive_params(config.n, config.s);
  Samples samples;
  if (config.data_path) {
    samples = read_csv_file(*config.data_path, config.header);
  } else {
    samples = make_synthetic({config.synthetic_samples, config.synthetic_dim, config.seed, config.noise,
                              config.integer_data})
                  .samples;
  }
  const int dim = samples.dim;
  auto data = partition_dataset(std::move(samples), params.k);
  return SimState{build_encoding(params),
                  std::move(data),
                  Vector(static_cast<std::size_t>(dim), 0.0),
                  config.lr,
                  make_rng(config.seed, 2),
                  partial_gradient,
                  0};
}

RunLog run_descent(const SimConfig& config) {
  SimState state = make_state(config);
  RunLog log;
  log.config = config;
  log.initial_loss = least_squares_loss(state.data.samples(), state.theta);
  log.records.reserve(static_cast<std::size_t>(config.iterations));
  for (int it = 0; it < config.iterations; ++it) log.records.push_back(run_iteration(state, config.model));
  log.final_theta = state.theta;
  return log;
}

namespace {

nlohmann::json config_json(const SimConfig& c) {
  nlohmann::json j;
  j["n"] = c.n;
  j["s"] = c.s;
  j["iterations"] = c.iterations;
  j["lr"] = c.lr;
  j["seed"] = c.seed;
  j["straggler_model"] = c.model.describe();
  j["data"] = c.data_path ? nlohmann::json(*c.data_path) : nlohmann::json(nullptr);
  j["header"] = c.header;
  j["synthetic"] = c.data_path ? nlohmann::json(nullptr)
                               : nlohmann::json{{"samples", c.synthetic_samples}, {"dim", c.synthetic_dim}};
  j["noise"] = c.noise;
  j["integer_data"] = c.integer_data;
  return j;
}

}  // namespace

std::string RunLog::to_jsonl() const {
  std::string out;
  nlohmann::json head{{"config", config_json(config)}, {"initial_loss", initial_loss}};
  out += head.dump();
  out += '\n';
  for (const auto& r : records) {
    nlohmann::json j{{"iteration", r.iteration},
                     {"class", r.selected_class},
                     {"stragglers", r.stragglers},
                     {"reconstruction_error", r.reconstruction_error},
                     {"relative_error", r.relative_error},
                     {"loss", r.loss},
                     {"theta_hash", r.theta_hash}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string RunLog::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "iteration,class,stragglers,reconstruction_error,relative_error,loss,theta_hash\n";
  for (const auto& r : records) {
    out << r.iteration << ',' << r.selected_class << ',';
    for (std::size_t i = 0; i < r.stragglers.size(); ++i) out << (i ? ";" : "") << r.stragglers[i];
    out << ',' << r.reconstruction_error << ',' << r.relative_error << ',' << r.loss << ','
        << r.theta_hash << '\n';
  }
  return out.str();
}

}  // namespace bgc
