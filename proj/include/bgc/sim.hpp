#pragma once

#include "bgc/encoder.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bgc {

using Vector = std::vector<double>;

/// N samples of dimension p, features stored row-major.
struct Samples {
  int dim = 0;
  std::vector<double> features;
  std::vector<double> labels;

  int size() const noexcept { return static_cast<int>(labels.size()); }
  std::span<const double> x(int i) const {
    return {features.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// One sample per line: p feature columns then the label.
Samples read_csv(std::istream& in, bool header);
Samples read_csv_file(const std::string& path, bool header);

struct SyntheticSpec {
  int samples = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  /// Features and the true model drawn from {-3..3}; labels are then exact
  /// integers (noise, if any, is rounded).
  bool integer_valued = false;
};

struct SyntheticData {
  Samples samples;
  Vector theta_true;
};

/// Standard-normal features and model (or small integers), labels
/// y = x^T theta_true + noise * N(0,1). Draws from mt19937_64 seeded with
/// seed_seq{seed_lo, seed_hi, 1}.
SyntheticData make_synthetic(const SyntheticSpec& spec);

/// Samples split into k contiguous partitions whose sizes differ by at most
/// one (the first N mod k partitions hold the extra sample).
class Dataset {
 public:
  Dataset(Samples samples, std::vector<int> offsets);

  const Samples& samples() const noexcept { return samples_; }
  int dim() const noexcept { return samples_.dim; }
  int partitions() const noexcept { return static_cast<int>(offsets_.size()) - 1; }
  int partition_begin(int j) const { return offsets_.at(static_cast<std::size_t>(j)); }
  int partition_end(int j) const { return offsets_.at(static_cast<std::size_t>(j) + 1); }
  int partition_size(int j) const { return partition_end(j) - partition_begin(j); }
  int partition_of(int sample) const;

 private:
  Samples samples_;
  std::vector<int> offsets_;
};

/// Throws ParameterError when N < k.
Dataset partition_dataset(Samples samples, int k);

/// k x p matrix whose rows are the partial gradients.
class GradientMatrix {
 public:
  GradientMatrix(int k, int p) : k_(k), p_(p), data_(static_cast<std::size_t>(k) * p, 0.0) {}

  int partitions() const noexcept { return k_; }
  int dim() const noexcept { return p_; }
  std::span<double> row(int j) {
    return {data_.data() + static_cast<std::size_t>(j) * p_, static_cast<std::size_t>(p_)};
  }
  std::span<const double> row(int j) const {
    return {data_.data() + static_cast<std::size_t>(j) * p_, static_cast<std::size_t>(p_)};
  }
  /// Column-wise sum in ascending partition order.
  Vector full_gradient() const;

 private:
  int k_;
  int p_;
  std::vector<double> data_;
};

/// Gradient of an additively separable loss restricted to one partition.
using PartialGradientFn =
    std::function<Vector(const Dataset& data, int partition, std::span<const double> theta)>;

/// sum over the partition of 2 x (x^T theta - y). Throws ParameterError on a
/// dimension mismatch.
Vector partial_gradient(const Dataset& data, int partition, std::span<const double> theta);

/// sum over all samples of (x^T theta - y)^2.
double least_squares_loss(const Samples& samples, std::span<const double> theta);

GradientMatrix compute_partials(const Dataset& data, std::span<const double> theta,
                                const PartialGradientFn& gradient = partial_gradient);

/// sum of g_j over the worker's partitions, ascending; no scaling.
Vector worker_compute(const EncodingMatrix& matrix, int worker, const GradientMatrix& gradients);

struct StragglerModel {
  enum class Kind { Fixed, UniformRandom, DelayRace };
  Kind kind = Kind::UniformRandom;
  std::vector<int> fixed;   // Fixed: the straggler set used every iteration
  double unit_time = 1.0;   // DelayRace: time = unit_time * load + Exp(noise_mean)
  double noise_mean = 1.0;

  /// "fixed:1,2,3" | "uniform" | "race" | "race:unit,noise".
  static StragglerModel parse(const std::string& text);
  std::string describe() const;
};

/// Always exactly s distinct workers, sorted.
std::vector<int> draw_stragglers(const StragglerModel& model, const EncodingMatrix& matrix,
                                 std::mt19937_64& rng);

struct IterationRecord {
  int iteration = 0;
  int selected_class = 0;
  std::vector<int> stragglers;
  double reconstruction_error = 0.0;  // || recovered - direct ||_inf
  double relative_error = 0.0;        // divided by || direct ||_inf
  double loss = 0.0;                  // after the step
  std::string theta_hash;             // FNV-1a over the bytes of theta
};

struct SimState {
  EncodingMatrix matrix;
  Dataset data;
  Vector theta;
  double lr = 0.0;
  std::mt19937_64 rng;
  PartialGradientFn gradient = partial_gradient;
  int iteration = 0;
};

/// Draws stragglers, collects the encoded results of the n - s received
/// workers (late results are discarded), decodes, and steps
/// theta <- theta - lr * g.
IterationRecord run_iteration(SimState& state, const StragglerModel& model);

struct SimConfig {
  int n = 0;
  int s = 0;
  int iterations = 0;
  double lr = 0.0;
  std::uint64_t seed = 0;
  StragglerModel model;
  std::optional<std::string> data_path;
  bool header = false;
  int synthetic_samples = 0;
  int synthetic_dim = 0;
  double noise = 0.0;
  bool integer_data = false;

  /// Throws ParameterError on inconsistent settings.
  void validate() const;
};

struct RunLog {
  SimConfig config;
  double initial_loss = 0.0;
  std::vector<IterationRecord> records;
  Vector final_theta;

  /// First line echoes the config, then one JSON object per iteration.
  std::string to_jsonl() const;
  std::string to_csv() const;
};

/// The dataset and state run_descent would start from. Straggler draws use
/// mt19937_64 seeded with seed_seq{seed_lo, seed_hi, 2}.
SimState make_state(const SimConfig& config);

RunLog run_descent(const SimConfig& config);

std::string hash_theta(std::span<const double> theta);

}  // namespace bgc
