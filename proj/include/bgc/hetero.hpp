#pragma once

#include "bgc/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bgc {

/// A group of identical workers.
struct WorkerTypeSpec {
  std::int64_t count = 0;  // tau_i
  Rational unit_time;      // expected time per partial gradient
};

struct HeteroPlan {
  int s = 0;
  int k = 0;
  std::vector<WorkerTypeSpec> types;
  /// Per-type load equalizing t_i * load_i, with sum load_i * tau_i = (s+1)k.
  std::vector<Rational> real_loads;
  /// Filled by round_plan: one entry per worker of each type.
  std::vector<std::vector<std::int64_t>> worker_loads;
  std::int64_t total_assigned = 0;
  /// max |t_i L_i - t_j L_j| / min t_i L_i over all workers; nullopt when some
  /// worker has zero expected time (unbounded error).
  std::optional<Rational> equalization_error;
  std::vector<std::string> warnings;

  std::int64_t workers() const;
  std::int64_t target_total() const { return static_cast<std::int64_t>(s + 1) * k; }
  bool rounded() const noexcept { return !worker_loads.empty(); }
};

/// Closed form for two worker types via the reduced ratio tau_1/tau_2.
HeteroPlan plan_two_types(int s, int k, const WorkerTypeSpec& first, const WorkerTypeSpec& second);

/// load_i = (s+1) k (1/t_i) / sum_j (tau_j / t_j).
HeteroPlan plan_m_types(int s, int k, std::span<const WorkerTypeSpec> types);

/// Floors each real load and hands out the remaining units one per worker,
/// largest fractional part first (ties go to the faster type).
HeteroPlan round_plan(HeteroPlan plan);

/// Parses "count:time,count:time,...".
std::vector<WorkerTypeSpec> parse_type_list(const std::string& text);

}  // namespace bgc
