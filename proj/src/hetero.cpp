#include "bgc/hetero.hpp"

#include "bgc/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bgc {

using boost::multiprecision::cpp_int;

std::int64_t HeteroPlan::workers() const {
  std::int64_t total = 0;
  for (const auto& t : types) total += t.count;
  return total;
}

namespace {

void validate(int s, int k, std::span<const WorkerTypeSpec> types) {
  if (s < 0) throw ParameterError("s must be nonnegative");
  if (k <= 0) throw ParameterError("k must be positive");
  if (types.empty()) throw ParameterError("at least one worker type is required");
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (types[i].count <= 0) {
      throw ParameterError("worker type " + std::to_string(i + 1) + " has non-positive count");
    }
    if (types[i].unit_time <= 0) {
      throw ParameterError("worker type " + std::to_string(i + 1) + " has non-positive time");
    }
    if (i > 0 && types[i].unit_time < types[i - 1].unit_time) {
      throw ParameterError("worker types must be ordered from fastest to slowest");
    }
  }
}

std::vector<std::string> divisibility_warnings(int s, std::span<const WorkerTypeSpec> types) {
  std::int64_t n = 0;
  for (const auto& t : types) n += t.count;
  std::vector<std::string> warnings;
  if (n % (s + 1) != 0) {
    warnings.push_back("s+1 = " + std::to_string(s + 1) + " does not divide n = " +
                       std::to_string(n) + "; loads only approximately equalize completion times");
  }
  return warnings;
}

// Conditions (i) equal expected time and (ii) exact total.
void assert_conditions(const HeteroPlan& plan) {
  Rational total = 0;
  for (std::size_t i = 0; i < plan.types.size(); ++i) {
    total += plan.real_loads[i] * plan.types[i].count;
    if (plan.types[i].unit_time * plan.real_loads[i] !=
        plan.types[0].unit_time * plan.real_loads[0]) {
      throw Error("internal: planned loads do not equalize expected times");
    }
  }
  if (total != plan.target_total()) throw Error("internal: planned loads miss the total (s+1)k");
}

}  // namespace

HeteroPlan plan_two_types(int s, int k, const WorkerTypeSpec& first, const WorkerTypeSpec& second) {
  const WorkerTypeSpec both[] = {first, second};
  validate(s, k, both);
  const std::int64_t g = std::gcd(first.count, second.count);
  const Rational alpha(first.count / g);
  const Rational beta(second.count / g);
  const Rational& t1 = first.unit_time;
  const Rational& t2 = second.unit_time;
  const Rational total(static_cast<std::int64_t>(s + 1) * k);

  HeteroPlan plan;
  plan.s = s;
  plan.k = k;
  plan.types = {first, second};
  const Rational denom = alpha * t2 + beta * t1;
  plan.real_loads = {total * (alpha * t2 / denom) / first.count,
                     total * (beta * t1 / denom) / second.count};
  plan.equalization_error = Rational(0);
  plan.warnings = divisibility_warnings(s, both);
  assert_conditions(plan);
  return plan;
}

HeteroPlan plan_m_types(int s, int k, std::span<const WorkerTypeSpec> types) {
  validate(s, k, types);
  Rational weight = 0;
  for (const auto& t : types) weight += Rational(t.count) / t.unit_time;
  const Rational total(static_cast<std::int64_t>(s + 1) * k);

  HeteroPlan plan;
  plan.s = s;
  plan.k = k;
  plan.types.assign(types.begin(), types.end());
  for (const auto& t : types) plan.real_loads.push_back(total / t.unit_time / weight);
  plan.equalization_error = Rational(0);
  plan.warnings = divisibility_warnings(s, types);
  assert_conditions(plan);
  return plan;
}

HeteroPlan round_plan(HeteroPlan plan) {
  const std::size_t m = plan.types.size();
  if (plan.real_loads.size() != m) throw ParameterError("plan has no real loads to round");

  std::vector<cpp_int> floors(m);
  std::vector<Rational> fractions(m);
  cpp_int assigned = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& load = plan.real_loads[i];
    floors[i] = numerator(load) / denominator(load);  // loads are positive
    fractions[i] = load - Rational(floors[i]);
    assigned += floors[i] * plan.types[i].count;
  }
  cpp_int deficit = cpp_int(plan.target_total()) - assigned;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fractions[a] > fractions[b]; });

  std::vector<std::int64_t> bumped(m, 0);
  for (std::size_t i : order) {
    if (deficit <= 0) break;
    const cpp_int give = std::min(deficit, cpp_int(plan.types[i].count));
    bumped[i] = give.convert_to<std::int64_t>();
    deficit -= give;
  }
  if (deficit != 0) throw Error("internal: rounding could not reach the target total");

  plan.worker_loads.assign(m, {});
  plan.total_assigned = 0;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  for (std::size_t i = 0; i < m; ++i) {
    const auto base = floors[i].convert_to<std::int64_t>();
    auto& loads = plan.worker_loads[i];
    loads.assign(static_cast<std::size_t>(plan.types[i].count), base);
    std::fill_n(loads.begin(), bumped[i], base + 1);
    for (auto load : loads) plan.total_assigned += load;
    const auto consider = [&](std::int64_t load) {
      const Rational time = plan.types[i].unit_time * load;
      if (!lo || time < *lo) lo = time;
      if (!hi || time > *hi) hi = time;
    };
    if (bumped[i] < plan.types[i].count) consider(base);
    if (bumped[i] > 0) consider(base + 1);
  }
  if (*lo == 0) {
    plan.equalization_error.reset();
  } else {
    plan.equalization_error = (*hi - *lo) / *lo;
  }
  return plan;
}

std::vector<WorkerTypeSpec> parse_type_list(const std::string& text) {
  std::vector<WorkerTypeSpec> types;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw FormatError("worker type '" + item + "' is not of the form count:time");
    }
    const Rational count = parse_rational(item.substr(0, colon));
    if (denominator(count) != 1) throw FormatError("worker count in '" + item + "' is not an integer");
    types.push_back({numerator(count).convert_to<std::int64_t>(), parse_rational(item.substr(colon + 1))});
  }
  if (types.empty()) throw FormatError("empty worker type list");
  return types;
}

}  // namespace bgc
