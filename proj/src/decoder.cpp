#include "bgc/decoder.hpp"

#include <algorithm>
#include <string>

namespace bgc {

std::vector<std::uint8_t> DecodingVector::indicator(int n) const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
  for (int w : support) out.at(static_cast<std::size_t>(w)) = 1;
  return out;
}

StragglerScenario::StragglerScenario(std::vector<std::uint8_t> received)
    : received_(std::move(received)) {
  for (auto& v : received_) {
    if (v > 1) throw ParameterError("received indicator entries must be 0 or 1");
    received_count_ += v;
  }
}

StragglerScenario StragglerScenario::from_stragglers(int n, std::span<const int> stragglers) {
  if (n <= 0) throw ParameterError("worker count must be positive");
  std::vector<std::uint8_t> received(static_cast<std::size_t>(n), 1);
  for (int w : stragglers) {
    if (w < 0 || w >= n) {
      throw ParameterError("straggler index " + std::to_string(w) + " outside 0.." +
                           std::to_string(n - 1));
    }
    received[static_cast<std::size_t>(w)] = 0;
  }
  return StragglerScenario(std::move(received));
}

StragglerScenario StragglerScenario::all_received(int n) {
  return StragglerScenario(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1));
}

std::vector<int> StragglerScenario::received_workers() const {
  std::vector<int> out;
  for (int w = 0; w < workers(); ++w) {
    if (received_[static_cast<std::size_t>(w)]) out.push_back(w);
  }
  return out;
}

std::vector<int> StragglerScenario::stragglers() const {
  std::vector<int> out;
  for (int w = 0; w < workers(); ++w) {
    if (!received_[static_cast<std::size_t>(w)]) out.push_back(w);
  }
  return out;
}

DecodingVector class_vector(const CodeParams& params, int cls) {
  if (cls < 0 || cls > params.s) {
    throw ParameterError("class index " + std::to_string(cls) + " outside 0.." +
                         std::to_string(params.s));
  }
  DecodingVector a;
  a.class_index = cls;
  for (int w = cls; w < params.n; w += params.s + 1) a.support.push_back(w);
  return a;
}

std::vector<int> scan_order(const CodeParams& params) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(params.s) + 1);
  for (int c = params.r; c <= params.s; ++c) order.push_back(c);
  for (int c = 0; c < params.r; ++c) order.push_back(c);
  return order;
}

namespace {

void check_scenario(const CodeParams& params, const StragglerScenario& scenario) {
  if (scenario.workers() != params.n) {
    throw ParameterError("scenario covers " + std::to_string(scenario.workers()) +
                         " workers, expected " + std::to_string(params.n));
  }
}

// Walks the class members in ascending order, stopping at the first missing one.
bool class_complete(const CodeParams& params, const StragglerScenario& scenario, int cls,
                    SelectionStats* stats) {
  if (stats) ++stats->classes_visited;
  for (int w = cls; w < params.n; w += params.s + 1) {
    if (stats) ++stats->membership_checks;
    if (!scenario.received(w)) return false;
  }
  return true;
}

[[noreturn]] void infeasible(const StragglerScenario& scenario, const CodeParams& params) {
  throw InfeasibleScenario("no congruence class is complete: " +
                           std::to_string(scenario.received_count()) + " of " +
                           std::to_string(params.n) + " workers received, need at least " +
                           std::to_string(params.f));
}

}  // namespace

DecodingVector select_decoder(const CodeParams& params, const StragglerScenario& scenario,
                              SelectionStats* stats) {
  check_scenario(params, scenario);
  for (int cls : scan_order(params)) {
    if (class_complete(params, scenario, cls, stats)) return class_vector(params, cls);
  }
  infeasible(scenario, params);
}

DecodingVector select_decoder_fast(const CodeParams& params, const StragglerScenario& scenario,
                                   SelectionStats* stats) {
  check_scenario(params, scenario);
  const auto order = scan_order(params);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (class_complete(params, scenario, order[i], stats)) return class_vector(params, order[i]);
  }
  const int last = order.back();
  if (scenario.received_count() >= params.f) return class_vector(params, last);
  if (class_complete(params, scenario, last, stats)) return class_vector(params, last);
  infeasible(scenario, params);
}

}  // namespace bgc
