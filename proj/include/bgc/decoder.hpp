#pragma once

#include "bgc/error.hpp"
#include "bgc/params.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace bgc {

/// {0,1} selector over workers: the indicator of one congruence class.
struct DecodingVector {
  int class_index = 0;
  std::vector<int> support;  // ascending worker indices

  std::vector<std::uint8_t> indicator(int n) const;
  friend bool operator==(const DecodingVector&, const DecodingVector&) = default;
};

/// Which of the n workers returned a result.
class StragglerScenario {
 public:
  explicit StragglerScenario(std::vector<std::uint8_t> received);

  static StragglerScenario from_stragglers(int n, std::span<const int> stragglers);
  static StragglerScenario all_received(int n);

  int workers() const noexcept { return static_cast<int>(received_.size()); }
  bool received(int worker) const { return received_.at(static_cast<std::size_t>(worker)) != 0; }
  int received_count() const noexcept { return received_count_; }
  std::vector<int> received_workers() const;
  std::vector<int> stragglers() const;
  const std::vector<std::uint8_t>& indicator() const noexcept { return received_; }

 private:
  std::vector<std::uint8_t> received_;
  int received_count_ = 0;
};

/// Instrumentation for the selectors: one membership check is one lookup of
/// a worker in the received set.
struct SelectionStats {
  std::size_t membership_checks = 0;
  std::size_t classes_visited = 0;
};

/// Indicator of class i: all workers w with w = i (mod s+1).
DecodingVector class_vector(const CodeParams& params, int cls);

/// Class scan order of the online selector: 0..s when r == 0, otherwise
/// r..s followed by 0..r-1.
std::vector<int> scan_order(const CodeParams& params);

/// First class in scan order whose workers all returned.
/// Throws InfeasibleScenario when none does.
DecodingVector select_decoder(const CodeParams& params, const StragglerScenario& scenario,
                              SelectionStats* stats = nullptr);

/// Same as select_decoder but the last class in scan order is returned
/// unchecked when the others fail and at least n - s workers returned. With
/// fewer than n - s received, the last class is checked like the others.
DecodingVector select_decoder_fast(const CodeParams& params, const StragglerScenario& scenario,
                                   SelectionStats* stats = nullptr);

/// Sums the encoded results of the selected workers in ascending worker order.
/// Throws MissingWorker when a selected worker has no result.
template <typename T>
std::vector<T> recover_gradient(const DecodingVector& decoder,
                                const std::map<int, std::vector<T>>& encoded) {
  std::vector<T> total;
  bool first = true;
  for (int worker : decoder.support) {
    auto it = encoded.find(worker);
    if (it == encoded.end()) throw MissingWorker(worker);
    const auto& part = it->second;
    if (first) {
      total.assign(part.size(), T{});
      first = false;
    } else if (part.size() != total.size()) {
      throw ParameterError("encoded results have inconsistent dimensions");
    }
    for (std::size_t d = 0; d < part.size(); ++d) total[d] += part[d];
  }
  return total;
}

}  // namespace bgc
