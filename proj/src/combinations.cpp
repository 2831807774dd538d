#include "bgc/combinations.hpp"

#include "bgc/error.hpp"

#include <limits>

namespace bgc {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  __extension__ using u128 = unsigned __int128;
  u128 value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (value > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
  if (rank >= binomial(n, k)) throw ParameterError("combination rank out of range");
  std::vector<int> combo;
  combo.reserve(static_cast<std::size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    // Skip blocks of combinations that start with a smaller element.
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next - 1, k - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    combo.push_back(next++);
  }
  return combo;
}

bool next_combination(std::span<int> combo, int n) {
  const int k = static_cast<int>(combo.size());
  int i = k - 1;
  while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++combo[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j) - 1] + 1;
  }
  return true;
}

}  // namespace bgc
