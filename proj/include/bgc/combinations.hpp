#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bgc {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// The combination of rank `rank` (lexicographic order) of k elements out of
/// {0..n-1}. Requires rank < binomial(n, k).
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank);

/// Advances `combo` to its lexicographic successor. Returns false (and leaves
/// `combo` unspecified) after the last combination.
bool next_combination(std::span<int> combo, int n);

}  // namespace bgc
