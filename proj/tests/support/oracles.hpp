#pragma once

// Test-only reference computations. Nothing here calls into the code paths it
// is used to check: matrices are expanded by hand, subsets are enumerated by
// bitmask, and selection is a literal containment test.

#include "bgc/bgc.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<int>>;

inline Dense dense(const bgc::EncodingMatrix& b) {
  Dense out(static_cast<std::size_t>(b.workers()), std::vector<int>(static_cast<std::size_t>(b.partitions()), 0));
  for (int i = 0; i < b.workers(); ++i) {
    for (int j = 0; j < b.partitions(); ++j) {
      const auto& row = b.rows()[static_cast<std::size_t>(i)];
      out[i][j] = (j >= row.start && j < row.start + row.width) ? 1 : 0;
    }
  }
  return out;
}

inline Dense parse_dense(const std::vector<const char*>& rows) {
  Dense out;
  for (const char* r : rows) {
    std::vector<int> row;
    for (const char* c = r; *c; ++c) {
      if (*c == '0' || *c == '1') row.push_back(*c - '0');
    }
    out.push_back(row);
  }
  return out;
}

/// The merged 11-worker, 3-straggler matrix as printed in the construction's
/// worked example.
inline Dense example_11_3() {
  return parse_dense({
      "1 1 1 1 0 0 0 0 0 0 0",
      "1 1 1 1 0 0 0 0 0 0 0",
      "1 1 1 1 0 0 0 0 0 0 0",
      "1 1 1 1 1 1 0 0 0 0 0",
      "0 0 0 0 1 1 1 1 0 0 0",
      "0 0 0 0 1 1 1 1 0 0 0",
      "0 0 0 0 1 1 1 1 0 0 0",
      "0 0 0 0 0 0 1 1 1 1 1",
      "0 0 0 0 0 0 0 0 1 1 1",
      "0 0 0 0 0 0 0 0 1 1 1",
      "0 0 0 0 0 0 0 0 1 1 1",
  });
}

/// Calls fn(stragglers) for every size-s subset of {0..n-1}, by bitmask.
inline void for_each_straggler_set(int n, int s, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> set;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != s) continue;
    set.clear();
    for (int w = 0; w < n; ++w) {
      if (mask & (1u << w)) set.push_back(w);
    }
    fn(set);
  }
}

/// Workers of class c, by definition of the congruence class.
inline std::vector<int> class_members(int n, int s, int c) {
  std::vector<int> out;
  for (int w = 0; w < n; ++w) {
    if (w % (s + 1) == c) out.push_back(w);
  }
  return out;
}

/// Every class whose members all returned.
inline std::vector<int> complete_classes(int n, int s, const std::vector<int>& stragglers) {
  std::set<int> received;
  for (int w = 0; w < n; ++w) received.insert(w);
  for (int w : stragglers) received.erase(w);
  std::vector<int> out;
  for (int c = 0; c <= s; ++c) {
    const auto members = class_members(n, s, c);
    if (std::includes(received.begin(), received.end(), members.begin(), members.end())) out.push_back(c);
  }
  return out;
}

/// Column-wise sum of the selected rows; the decoding identity holds iff
/// every entry equals one.
inline std::vector<int> selected_column_sums(const Dense& b, const std::vector<int>& rows) {
  std::vector<int> sums(b.empty() ? 0 : b[0].size(), 0);
  for (int i : rows) {
    for (std::size_t j = 0; j < sums.size(); ++j) sums[j] += b[static_cast<std::size_t>(i)][j];
  }
  return sums;
}

/// Minimum of sum |load_i - (s+1)| over all integer load vectors in which each
/// congruence class's loads add up to n (every partition exactly once per
/// class). Enumerates every composition; only for tiny n.
inline long long min_class_structured_ds(int n, int s) {
  long long best = 0;
  for (int c = 0; c <= s; ++c) {
    const int members = static_cast<int>(class_members(n, s, c).size());
    long long class_best = -1;
    std::vector<int> loads(static_cast<std::size_t>(members), 0);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
      if (idx == members - 1) {
        loads[static_cast<std::size_t>(idx)] = remaining;
        long long d = 0;
        for (int l : loads) d += std::abs(l - (s + 1));
        if (class_best < 0 || d < class_best) class_best = d;
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        loads[static_cast<std::size_t>(idx)] = v;
        rec(idx + 1, remaining - v);
      }
    };
    rec(0, n);
    best += class_best;
  }
  return best;
}

/// Plain full-batch gradient descent on sum (x^T theta - y)^2, no coding.
inline std::vector<double> uncoded_descent(const bgc::Samples& samples, double lr, int iterations,
                                           std::vector<double>* losses = nullptr) {
  std::vector<double> theta(static_cast<std::size_t>(samples.dim), 0.0);
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> g(theta.size(), 0.0);
    for (int i = 0; i < samples.size(); ++i) {
      double residual = -samples.labels[static_cast<std::size_t>(i)];
      for (int d = 0; d < samples.dim; ++d) {
        residual += samples.features[static_cast<std::size_t>(i * samples.dim + d)] * theta[static_cast<std::size_t>(d)];
      }
      for (int d = 0; d < samples.dim; ++d) {
        g[static_cast<std::size_t>(d)] += 2.0 * samples.features[static_cast<std::size_t>(i * samples.dim + d)] * residual;
      }
    }
    for (std::size_t d = 0; d < theta.size(); ++d) theta[d] -= lr * g[d];
    if (losses) {
      double loss = 0.0;
      for (int i = 0; i < samples.size(); ++i) {
        double residual = -samples.labels[static_cast<std::size_t>(i)];
        for (int d = 0; d < samples.dim; ++d) {
          residual += samples.features[static_cast<std::size_t>(i * samples.dim + d)] * theta[static_cast<std::size_t>(d)];
        }
        loss += residual * residual;
      }
      losses->push_back(loss);
    }
  }
  return theta;
}

}  // namespace oracle
