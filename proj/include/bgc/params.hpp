#pragma once

#include <compare>

namespace bgc {

/// Integer parameters of the binary code, all obtained by Euclidean division
/// from the worker count n and the straggler tolerance s.
///
///   n = ell * (s + 1) + r         0 <= r < s + 1
///   r = t * ell + q               0 <= q < ell
///   n = lambda * (ell + 1) + rtilde   0 <= rtilde < ell + 1
///
/// Classes 0..r-1 form the first class set (they own a row in the remainder
/// block), classes r..s the second.
struct CodeParams {
  int n = 0;
  int k = 0;
  int s = 0;
  int ell = 0;
  int r = 0;
  int t = 0;
  int q = 0;
  int lambda = 0;
  int rtilde = 0;
  int f = 0;

  int class_count() const noexcept { return s + 1; }
  int class_of(int worker) const noexcept { return worker % (s + 1); }
  bool in_first_set(int cls) const noexcept { return cls < r; }
  /// Number of workers in congruence class `cls`.
  int class_size(int cls) const noexcept { return in_first_set(cls) ? ell + 1 : ell; }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Throws ParameterError unless n >= 1 and 0 <= s < n.
CodeParams derive_params(int n, int s);

}  // namespace bgc
