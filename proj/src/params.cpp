#include "bgc/params.hpp"

#include "bgc/error.hpp"

#include <string>

namespace bgc {

CodeParams derive_params(int n, int s) {
  if (n <= 0) throw ParameterError("worker count n must be positive, got " + std::to_string(n));
  if (s < 0 || s >= n) {
    throw ParameterError("straggler count s must satisfy 0 <= s < n (n=" + std::to_string(n) +
                         ", s=" + std::to_string(s) + ")");
  }
  CodeParams p;
  p.n = n;
  p.k = n;
  p.s = s;
  p.ell = n / (s + 1);
  p.r = n % (s + 1);
  // s < n guarantees ell >= 1.
  p.t = p.r / p.ell;
  p.q = p.r % p.ell;
  p.lambda = n / (p.ell + 1);
  p.rtilde = n % (p.ell + 1);
  p.f = n - s;
  return p;
}

}  // namespace bgc
