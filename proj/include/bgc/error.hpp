#pragma once

#include <stdexcept>
#include <string>

namespace bgc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid (n, s, k) combination or other out-of-domain argument.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// No congruence class is fully contained in the received set.
class InfeasibleScenario : public Error {
 public:
  using Error::Error;
};

/// A worker selected for decoding has no encoded result.
class MissingWorker : public Error {
 public:
  explicit MissingWorker(int worker)
      : Error("no encoded result for worker " + std::to_string(worker)), worker_(worker) {}
  int worker() const noexcept { return worker_; }

 private:
  int worker_;
};

/// Malformed input file (triplets, CSV, rationals).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace bgc
