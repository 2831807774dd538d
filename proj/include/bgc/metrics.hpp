#pragma once

#include "bgc/binary_matrix.hpp"
#include "bgc/encoder.hpp"
#include "bgc/params.hpp"
#include "bgc/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bgc {

std::vector<int> load_vector(const BinaryMatrix& matrix);
std::vector<int> load_vector(const EncodingMatrix& matrix);

/// Sum over workers of | load_i - (k/n)(s+1) |, exact.
Rational distance_ds(const BinaryMatrix& matrix, int s);
Rational distance_ds(const EncodingMatrix& matrix);

struct LoadReport {
  std::vector<int> loads;
  Rational ds_value;
  long long total = 0;
  int spread_c1 = 0;  // max - min load over workers of classes 0..r-1
  int spread_c2 = 0;  // same over classes r..s
};

LoadReport load_report(const BinaryMatrix& matrix, const CodeParams& params);
LoadReport load_report(const EncodingMatrix& matrix);

/// True iff loads differ by at most one inside each class set.
bool balance_property(const BinaryMatrix& matrix, const CodeParams& params);
bool balance_property(const EncodingMatrix& matrix);

/// Verification ---------------------------------------------------------

/// Exhaustive verification is refused by the CLI above this many straggler
/// sets; it switches to sampling instead.
inline constexpr std::uint64_t kExhaustiveCap = 1'000'000;

struct VerifyOptions {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::uint64_t sample_count = 10'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct Counterexample {
  std::string kind;  // column_sum | class_coverage | total_load | decode | recovery
  std::vector<int> stragglers;
  std::string detail;
};

struct VerificationReport {
  VerifyOptions::Mode mode = VerifyOptions::Mode::Exhaustive;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  bool column_sums_ok = false;
  bool class_coverage_ok = false;
  bool total_load_ok = false;
  std::optional<Counterexample> counterexample;

  bool passed() const noexcept {
    return column_sums_ok && class_coverage_ok && total_load_ok && failures == 0;
  }
};

/// Structural checks plus, for every straggler set (all C(n, s) of them, or
/// `sample_count` uniformly drawn ones), decoder selection and the exact
/// identity a^T B = 1. The first counterexample is the one of lowest rank
/// (exhaustive) or earliest draw (sampled), independent of thread count.
VerificationReport verify_scheme(const BinaryMatrix& matrix, const CodeParams& params,
                                 const VerifyOptions& options = {});
VerificationReport verify_scheme(const EncodingMatrix& matrix, const VerifyOptions& options = {});

/// n = s^2 + a sweep -----------------------------------------------------

struct LemmaViolation {
  int s = 0;
  int a = 0;
  int t = 0;
  friend bool operator==(const LemmaViolation&, const LemmaViolation&) = default;
};

struct LemmaSweep {
  int s_min = 3;
  int s_max = 40;
  int a_multiple = 4;  // a ranges over 0..a_multiple*s
};

/// Expected: t == 1 exactly for a in {s-2, s-1, 2s}, t == 0 otherwise.
/// Returns every (s, a) where that fails.
std::vector<LemmaViolation> check_lemma(const LemmaSweep& sweep = {});
std::uint64_t lemma_cases(const LemmaSweep& sweep);

}  // namespace bgc
