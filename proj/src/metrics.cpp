#include "bgc/metrics.hpp"

#include "bgc/combinations.hpp"
#include "bgc/decoder.hpp"
#include "bgc/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace bgc {

std::vector<int> load_vector(const BinaryMatrix& matrix) {
  std::vector<int> loads(static_cast<std::size_t>(matrix.rows()));
  for (int i = 0; i < matrix.rows(); ++i) loads[static_cast<std::size_t>(i)] = matrix.row_weight(i);
  return loads;
}

std::vector<int> load_vector(const EncodingMatrix& matrix) {
  std::vector<int> loads;
  loads.reserve(matrix.rows().size());
  for (const auto& row : matrix.rows()) loads.push_back(row.width);
  return loads;
}

namespace {

Rational ds_from_loads(const std::vector<int>& loads, int n, int k, int s) {
  const Rational target = Rational(k) / n * (s + 1);
  Rational total = 0;
  for (int load : loads) total += abs(Rational(load) - target);
  return total;
}

void check_shape(const BinaryMatrix& matrix, const CodeParams& params) {
  if (matrix.rows() != params.n || matrix.cols() != params.k) {
    throw ParameterError("matrix is " + std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + " but params describe " +
                         std::to_string(params.n) + "x" + std::to_string(params.k));
  }
}

// max - min of loads over the workers whose class satisfies `pick`; 0 if none.
template <typename Pred>
int spread(const std::vector<int>& loads, const CodeParams& params, Pred pick) {
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (int w = 0; w < static_cast<int>(loads.size()); ++w) {
    if (!pick(params.class_of(w))) continue;
    lo = std::min(lo, loads[static_cast<std::size_t>(w)]);
    hi = std::max(hi, loads[static_cast<std::size_t>(w)]);
  }
  return hi < lo ? 0 : hi - lo;
}

}  // namespace

Rational distance_ds(const BinaryMatrix& matrix, int s) {
  if (matrix.rows() <= 0) throw ParameterError("d_s needs at least one row");
  return ds_from_loads(load_vector(matrix), matrix.rows(), matrix.cols(), s);
}

Rational distance_ds(const EncodingMatrix& matrix) {
  const auto& p = matrix.params();
  return ds_from_loads(load_vector(matrix), p.n, p.k, p.s);
}

LoadReport load_report(const BinaryMatrix& matrix, const CodeParams& params) {
  check_shape(matrix, params);
  LoadReport report;
  report.loads = load_vector(matrix);
  report.ds_value = ds_from_loads(report.loads, params.n, params.k, params.s);
  report.total = std::accumulate(report.loads.begin(), report.loads.end(), 0LL);
  report.spread_c1 = spread(report.loads, params, [&](int c) { return params.in_first_set(c); });
  report.spread_c2 = spread(report.loads, params, [&](int c) { return !params.in_first_set(c); });
  return report;
}

LoadReport load_report(const EncodingMatrix& matrix) {
  return load_report(matrix.to_binary(), matrix.params());
}

bool balance_property(const BinaryMatrix& matrix, const CodeParams& params) {
  const auto report = load_report(matrix, params);
  return report.spread_c1 <= 1 && report.spread_c2 <= 1;
}

bool balance_property(const EncodingMatrix& matrix) {
  return balance_property(matrix.to_binary(), matrix.params());
}

// --- verification ---------------------------------------------------------

namespace {

struct ScenarioChecker {
  const BinaryMatrix& matrix;
  const CodeParams& params;

  // Empty optional on success.
  std::optional<Counterexample> check(std::span<const int> stragglers,
                                      std::vector<int>& column_hits) const {
    const auto scenario = StragglerScenario::from_stragglers(params.n, stragglers);
    DecodingVector a;
    try {
      a = select_decoder(params, scenario);
    } catch (const InfeasibleScenario& e) {
      return Counterexample{"decode", {stragglers.begin(), stragglers.end()}, e.what()};
    }
    std::fill(column_hits.begin(), column_hits.end(), 0);
    for (int w : a.support) {
      for (int j : matrix.row(w)) ++column_hits[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < params.k; ++j) {
      const int hits = column_hits[static_cast<std::size_t>(j)];
      if (hits != 1) {
        return Counterexample{"recovery",
                              {stragglers.begin(), stragglers.end()},
                              "class " + std::to_string(a.class_index) + " covers partition " +
                                  std::to_string(j) + " " + std::to_string(hits) + " times"};
      }
    }
    return std::nullopt;
  }
};

struct ChunkResult {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::uint64_t first_index = std::numeric_limits<std::uint64_t>::max();
  std::optional<Counterexample> first;

  void record(std::uint64_t index, Counterexample ce) {
    ++failures;
    if (index < first_index) {
      first_index = index;
      first = std::move(ce);
    }
  }
};

template <typename Work>
std::vector<ChunkResult> run_chunks(std::uint64_t total, unsigned threads, Work work) {
  threads = std::max(1u, threads);
  if (total < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
  std::vector<ChunkResult> results(threads);
  const std::uint64_t per = total / threads;
  const std::uint64_t extra = total % threads;
  std::vector<std::jthread> pool;
  std::uint64_t lo = 0;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t hi = lo + per + (t < extra ? 1 : 0);
    if (threads == 1) {
      work(lo, hi, results[t]);
    } else {
      pool.emplace_back([&, lo, hi, t] { work(lo, hi, results[t]); });
    }
    lo = hi;
  }
  pool.clear();  // join before results are read
  return results;
}

}  // namespace

VerificationReport verify_scheme(const BinaryMatrix& matrix, const CodeParams& params,
                                 const VerifyOptions& options) {
  check_shape(matrix, params);
  VerificationReport report;
  report.mode = options.mode;

  const auto sums = matrix.column_sums();
  report.column_sums_ok = true;
  for (int j = 0; j < params.k && report.column_sums_ok; ++j) {
    if (sums[static_cast<std::size_t>(j)] != params.s + 1) {
      report.column_sums_ok = false;
      report.counterexample = Counterexample{
          "column_sum", {},
          "column " + std::to_string(j) + " has " +
              std::to_string(sums[static_cast<std::size_t>(j)]) + " ones, expected " +
              std::to_string(params.s + 1)};
    }
  }

  report.class_coverage_ok = true;
  std::vector<int> hits(static_cast<std::size_t>(params.k));
  for (int c = 0; c <= params.s && report.class_coverage_ok; ++c) {
    std::fill(hits.begin(), hits.end(), 0);
    for (int w = c; w < params.n; w += params.s + 1) {
      for (int j : matrix.row(w)) ++hits[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < params.k; ++j) {
      if (hits[static_cast<std::size_t>(j)] != 1) {
        report.class_coverage_ok = false;
        if (!report.counterexample) {
          report.counterexample = Counterexample{
              "class_coverage", {},
              "class " + std::to_string(c) + " covers partition " + std::to_string(j) + " " +
                  std::to_string(hits[static_cast<std::size_t>(j)]) + " times"};
        }
        break;
      }
    }
  }

  const long long expected_total = static_cast<long long>(params.k) * (params.s + 1);
  report.total_load_ok = matrix.support_size() == expected_total;
  if (!report.total_load_ok && !report.counterexample) {
    report.counterexample =
        Counterexample{"total_load", {},
                       "support size " + std::to_string(matrix.support_size()) + ", expected " +
                           std::to_string(expected_total)};
  }

  const ScenarioChecker checker{matrix, params};
  std::vector<ChunkResult> chunks;
  if (options.mode == VerifyOptions::Mode::Exhaustive) {
    const std::uint64_t total = binomial(params.n, params.s);
    chunks = run_chunks(total, options.threads, [&](std::uint64_t lo, std::uint64_t hi, ChunkResult& out) {
      if (lo >= hi) return;
      std::vector<int> column_hits(static_cast<std::size_t>(params.k));
      auto combo = unrank_combination(params.n, params.s, lo);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        ++out.checked;
        if (auto ce = checker.check(combo, column_hits)) out.record(rank, std::move(*ce));
        if (rank + 1 < hi) next_combination(combo, params.n);
      }
    });
  } else {
    std::vector<int> workers(static_cast<std::size_t>(params.n));
    std::iota(workers.begin(), workers.end(), 0);
    chunks = run_chunks(options.sample_count, options.threads,
                        [&](std::uint64_t lo, std::uint64_t hi, ChunkResult& out) {
                          std::vector<int> column_hits(static_cast<std::size_t>(params.k));
                          std::vector<int> draw;
                          for (std::uint64_t i = lo; i < hi; ++i) {
                            std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                                              static_cast<std::uint32_t>(options.seed >> 32),
                                              static_cast<std::uint32_t>(i),
                                              static_cast<std::uint32_t>(i >> 32)};
                            std::mt19937_64 rng(seq);
                            draw.clear();
                            std::sample(workers.begin(), workers.end(), std::back_inserter(draw),
                                        params.s, rng);
                            ++out.checked;
                            if (auto ce = checker.check(draw, column_hits)) out.record(i, std::move(*ce));
                          }
                        });
  }

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::optional<Counterexample> first_scenario_failure;
  for (auto& chunk : chunks) {
    report.checked += chunk.checked;
    report.failures += chunk.failures;
    if (chunk.first && chunk.first_index < best) {
      best = chunk.first_index;
      first_scenario_failure = std::move(chunk.first);
    }
  }
  if (!report.counterexample) report.counterexample = std::move(first_scenario_failure);
  return report;
}

VerificationReport verify_scheme(const EncodingMatrix& matrix, const VerifyOptions& options) {
  return verify_scheme(matrix.to_binary(), matrix.params(), options);
}

// --- n = s^2 + a ------------------------------------------------------------

std::vector<LemmaViolation> check_lemma(const LemmaSweep& sweep) {
  std::vector<LemmaViolation> violations;
  for (int s = std::max(sweep.s_min, 0); s <= sweep.s_max; ++s) {
    for (int a = 0; a <= sweep.a_multiple * s; ++a) {
      const int n = s * s + a;
      if (s >= n) continue;
      const int t = derive_params(n, s).t;
      const bool special = a == s - 2 || a == s - 1 || a == 2 * s;
      if (t != (special ? 1 : 0)) violations.push_back({s, a, t});
    }
  }
  return violations;
}

std::uint64_t lemma_cases(const LemmaSweep& sweep) {
  std::uint64_t count = 0;
  for (int s = std::max(sweep.s_min, 0); s <= sweep.s_max; ++s) {
    for (int a = 0; a <= sweep.a_multiple * s; ++a) {
      if (s < s * s + a) ++count;
    }
  }
  return count;
}

}  // namespace bgc
