#include "bgc/encoder.hpp"

#include "bgc/error.hpp"

#include <algorithm>

namespace bgc {

namespace {

// Lays consecutive intervals of the given widths over {0..k-1}, one per
// block, and assigns block j of class `cls` to worker j*(s+1) + cls.
void tile_class(const CodeParams& p, int cls, const std::vector<int>& widths,
                std::vector<WorkerAssignment>& out) {
  int start = 0;
  for (int block = 0; block < static_cast<int>(widths.size()); ++block) {
    const int width = widths[static_cast<std::size_t>(block)];
    out.push_back({block * (p.s + 1) + cls, cls, block, {start, width}});
    start += width;
  }
}

void sort_by_worker(std::vector<WorkerAssignment>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const WorkerAssignment& a, const WorkerAssignment& b) { return a.worker < b.worker; });
}

}  // namespace

std::vector<WorkerAssignment> build_c1(const CodeParams& p) {
  std::vector<WorkerAssignment> out;
  if (p.r == 0) return out;

  // ell + 1 blocks including the remainder block.
  std::vector<int> widths(static_cast<std::size_t>(p.ell) + 1);
  for (int block = 0; block <= p.ell; ++block) {
    int width = 0;
    if (p.ell + p.r > p.s) {
      width = block < p.ell + p.r - p.s ? p.s + 1 : p.s;
    } else {
      width = block < p.rtilde ? p.lambda + 1 : p.lambda;
    }
    widths[static_cast<std::size_t>(block)] = width;
  }
  out.reserve(static_cast<std::size_t>(p.r) * widths.size());
  for (int cls = 0; cls < p.r; ++cls) tile_class(p, cls, widths, out);
  sort_by_worker(out);
  return out;
}

std::vector<WorkerAssignment> build_c2(const CodeParams& p) {
  std::vector<WorkerAssignment> out;
  std::vector<int> widths(static_cast<std::size_t>(p.ell));
  for (int block = 0; block < p.ell; ++block) {
    widths[static_cast<std::size_t>(block)] = block < p.q ? p.s + p.t + 2 : p.s + p.t + 1;
  }
  out.reserve(static_cast<std::size_t>(p.s + 1 - p.r) * widths.size());
  for (int cls = p.r; cls <= p.s; ++cls) tile_class(p, cls, widths, out);
  sort_by_worker(out);
  return out;
}

EncodingMatrix::EncodingMatrix(CodeParams params, std::vector<RowInterval> rows)
    : params_(params), rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != params_.n) {
    throw ParameterError("encoding matrix needs exactly n rows");
  }
  for (const auto& row : rows_) {
    if (row.start < 0 || row.width < 0 || row.end() > params_.k) {
      throw ParameterError("row interval outside the partition range");
    }
  }
}

BinaryMatrix EncodingMatrix::to_binary() const {
  BinaryMatrix out(params_.n, params_.k);
  for (int i = 0; i < params_.n; ++i) {
    const auto& row = rows_[static_cast<std::size_t>(i)];
    for (int j = row.start; j < row.end(); ++j) out.set(i, j, true);
  }
  return out;
}

EncodingMatrix build_encoding(const CodeParams& params) {
  if (params.k != params.n) {
    throw ParameterError("only k == n is supported (n=" + std::to_string(params.n) +
                         ", k=" + std::to_string(params.k) + ")");
  }
  std::vector<RowInterval> rows(static_cast<std::size_t>(params.n));
  std::vector<bool> filled(static_cast<std::size_t>(params.n), false);
  for (const auto& part : {build_c1(params), build_c2(params)}) {
    for (const auto& a : part) {
      rows[static_cast<std::size_t>(a.worker)] = a.interval;
      filled[static_cast<std::size_t>(a.worker)] = true;
    }
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
    throw Error("internal: construction left a worker without a row");
  }
  return EncodingMatrix(params, std::move(rows));
}

BipartiteView to_bipartite(const EncodingMatrix& matrix) {
  BipartiteView view;
  view.left = matrix.workers();
  view.right = matrix.partitions();
  for (int i = 0; i < matrix.workers(); ++i) {
    const auto& row = matrix.row(i);
    for (int j = row.start; j < row.end(); ++j) view.edges.emplace_back(i, j);
  }
  return view;
}

}  // namespace bgc
