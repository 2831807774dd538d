#pragma once

#include "bgc/binary_matrix.hpp"
#include "bgc/params.hpp"

#include <utility>
#include <vector>

namespace bgc {

/// Half-open column interval [start, start + width).
struct RowInterval {
  int start = 0;
  int width = 0;

  int end() const noexcept { return start + width; }
  bool contains(int column) const noexcept { return column >= start && column < end(); }
  friend bool operator==(const RowInterval&, const RowInterval&) = default;
};

/// One row produced by the per-class-set builders.
struct WorkerAssignment {
  int worker = 0;
  int cls = 0;
  int block = 0;  // 0-based; block ell is the remainder block
  RowInterval interval;
  friend bool operator==(const WorkerAssignment&, const WorkerAssignment&) = default;
};

/// Rows for classes 0..r-1, sorted by worker. Empty when r == 0.
std::vector<WorkerAssignment> build_c1(const CodeParams& params);

/// Rows for classes r..s, sorted by worker.
std::vector<WorkerAssignment> build_c2(const CodeParams& params);

/// The binary n x k encoding matrix. Row i is the contiguous set of
/// partitions assigned to worker i.
class EncodingMatrix {
 public:
  EncodingMatrix(CodeParams params, std::vector<RowInterval> rows);

  const CodeParams& params() const noexcept { return params_; }
  const std::vector<RowInterval>& rows() const noexcept { return rows_; }
  const RowInterval& row(int worker) const { return rows_.at(static_cast<std::size_t>(worker)); }
  int class_of(int worker) const noexcept { return params_.class_of(worker); }
  int load(int worker) const { return row(worker).width; }
  int workers() const noexcept { return params_.n; }
  int partitions() const noexcept { return params_.k; }

  BinaryMatrix to_binary() const;
  std::string to_dense() const { return to_binary().to_dense(); }

  friend bool operator==(const EncodingMatrix&, const EncodingMatrix&) = default;

 private:
  CodeParams params_;
  std::vector<RowInterval> rows_;
};

/// Merges build_c1 and build_c2. Throws ParameterError when k != n.
EncodingMatrix build_encoding(const CodeParams& params);

/// Worker/partition bipartite graph whose adjacency matrix is B.
struct BipartiteView {
  int left = 0;   // workers
  int right = 0;  // partitions
  std::vector<std::pair<int, int>> edges;
};

BipartiteView to_bipartite(const EncodingMatrix& matrix);

}  // namespace bgc
