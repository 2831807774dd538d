#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bgc {

/// General sparse {0,1} matrix with sorted row supports.
///
/// EncodingMatrix keeps the interval structure of the construction; this type
/// is what the metrics and the verifier operate on, so that matrices read from
/// disk, column-permuted matrices and deliberately damaged matrices can all be
/// checked with the same code.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols);

  int rows() const noexcept { return static_cast<int>(support_.size()); }
  int cols() const noexcept { return cols_; }

  bool get(int i, int j) const;
  void set(int i, int j, bool value);

  const std::vector<int>& row(int i) const { return support_.at(static_cast<std::size_t>(i)); }
  int row_weight(int i) const { return static_cast<int>(row(i).size()); }
  std::vector<int> column_sums() const;
  long long support_size() const;
  /// Number of 1-entries as (row, column) pairs, row-major order.
  std::vector<std::pair<int, int>> entries() const;

  /// k space-separated 0/1 values per row, one row per line.
  std::string to_dense() const;
  /// One "i j" line per 1-entry, 0-based, row-major.
  std::string to_triplets() const;

  /// Reads "i j" lines; blank lines and lines starting with '#' are skipped.
  /// Throws FormatError on malformed or out-of-range entries.
  static BinaryMatrix from_triplets(std::istream& in, int rows, int cols);

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  void check_index(int i, int j) const;

  int cols_ = 0;
  std::vector<std::vector<int>> support_;
};

/// Returns B' with B'[i, perm[j]] = B[i, j]. `perm` must be a permutation of
/// {0..cols-1}.
BinaryMatrix permute_columns(const BinaryMatrix& matrix, const std::vector<int>& perm);

}  // namespace bgc
