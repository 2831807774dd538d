#include "bgc/binary_matrix.hpp"

#include "bgc/error.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace bgc {

BinaryMatrix::BinaryMatrix(int rows, int cols) : cols_(cols) {
  if (rows < 0 || cols < 0) throw ParameterError("matrix dimensions must be nonnegative");
  support_.resize(static_cast<std::size_t>(rows));
}

void BinaryMatrix::check_index(int i, int j) const {
  if (i < 0 || i >= rows() || j < 0 || j >= cols_) {
    throw ParameterError("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") outside a " + std::to_string(rows()) + "x" + std::to_string(cols_) +
                         " matrix");
  }
}

bool BinaryMatrix::get(int i, int j) const {
  check_index(i, j);
  const auto& r = support_[static_cast<std::size_t>(i)];
  return std::binary_search(r.begin(), r.end(), j);
}

void BinaryMatrix::set(int i, int j, bool value) {
  check_index(i, j);
  auto& r = support_[static_cast<std::size_t>(i)];
  auto it = std::lower_bound(r.begin(), r.end(), j);
  const bool present = it != r.end() && *it == j;
  if (value && !present) r.insert(it, j);
  if (!value && present) r.erase(it);
}

std::vector<int> BinaryMatrix::column_sums() const {
  std::vector<int> sums(static_cast<std::size_t>(cols_), 0);
  for (const auto& r : support_) {
    for (int j : r) ++sums[static_cast<std::size_t>(j)];
  }
  return sums;
}

long long BinaryMatrix::support_size() const {
  long long total = 0;
  for (const auto& r : support_) total += static_cast<long long>(r.size());
  return total;
}

std::vector<std::pair<int, int>> BinaryMatrix::entries() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(support_size()));
  for (int i = 0; i < rows(); ++i) {
    for (int j : row(i)) out.emplace_back(i, j);
  }
  return out;
}

std::string BinaryMatrix::to_dense() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(rows()) * static_cast<std::size_t>(2 * cols_ + 1));
  for (const auto& r : support_) {
    auto it = r.begin();
    for (int j = 0; j < cols_; ++j) {
      if (j > 0) out += ' ';
      if (it != r.end() && *it == j) {
        out += '1';
        ++it;
      } else {
        out += '0';
      }
    }
    out += '\n';
  }
  return out;
}

std::string BinaryMatrix::to_triplets() const {
  std::string out;
  for (const auto& [i, j] : entries()) {
    out += std::to_string(i);
    out += ' ';
    out += std::to_string(j);
    out += '\n';
  }
  return out;
}

BinaryMatrix BinaryMatrix::from_triplets(std::istream& in, int rows, int cols) {
  BinaryMatrix matrix(rows, cols);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long i = -1;
    long long j = -1;
    std::string rest;
    if (!(fields >> i >> j) || (fields >> rest)) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'i j', got '" + line + "'");
    }
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
      throw FormatError("line " + std::to_string(line_no) + ": entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") out of range");
    }
    matrix.set(static_cast<int>(i), static_cast<int>(j), true);
  }
  return matrix;
}

BinaryMatrix permute_columns(const BinaryMatrix& matrix, const std::vector<int>& perm) {
  const auto cols = static_cast<std::size_t>(matrix.cols());
  std::vector<int> sorted(perm);
  std::sort(sorted.begin(), sorted.end());
  bool valid = sorted.size() == cols;
  for (std::size_t j = 0; valid && j < cols; ++j) valid = sorted[j] == static_cast<int>(j);
  if (!valid) throw ParameterError("column permutation is not a permutation of 0..k-1");

  BinaryMatrix out(matrix.rows(), matrix.cols());
  for (const auto& [i, j] : matrix.entries()) out.set(i, perm[static_cast<std::size_t>(j)], true);
  return out;
}

}  // namespace bgc
