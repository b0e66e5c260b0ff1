#include "simplexobs/int_matrix.hpp"

#include <algorithm>
#include <string>

#include "simplexobs/errors.hpp"

namespace simplexobs {

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                                std::size_t cols) {
  IntMatrix m(cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionError("from_dense: ragged row");
    std::vector<MatrixEntry> entries;
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c] != 0) entries.push_back({c, row[c]});
    }
    m.push_row(std::move(entries));
  }
  return m;
}

void IntMatrix::push_row(std::vector<MatrixEntry> entries) {
  std::erase_if(entries, [](const MatrixEntry& e) { return e.value == 0; });
  std::sort(entries.begin(), entries.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) { return a.col < b.col; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].col >= cols_) {
      throw DimensionError("push_row: column " + std::to_string(entries[i].col) +
                           " out of range");
    }
    if (i > 0 && entries[i].col == entries[i - 1].col) {
      throw ValidationError("push_row: duplicate column " + std::to_string(entries[i].col));
    }
  }
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  row_start_.push_back(entries_.size());
}

std::int64_t IntMatrix::at(std::size_t r, std::size_t c) const {
  for (const auto& e : row(r)) {
    if (e.col == c) return e.value;
    if (e.col > c) break;
  }
  return 0;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> out(rows(), std::vector<std::int64_t>(cols_, 0));
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& e : row(r)) out[r][e.col] = e.value;
  }
  return out;
}

IntMatrix IntMatrix::negated() const {
  IntMatrix out = *this;
  for (auto& e : out.entries_) e.value = -e.value;
  return out;
}

IntMatrix IntMatrix::transposed() const {
  std::vector<std::vector<MatrixEntry>> cols(cols_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const auto& e : row(r)) cols[e.col].push_back({r, e.value});
  }
  IntMatrix out(rows());
  for (auto& c : cols) out.push_row(std::move(c));
  return out;
}

}  // namespace simplexobs
