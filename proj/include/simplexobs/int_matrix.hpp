#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace simplexobs {

struct MatrixEntry {
  std::size_t col;
  std::int64_t value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Integer matrix stored as compressed sparse rows. Rows are appended once
/// and never modified; entries in a row are sorted by column and non-zero.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t cols = 0) : cols_(cols), row_start_{0} {}

  static IntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                              std::size_t cols);

  /// Entries may arrive unsorted; zero entries are dropped and duplicate
  /// columns throw.
  void push_row(std::vector<MatrixEntry> entries);

  std::size_t rows() const noexcept { return row_start_.size() - 1; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  std::span<const MatrixEntry> row(std::size_t r) const {
    return {entries_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }

  std::int64_t at(std::size_t r, std::size_t c) const;

  std::vector<std::vector<std::int64_t>> to_dense() const;

  IntMatrix negated() const;
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t cols_;
  std::vector<std::size_t> row_start_;
  std::vector<MatrixEntry> entries_;
};

}  // namespace simplexobs
