#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "simplexobs/int_matrix.hpp"

namespace simplexobs::detail {

using SparseBigRow = std::vector<std::pair<std::size_t, mpz_class>>;

// Fraction-free echelon basis over Q. Every stored row is primitive (content
// 1) with a positive leading entry at its pivot column.
struct RationalEchelon {
  std::vector<SparseBigRow> rows;
  std::map<std::size_t, std::size_t> slot_of_pivot;
  // Original matrix row that produced each stored row.
  std::vector<std::size_t> source_rows;
  std::size_t rank = 0;
  std::size_t rank_augmented = 0;

  void reduce(std::vector<mpz_class>& v) const;
};

// Eliminates [M | rhs] row by row; an empty rhs eliminates M alone.
RationalEchelon rational_echelon(const IntMatrix& m, std::span<const std::int64_t> rhs);

std::vector<mpq_class> back_substitute(const RationalEchelon& elim, std::size_t cols);

}  // namespace simplexobs::detail
