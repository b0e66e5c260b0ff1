#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "simplexobs/int_matrix.hpp"
#include "simplexobs/skeleton.hpp"

namespace simplexobs {

inline constexpr int kSystemFormatVersion = 1;
inline constexpr int kMinSystemDegree = 2;
inline constexpr int kMaxSystemDegree = 5;

/// The integer system M x = D deciding whether an admissible map on the
/// 1-skeleton of the S_n-simplex extends to the 2-skeleton.
///
/// Rows are indexed by (face, block) pairs, columns by (edge, block) pairs.
/// The defect vector is kept as numerators over the fixed denominator 2.
struct ObstructionSystem {
  int n = 0;
  CellIndex columns;
  CellIndex rows;
  IntMatrix matrix;
  std::vector<std::int64_t> delta_numerators;
  std::vector<std::int64_t> rhs;
};

inline constexpr std::int64_t kDeltaDenominator = 2;

/// Numerators (over 2) of the edge defects: 1 for blocks of even size,
/// 0 for odd size.
std::vector<std::int64_t> build_delta(const CellIndex& columns);

/// Assembles M, delta and D = M delta for 2 <= n <= 5. Throws
/// InternalError if D fails to be integral.
ObstructionSystem build_system(int n);
ObstructionSystem build_system(const TotalOrder& order);

/// Writes M.mtx, delta.json, D.json and indices.json into `dir`.
void export_system(const ObstructionSystem& sys, const std::filesystem::path& dir);
ObstructionSystem import_system(const std::filesystem::path& dir);

/// Matrix Market "coordinate integer general", 1-based indices.
void write_matrix_market(std::ostream& out, const IntMatrix& m,
                         const std::vector<std::string>& comments = {});
IntMatrix read_matrix_market(std::istream& in);

}  // namespace simplexobs
