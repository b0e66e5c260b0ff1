#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "simplexobs/permutation.hpp"

namespace simplexobs {

// Largest n accepted by the skeleton enumerators (C(n!, 3) faces).
inline constexpr int kMaxSkeletonDegree = 5;

/// Total order on S_n used to orient subsimplices. Defaults to the
/// lexicographic order on one-line notation.
class TotalOrder {
 public:
  static TotalOrder lexicographic(int n);

  /// `ranking` lists every element of S_n exactly once, smallest first.
  explicit TotalOrder(std::vector<Permutation> ranking);

  int degree() const noexcept { return ranking_.front().size(); }
  const std::vector<Permutation>& elements() const noexcept { return ranking_; }
  std::size_t rank(const Permutation& g) const;
  bool less(const Permutation& a, const Permutation& b) const { return rank(a) < rank(b); }

 private:
  std::vector<Permutation> ranking_;
  std::map<Permutation, std::size_t> rank_of_;
};

/// Subsimplex spanned by 1 to 3 distinct vertices of the S_n-simplex, listed
/// in increasing order with respect to the chosen total order.
class Subsimplex {
 public:
  explicit Subsimplex(std::vector<Permutation> vertices);

  /// Sorts the vertices lexicographically first.
  static Subsimplex canonical(std::vector<Permutation> vertices);

  int degree() const noexcept { return vertices_.front().size(); }
  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<Permutation>& vertices() const noexcept { return vertices_; }
  const Permutation& vertex(std::size_t i) const { return vertices_.at(i); }

  friend bool operator==(const Subsimplex&, const Subsimplex&) = default;
  friend auto operator<=>(const Subsimplex& a, const Subsimplex& b) {
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::vector<Permutation> vertices_;
};

/// All dim-dimensional subsimplices, enumerated as increasing vertex tuples
/// (in `order`) and listed lexicographically by rank tuple.
std::vector<Subsimplex> enumerate_cells(int n, int dim);
std::vector<Subsimplex> enumerate_cells(const TotalOrder& order, int dim);

/// Orbit partition of {g0^-1 g1, ..., g0^-1 gk}.
Partition simplex_partition(const Subsimplex& s);

/// A pair (subsimplex, block of its partition).
struct Cell {
  Subsimplex simplex;
  std::vector<int> block;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Flattened (cell, block) pairs: the column set C for dim 1 and the row
/// set R for dim 2. Entries are grouped per subsimplex and ordered by block
/// minimum inside each group.
class CellIndex {
 public:
  static CellIndex build(int n, int dim);
  static CellIndex build(const TotalOrder& order, int dim);

  /// Rebuilds an index from deserialized entries; validates every block
  /// against the subsimplex partition and rejects duplicates.
  CellIndex(int n, int dim, std::vector<Cell> entries);

  int degree() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Cell>& entries() const noexcept { return entries_; }
  const Cell& operator[](std::size_t i) const { return entries_[i]; }

  std::optional<std::size_t> find(const Subsimplex& s, std::span<const int> block) const;

  /// Half-open ordinal range [first, last) of the entries of subsimplex s.
  std::optional<std::pair<std::size_t, std::size_t>> range(const Subsimplex& s) const;

  /// Distinct subsimplices in index order.
  std::vector<Subsimplex> simplices() const;

 private:
  CellIndex() = default;
  void index_entries();

  int n_ = 0;
  int dim_ = 0;
  std::vector<Cell> entries_;
  std::map<Subsimplex, std::pair<std::size_t, std::size_t>> ranges_;
};

void to_json(nlohmann::json& j, const Subsimplex& s);
void to_json(nlohmann::json& j, const CellIndex& index);
CellIndex cell_index_from_json(const nlohmann::json& j, int n, int dim);

}  // namespace simplexobs
