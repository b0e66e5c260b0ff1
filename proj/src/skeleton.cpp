#include "simplexobs/skeleton.hpp"

#include <algorithm>
#include <string>

#include "simplexobs/errors.hpp"

namespace simplexobs {

namespace {

void check_skeleton_args(int n, int dim) {
  if (n < 1 || n > kMaxSkeletonDegree) {
    throw SizeLimitError("skeleton: n must lie in [1, " + std::to_string(kMaxSkeletonDegree) +
                         "], got " + std::to_string(n));
  }
  if (dim < 0 || dim > 2) {
    throw SizeLimitError("skeleton: only dimensions 0, 1 and 2 are supported, got " +
                         std::to_string(dim));
  }
}

}  // namespace

TotalOrder TotalOrder::lexicographic(int n) { return TotalOrder(enumerate_sn(n)); }

TotalOrder::TotalOrder(std::vector<Permutation> ranking) : ranking_(std::move(ranking)) {
  if (ranking_.empty()) throw ValidationError("total order must rank a non-empty set");
  const auto n = ranking_.front().size();
  if (n > kMaxEnumerationDegree) throw SizeLimitError("total order: degree too large");
  std::size_t expected = 1;
  for (int k = 2; k <= n; ++k) expected *= static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    if (ranking_[i].size() != n) throw DimensionError("total order: mixed degrees");
    if (!rank_of_.emplace(ranking_[i], i).second) {
      throw ValidationError("total order: repeated element");
    }
  }
  if (ranking_.size() != expected) {
    throw ValidationError("total order must rank all of S_n");
  }
}

std::size_t TotalOrder::rank(const Permutation& g) const {
  const auto it = rank_of_.find(g);
  if (it == rank_of_.end()) throw DimensionError("total order: permutation not in S_n");
  return it->second;
}

Subsimplex::Subsimplex(std::vector<Permutation> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty() || vertices_.size() > 3) {
    throw ValidationError("subsimplex must have between 1 and 3 vertices");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].size() != vertices_.front().size()) {
      throw DimensionError("subsimplex vertices must share the same degree");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (vertices_[i] == vertices_[j]) throw ValidationError("subsimplex vertices must differ");
    }
  }
}

Subsimplex Subsimplex::canonical(std::vector<Permutation> vertices) {
  std::sort(vertices.begin(), vertices.end());
  return Subsimplex(std::move(vertices));
}

std::vector<Subsimplex> enumerate_cells(int n, int dim) {
  check_skeleton_args(n, dim);
  return enumerate_cells(TotalOrder::lexicographic(n), dim);
}

std::vector<Subsimplex> enumerate_cells(const TotalOrder& order, int dim) {
  check_skeleton_args(order.degree(), dim);
  const auto& v = order.elements();
  const auto count = v.size();
  std::vector<Subsimplex> cells;
  switch (dim) {
    case 0:
      for (const auto& g : v) cells.emplace_back(std::vector{g});
      break;
    case 1:
      cells.reserve(count * (count - 1) / 2);
      for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b) cells.emplace_back(std::vector{v[a], v[b]});
      break;
    default:
      cells.reserve(count * (count - 1) * (count - 2) / 6);
      for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b)
          for (std::size_t c = b + 1; c < count; ++c)
            cells.emplace_back(std::vector{v[a], v[b], v[c]});
      break;
  }
  return cells;
}

Partition simplex_partition(const Subsimplex& s) {
  const auto base = inverse(s.vertex(0));
  std::vector<Permutation> generators;
  for (std::size_t i = 1; i < s.vertices().size(); ++i) {
    generators.push_back(compose(base, s.vertex(i)));
  }
  return orbit_partition(s.degree(), generators);
}

CellIndex CellIndex::build(int n, int dim) {
  check_skeleton_args(n, dim);
  return build(TotalOrder::lexicographic(n), dim);
}

CellIndex CellIndex::build(const TotalOrder& order, int dim) {
  if (dim < 1) throw SizeLimitError("cell index is defined for dimensions 1 and 2");
  CellIndex index;
  index.n_ = order.degree();
  index.dim_ = dim;
  for (auto& s : enumerate_cells(order, dim)) {
    const auto partition = simplex_partition(s);
    for (const auto& block : partition.blocks()) index.entries_.push_back(Cell{s, block});
  }
  index.index_entries();
  return index;
}

CellIndex::CellIndex(int n, int dim, std::vector<Cell> entries)
    : n_(n), dim_(dim), entries_(std::move(entries)) {
  check_skeleton_args(n, dim);
  for (const auto& cell : entries_) {
    if (cell.simplex.degree() != n || cell.simplex.dim() != dim) {
      throw DimensionError("cell index entry has wrong degree or dimension");
    }
    const auto partition = simplex_partition(cell.simplex);
    if (cell.block.empty() || partition.blocks()[partition.block_of(cell.block.front())] !=
                                  cell.block) {
      throw ValidationError("cell index entry block is not a block of its subsimplex partition");
    }
  }
  index_entries();
}

void CellIndex::index_entries() {
  ranges_.clear();
  std::size_t i = 0;
  while (i < entries_.size()) {
    std::size_t j = i + 1;
    while (j < entries_.size() && entries_[j].simplex == entries_[i].simplex) {
      if (entries_[j].block.front() <= entries_[j - 1].block.front()) {
        throw ValidationError("cell index blocks must be ordered by minimal element");
      }
      ++j;
    }
    if (!ranges_.emplace(entries_[i].simplex, std::pair{i, j}).second) {
      throw ValidationError("cell index entries for a subsimplex must be contiguous");
    }
    i = j;
  }
}

std::optional<std::size_t> CellIndex::find(const Subsimplex& s, std::span<const int> block) const {
  const auto r = range(s);
  if (!r) return std::nullopt;
  for (auto i = r->first; i < r->second; ++i) {
    const auto& b = entries_[i].block;
    if (std::equal(b.begin(), b.end(), block.begin(), block.end())) return i;
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> CellIndex::range(const Subsimplex& s) const {
  const auto it = ranges_.find(s);
  if (it == ranges_.end()) return std::nullopt;
  return it->second;
}

std::vector<Subsimplex> CellIndex::simplices() const {
  std::vector<Subsimplex> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i == 0 || !(entries_[i].simplex == entries_[i - 1].simplex)) {
      out.push_back(entries_[i].simplex);
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const Subsimplex& s) { j = s.vertices(); }

void to_json(nlohmann::json& j, const CellIndex& index) {
  j = nlohmann::json::array();
  for (const auto& cell : index.entries()) {
    j.push_back({{"vertices", cell.simplex}, {"block", cell.block}});
  }
}

CellIndex cell_index_from_json(const nlohmann::json& j, int n, int dim) {
  std::vector<Cell> entries;
  entries.reserve(j.size());
  for (const auto& item : j) {
    entries.push_back(Cell{Subsimplex(item.at("vertices").get<std::vector<Permutation>>()),
                           item.at("block").get<std::vector<int>>()});
  }
  return CellIndex(n, dim, std::move(entries));
}

}  // namespace simplexobs
