#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "json.hpp"

namespace simplexobs {

// Largest n accepted by enumerate_sn.
inline constexpr int kMaxEnumerationDegree = 8;

/// Element of S_n in one-line notation: images()[i - 1] == g(i).
///
/// Ordering is lexicographic on the image tuple, which is the default total
/// order on S_n used everywhere in this library.
class Permutation {
 public:
  /// Takes 1-based images; throws ValidationError unless they form a
  /// bijection of {1, ..., n} with n >= 1.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }

  /// g(i) for 1 <= i <= n.
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }

  std::span<const int> images() const noexcept { return images_; }

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
};

/// All n! permutations in increasing lexicographic order. 1 <= n <= 8.
std::vector<Permutation> enumerate_sn(int n);

/// (g o h)(i) = g(h(i)).
Permutation compose(const Permutation& g, const Permutation& h);

Permutation inverse(const Permutation& g);

/// +1 for even permutations, -1 for odd ones.
int sign(const Permutation& g);

/// Number of cycles, fixed points included.
int cycle_count(const Permutation& g);

/// Set partition of {1, ..., n} in canonical form: every block sorted, blocks
/// ordered by their minimal element.
class Partition {
 public:
  /// Throws ValidationError unless the blocks are non-empty, disjoint and
  /// cover {1, ..., n}. Blocks may be given in any order.
  Partition(int n, std::vector<std::vector<int>> blocks);

  static Partition finest(int n);
  static Partition coarsest(int n);

  int size() const noexcept { return n_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }

  /// Position in blocks() of the block containing i.
  std::size_t block_of(int i) const { return block_index_[static_cast<std::size_t>(i - 1)]; }
  bool same_block(int i, int j) const { return block_of(i) == block_of(j); }

  /// Minimal element of the block containing i.
  int representative(int i) const { return blocks_[block_of(i)].front(); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
  std::vector<std::size_t> block_index_;
};

/// Orbits of the group generated by `generators` acting on {1, ..., n}.
/// An empty generator set gives the finest partition.
Partition orbit_partition(int n, std::span<const Permutation> generators);

/// True iff every block of p lies inside a block of q (p is finer than q).
bool refines(const Partition& p, const Partition& q);

/// Finest partition coarser than both p and q.
Partition join(const Partition& p, const Partition& q);

/// Image partition {g(B) : B in p}.
Partition relabel(const Partition& p, const Permutation& g);

void to_json(nlohmann::json& j, const Partition& p);

}  // namespace simplexobs

template <>
struct nlohmann::adl_serializer<simplexobs::Permutation> {
  static simplexobs::Permutation from_json(const json& j) {
    return simplexobs::Permutation(j.get<std::vector<int>>());
  }
  static void to_json(json& j, const simplexobs::Permutation& g) {
    j = std::vector<int>(g.images().begin(), g.images().end());
  }
};
