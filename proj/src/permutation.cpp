#include "simplexobs/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "simplexobs/errors.hpp"

namespace simplexobs {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    auto root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const auto next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Keeps the smaller index as root so roots are block minima.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

std::vector<std::vector<int>> blocks_from_roots(UnionFind& uf, int n) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const auto root = uf.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i + 1);
  }
  return blocks;
}

void require_same_size(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": degree mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  if (images_.empty()) throw ValidationError("permutation must have degree n >= 1");
  const auto n = static_cast<int>(images_.size());
  std::vector<bool> seen(images_.size(), false);
  for (const auto v : images_) {
    if (v < 1 || v > n || seen[v - 1]) {
      throw ValidationError("images do not form a bijection of {1, ..., " + std::to_string(n) +
                            "}");
    }
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw ValidationError("permutation must have degree n >= 1");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i + 1)) return false;
  }
  return true;
}

std::vector<Permutation> enumerate_sn(int n) {
  if (n < 1 || n > kMaxEnumerationDegree) {
    throw SizeLimitError("enumerate_sn: n must lie in [1, " +
                         std::to_string(kMaxEnumerationDegree) + "], got " + std::to_string(n));
  }
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  require_same_size(g.size(), h.size(), "compose");
  std::vector<int> images(static_cast<std::size_t>(g.size()));
  for (int i = 1; i <= g.size(); ++i) images[i - 1] = g(h(i));
  return Permutation(std::move(images));
}

Permutation inverse(const Permutation& g) {
  std::vector<int> images(static_cast<std::size_t>(g.size()));
  for (int i = 1; i <= g.size(); ++i) images[g(i) - 1] = i;
  return Permutation(std::move(images));
}

int cycle_count(const Permutation& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  int cycles = 0;
  for (int i = 1; i <= g.size(); ++i) {
    if (seen[i - 1]) continue;
    ++cycles;
    for (int j = i; !seen[j - 1]; j = g(j)) seen[j - 1] = true;
  }
  return cycles;
}

int sign(const Permutation& g) { return (g.size() - cycle_count(g)) % 2 == 0 ? 1 : -1; }

Partition::Partition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)), block_index_(static_cast<std::size_t>(n > 0 ? n : 0)) {
  if (n < 1) throw ValidationError("partition must cover {1, ..., n} with n >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::size_t covered = 0;
  for (auto& block : blocks_) {
    if (block.empty()) throw ValidationError("partition blocks must be non-empty");
    std::sort(block.begin(), block.end());
    for (const auto v : block) {
      if (v < 1 || v > n || seen[v - 1]) {
        throw ValidationError("partition blocks must be disjoint subsets of {1, ..., n}");
      }
      seen[v - 1] = true;
      ++covered;
    }
  }
  if (covered != static_cast<std::size_t>(n)) {
    throw ValidationError("partition blocks must cover {1, ..., n}");
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (const auto v : blocks_[b]) block_index_[v - 1] = b;
  }
}

Partition Partition::finest(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back({i});
  return Partition(n, std::move(blocks));
}

Partition Partition::coarsest(int n) {
  std::vector<int> all(static_cast<std::size_t>(n > 0 ? n : 0));
  std::iota(all.begin(), all.end(), 1);
  return Partition(n, {all});
}

Partition orbit_partition(int n, std::span<const Permutation> generators) {
  if (n < 1) throw ValidationError("orbit_partition: n must be >= 1");
  UnionFind uf(n);
  for (const auto& g : generators) {
    require_same_size(n, g.size(), "orbit_partition");
    for (int i = 1; i <= n; ++i) uf.unite(i - 1, g(i) - 1);
  }
  return Partition(n, blocks_from_roots(uf, n));
}

bool refines(const Partition& p, const Partition& q) {
  require_same_size(p.size(), q.size(), "refines");
  for (const auto& block : p.blocks()) {
    const auto target = q.block_of(block.front());
    for (const auto v : block) {
      if (q.block_of(v) != target) return false;
    }
  }
  return true;
}

Partition join(const Partition& p, const Partition& q) {
  require_same_size(p.size(), q.size(), "join");
  const auto n = p.size();
  UnionFind uf(n);
  for (const auto* part : {&p, &q}) {
    for (const auto& block : part->blocks()) {
      for (const auto v : block) uf.unite(block.front() - 1, v - 1);
    }
  }
  return Partition(n, blocks_from_roots(uf, n));
}

Partition relabel(const Partition& p, const Permutation& g) {
  require_same_size(p.size(), g.size(), "relabel");
  auto blocks = p.blocks();
  for (auto& block : blocks) {
    for (auto& v : block) v = g(v);
  }
  return Partition(p.size(), std::move(blocks));
}

void to_json(nlohmann::json& j, const Partition& p) { j = p.blocks(); }

}  // namespace simplexobs
