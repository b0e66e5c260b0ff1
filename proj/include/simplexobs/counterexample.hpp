#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "simplexobs/permutation.hpp"
#include "simplexobs/skeleton.hpp"
#include "simplexobs/unitary_path.hpp"

namespace simplexobs {

// The counterexample systems act on the 2-skeleton of the S_4-simplex.
inline constexpr int kSystemMaps = 4;

/// Point of the 2-skeleton in exact barycentric coordinates. Only the
/// non-zero coordinates are stored, sorted by vertex.
class SkeletonPoint {
 public:
  /// Coordinates must be non-negative, sum to exactly 1 and have at most
  /// three non-zero entries; zero entries are dropped.
  explicit SkeletonPoint(std::vector<std::pair<Permutation, mpq_class>> coords);

  static SkeletonPoint vertex(const Permutation& g);
  /// Point of `s` with the given weights (one per vertex).
  static SkeletonPoint on(const Subsimplex& s, const std::vector<mpq_class>& weights);
  static SkeletonPoint barycenter(const Subsimplex& s);

  int degree() const noexcept { return coords_.front().first.size(); }
  const std::vector<std::pair<Permutation, mpq_class>>& coords() const noexcept { return coords_; }
  mpq_class coord(const Permutation& g) const;
  /// Vertices with non-zero coordinate.
  std::vector<Permutation> support() const;

  friend bool operator==(const SkeletonPoint& a, const SkeletonPoint& b) {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<std::pair<Permutation, mpq_class>> coords_;
};

/// Class [x, i] of the quotient Z, named by the minimal element of i's
/// block in the join over all D-domains containing x.
struct ZClass {
  SkeletonPoint point;
  int rep;

  friend bool operator==(const ZClass&, const ZClass&) = default;
};

/// x_g > 1/4.
bool in_v(const SkeletonPoint& x, const Permutation& g);
/// x_g >= 1/4.
bool in_d(const SkeletonPoint& x, const Permutation& g);

/// Every subsimplex D_{g0..gl} containing x: the non-empty subsets of
/// {g : x_g >= 1/4}, listed by dimension then lexicographically.
std::vector<Subsimplex> containing_domains(const SkeletonPoint& x);

/// Join of P(D) over all containing D-domains.
Partition domain_partition(const SkeletonPoint& x);

ZClass z_class(const SkeletonPoint& x, int i);
ZClass sigma_eval(const SkeletonPoint& x, int i);
/// Uses the lexicographically first g with x in V_g.
ZClass tau_eval(const SkeletonPoint& x, int i);
/// The chart formula [x, g^-1(i)]; throws InputError unless x lies in V_g.
ZClass tau_chart(const SkeletonPoint& x, int i, const Permutation& g);

enum class SystemSide { sigma, tau };

/// i ~ j iff the i-th and j-th maps agree at x.
Partition point_partition(const SkeletonPoint& x, SystemSide side);

/// Barycentric lattice points {(a, b, c) / depth} of a face.
std::vector<SkeletonPoint> face_grid(const Subsimplex& face, int depth);

struct PiecewiseReport {
  int grid_depth = 0;
  std::size_t faces_checked = 0;
  std::size_t points_checked = 0;
  std::size_t cover_failures = 0;
  std::size_t gluing_failures = 0;
  std::size_t partition_lemma_failures = 0;
  std::size_t intersection_failures = 0;
  std::size_t relabel_failures = 0;

  bool passed() const noexcept {
    return cover_failures == 0 && gluing_failures == 0 && partition_lemma_failures == 0 &&
           intersection_failures == 0 && relabel_failures == 0;
  }
};

/// Sweeps the lattice of every given face (all 2024 faces of the S_4-simplex
/// by default) and counts violations of the cover property, chart gluing,
/// the point-partition bound, the domain intersection property, and the
/// relabeling relation P_tau(x) = g P_sigma(x) for x in V_g.
PiecewiseReport check_piecewise_equivalence(int grid_depth,
                                            std::optional<std::vector<Subsimplex>> faces = {});

void to_json(nlohmann::json& j, const PiecewiseReport& r);

/// Support condition of a unitary equivalence at x: |u_ij| > tol implies
/// tau_i(x) == sigma_j(x).
bool is_unitary_equivalence_at(const SkeletonPoint& x, const CMatrix& u, double tol = 1e-9);

/// Off-block mass of U_g^* u with respect to P_sigma(x). Throws InputError
/// unless tau_i(x) == sigma_{g^-1(i)}(x) for every i.
double unitary_block_residual(const SkeletonPoint& x, const CMatrix& u, const Permutation& g);

bool satisfies_unitary_block_constraint(const SkeletonPoint& x, const CMatrix& u,
                                        const Permutation& g, double tol = 1e-9);

void to_json(nlohmann::json& j, const SkeletonPoint& x);

}  // namespace simplexobs
