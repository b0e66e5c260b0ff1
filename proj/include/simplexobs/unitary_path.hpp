#pragma once

#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "simplexobs/permutation.hpp"
#include "simplexobs/skeleton.hpp"

namespace simplexobs {

using CMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultSamples = 1024;
inline constexpr double kDefaultLiftMargin = std::numbers::pi / 4;
inline constexpr double kDefaultPathTolerance = 1e-9;

/// Permutation matrix with U_g e_i = e_{g(i)}.
CMatrix permutation_matrix(const Permutation& g);

/// det of the principal submatrix on `block` (1-based indices).
std::complex<double> block_determinant(const CMatrix& m, std::span<const int> block);

/// Largest |m_ij| over entries (i, j) lying in different blocks.
double off_block_magnitude(const CMatrix& m, const Partition& partition);

/// Path in U(P) sampled at t = 0, 1/m, ..., 1.
///
/// Construction checks unitarity and the declared block structure of every
/// sample against `tolerance`.
class BlockUnitaryPath {
 public:
  BlockUnitaryPath(Partition partition, std::vector<CMatrix> samples,
                   double tolerance = kDefaultPathTolerance);

  int degree() const noexcept { return partition_.size(); }
  const Partition& partition() const noexcept { return partition_; }
  const std::vector<CMatrix>& samples() const noexcept { return samples_; }
  /// Number of sampling intervals m.
  std::size_t intervals() const noexcept { return samples_.size() - 1; }
  double tolerance() const noexcept { return tolerance_; }
  const CMatrix& front() const { return samples_.front(); }
  const CMatrix& back() const { return samples_.back(); }

 private:
  Partition partition_;
  std::vector<CMatrix> samples_;
  double tolerance_;
};

/// Winding invariants of det_B along a path.
struct BlockWinding {
  std::vector<int> block;
  double winding = 0.0;
  long upper_winding = 0;
  double defect = 0.0;
};

/// Accumulates the phase of det_B over consecutive samples. Throws
/// ResolutionError if a single step reaches pi - margin, and InputError if
/// `block` is not a block of the path's partition.
BlockWinding winding(const BlockUnitaryPath& path, std::span<const int> block,
                     double margin = kDefaultLiftMargin);

/// One entry per block of the path's partition, in block order.
std::vector<BlockWinding> winding_report(const BlockUnitaryPath& path,
                                         double margin = kDefaultLiftMargin);

/// Winding of a sampled U(1)-valued path.
double phase_winding(std::span<const std::complex<double>> values,
                     double margin = kDefaultLiftMargin);

/// ceil(w), snapping to the nearest integer when |w - round(w)| <= tol.
long upper_winding_number(double w, double tol = 1e-7);

/// a * b; a.back() must match b.front() within tolerance.
BlockUnitaryPath concatenate(const BlockUnitaryPath& a, const BlockUnitaryPath& b);

/// t -> gamma(1 - t).
BlockUnitaryPath reversed(const BlockUnitaryPath& path);

/// Constant left multiplication t -> V gamma(t), declared on `partition`.
BlockUnitaryPath left_multiply(const CMatrix& v, const BlockUnitaryPath& path,
                               const Partition& partition);

/// Pointwise product t -> a(t) b(t), declared on `partition`.
BlockUnitaryPath pointwise_product(const BlockUnitaryPath& a, const BlockUnitaryPath& b,
                                   const Partition& partition);

/// The same samples viewed as a path in U(Q) for a coarser Q.
BlockUnitaryPath coarsen(const BlockUnitaryPath& path, const Partition& coarser);

/// Upper winding numbers of the unmodified construction gamma(t) = exp(t log
/// U_{g0^-1 g1}) on each block: 1 for even blocks, 0 for odd ones.
std::vector<long> base_upper_winding(const Subsimplex& edge);

/// Path from I to U_{g0^-1 g1} in U(P(edge)) whose upper winding number on
/// block k equals target_uwn[k]. Throws ResolutionError when `samples` is too
/// coarse for the lifting margin.
BlockUnitaryPath edge_path(const Subsimplex& edge, std::span<const long> target_uwn,
                           int samples = kDefaultSamples, double margin = kDefaultLiftMargin);

/// gamma01 * (U_{g0^-1 g1} gamma12) * gamma02^-1, a loop at I in U(P(face)).
BlockUnitaryPath face_loop(const Subsimplex& face, const BlockUnitaryPath& e01,
                           const BlockUnitaryPath& e12, const BlockUnitaryPath& e02);

/// A map on the 1-skeleton given by its samples u(x) along each edge, t = 0 at
/// the first vertex.
struct EdgeMapSamples {
  Subsimplex edge;
  std::vector<CMatrix> values;
};

struct WeakCorrectionReport {
  bool admissible = false;
  double max_vertex_error = 0.0;
  double max_off_block = 0.0;
  double max_unitarity_error = 0.0;
};

/// Derives T_g from the diagonal residues U_g^* u(g) = exp(i T_g), applies
/// v(x) = exp(-i sum_g x_g T_g) pointwise and checks that u v hits U_g at
/// every vertex and stays in U_{g0} U(P(edge)) along every edge. Throws
/// InputError if a vertex residue is not diagonal.
WeakCorrectionReport correct_weakly_admissible(std::span<const EdgeMapSamples> edges,
                                               double tolerance = 1e-9);

bool validate_weak_to_admissible(std::span<const EdgeMapSamples> edges, double tolerance = 1e-9);

/// Samples of the admissible map x -> U_{g0} gamma(t) on an edge.
EdgeMapSamples admissible_edge_samples(const BlockUnitaryPath& gamma, const Subsimplex& edge);

/// Multiplies edge samples on the right by exp(i ((1 - t) T_{g0} + t T_{g1})),
/// turning an admissible map into a weakly admissible one. `phases` maps a
/// vertex to the diagonal of T_g; missing vertices use T_g = 0.
EdgeMapSamples twist_edge_samples(const EdgeMapSamples& samples,
                                  const std::map<Permutation, std::vector<double>>& phases);

nlohmann::json path_to_json(const BlockUnitaryPath& path);
void to_json(nlohmann::json& j, const BlockWinding& w);

}  // namespace simplexobs
