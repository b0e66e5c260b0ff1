#include "simplexobs/unitary_path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simplexobs/errors.hpp"

namespace simplexobs {

namespace {

using std::numbers::pi;
using Complex = std::complex<double>;

double unitarity_error(const CMatrix& m) {
  const auto n = m.rows();
  return (m.adjoint() * m - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double max_abs_difference(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::size_t find_block(const Partition& p, std::span<const int> block) {
  if (!block.empty() && block.front() >= 1 && block.front() <= p.size()) {
    const auto index = p.block_of(block.front());
    const auto& candidate = p.blocks()[index];
    if (std::equal(candidate.begin(), candidate.end(), block.begin(), block.end())) return index;
  }
  throw InputError("block is not a block of the path's partition");
}

// Block elements in cycle order b, h(b), h(h(b)), ... starting at the minimum.
std::vector<int> cycle_order(const Permutation& h, const std::vector<int>& block) {
  std::vector<int> order{block.front()};
  for (int x = h(block.front()); x != block.front(); x = h(x)) order.push_back(x);
  return order;
}

// Principal argument in (-pi, pi] of the eigenvalue exp(2 pi i j / k).
double principal_root_angle(std::size_t j, std::size_t k) {
  return 2 * j <= k ? 2 * pi * static_cast<double>(j) / static_cast<double>(k)
                    : 2 * pi * static_cast<double>(j) / static_cast<double>(k) - 2 * pi;
}

}  // namespace

CMatrix permutation_matrix(const Permutation& g) {
  const auto n = g.size();
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 1; i <= n; ++i) m(g(i) - 1, i - 1) = 1.0;
  return m;
}

std::complex<double> block_determinant(const CMatrix& m, std::span<const int> block) {
  const auto k = static_cast<Eigen::Index>(block.size());
  CMatrix sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(block[r] - 1, block[c] - 1);
  }
  return sub.determinant();
}

double off_block_magnitude(const CMatrix& m, const Partition& partition) {
  double worst = 0.0;
  for (int r = 1; r <= partition.size(); ++r) {
    for (int c = 1; c <= partition.size(); ++c) {
      if (!partition.same_block(r, c)) worst = std::max(worst, std::abs(m(r - 1, c - 1)));
    }
  }
  return worst;
}

BlockUnitaryPath::BlockUnitaryPath(Partition partition, std::vector<CMatrix> samples,
                                   double tolerance)
    : partition_(std::move(partition)), samples_(std::move(samples)), tolerance_(tolerance) {
  if (samples_.size() < 2) throw InputError("a sampled path needs at least two samples");
  if (!(tolerance_ > 0)) throw ValidationError("path tolerance must be positive");
  const auto n = partition_.size();
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto& s = samples_[k];
    if (s.rows() != n || s.cols() != n) throw DimensionError("path sample has the wrong shape");
    if (unitarity_error(s) > tolerance_) {
      throw InputError("path sample " + std::to_string(k) + " is not unitary within tolerance");
    }
    if (off_block_magnitude(s, partition_) > tolerance_) {
      throw InputError("path sample " + std::to_string(k) +
                       " leaves the declared block structure");
    }
  }
}

double phase_winding(std::span<const std::complex<double>> values, double margin) {
  double total = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const auto step = std::arg(values[k] * std::conj(values[k - 1]));
    if (std::abs(step) >= pi - margin) {
      throw ResolutionError("phase step " + std::to_string(step) + " at sample " +
                            std::to_string(k) +
                            " is too large to lift unambiguously; sample the path more densely");
    }
    total += step;
  }
  return total / (2 * pi);
}

long upper_winding_number(double w, double tol) {
  const auto nearest = std::round(w);
  if (std::abs(w - nearest) <= tol) return static_cast<long>(nearest);
  return static_cast<long>(std::ceil(w));
}

BlockWinding winding(const BlockUnitaryPath& path, std::span<const int> block, double margin) {
  const auto index = find_block(path.partition(), block);
  const auto& b = path.partition().blocks()[index];
  std::vector<Complex> dets;
  dets.reserve(path.samples().size());
  for (const auto& s : path.samples()) dets.push_back(block_determinant(s, b));
  BlockWinding out;
  out.block = b;
  out.winding = phase_winding(dets, margin);
  out.upper_winding = upper_winding_number(out.winding);
  out.defect = std::max(0.0, static_cast<double>(out.upper_winding) - out.winding);
  return out;
}

std::vector<BlockWinding> winding_report(const BlockUnitaryPath& path, double margin) {
  std::vector<BlockWinding> out;
  for (const auto& b : path.partition().blocks()) out.push_back(winding(path, b, margin));
  return out;
}

BlockUnitaryPath concatenate(const BlockUnitaryPath& a, const BlockUnitaryPath& b) {
  if (!(a.partition() == b.partition())) {
    throw CompositionError("concatenated paths must share their partition");
  }
  const auto tol = std::max(a.tolerance(), b.tolerance());
  const auto gap = max_abs_difference(a.back(), b.front());
  if (gap > tol) {
    throw CompositionError("endpoint mismatch " + std::to_string(gap) + " exceeds tolerance");
  }
  auto samples = a.samples();
  samples.insert(samples.end(), b.samples().begin() + 1, b.samples().end());
  return BlockUnitaryPath(a.partition(), std::move(samples), tol);
}

BlockUnitaryPath reversed(const BlockUnitaryPath& path) {
  std::vector<CMatrix> samples(path.samples().rbegin(), path.samples().rend());
  return BlockUnitaryPath(path.partition(), std::move(samples), path.tolerance());
}

BlockUnitaryPath left_multiply(const CMatrix& v, const BlockUnitaryPath& path,
                               const Partition& partition) {
  if (!refines(path.partition(), partition)) {
    throw InputError("left_multiply: path partition must refine the target partition");
  }
  std::vector<CMatrix> samples;
  samples.reserve(path.samples().size());
  for (const auto& s : path.samples()) samples.push_back(v * s);
  return BlockUnitaryPath(partition, std::move(samples), path.tolerance());
}

BlockUnitaryPath pointwise_product(const BlockUnitaryPath& a, const BlockUnitaryPath& b,
                                   const Partition& partition) {
  if (a.intervals() != b.intervals()) {
    throw DimensionError("pointwise_product: paths must share their sampling grid");
  }
  if (!refines(a.partition(), partition) || !refines(b.partition(), partition)) {
    throw InputError("pointwise_product: path partitions must refine the target partition");
  }
  std::vector<CMatrix> samples;
  samples.reserve(a.samples().size());
  for (std::size_t k = 0; k < a.samples().size(); ++k) {
    samples.push_back(a.samples()[k] * b.samples()[k]);
  }
  return BlockUnitaryPath(partition, std::move(samples), std::max(a.tolerance(), b.tolerance()));
}

BlockUnitaryPath coarsen(const BlockUnitaryPath& path, const Partition& coarser) {
  if (!refines(path.partition(), coarser)) {
    throw InputError("coarsen: target partition is not coarser than the path partition");
  }
  return BlockUnitaryPath(coarser, path.samples(), path.tolerance());
}

std::vector<long> base_upper_winding(const Subsimplex& edge) {
  if (edge.dim() != 1) throw DimensionError("base_upper_winding expects an edge");
  std::vector<long> out;
  const auto partition = simplex_partition(edge);
  for (const auto& b : partition.blocks()) out.push_back(b.size() % 2 == 0 ? 1 : 0);
  return out;
}

BlockUnitaryPath edge_path(const Subsimplex& edge, std::span<const long> target_uwn, int samples,
                           double margin) {
  if (edge.dim() != 1) throw DimensionError("edge_path expects an edge");
  if (samples < 1) throw ResolutionError("edge_path needs at least one sampling interval");
  const auto n = edge.degree();
  const auto h = compose(inverse(edge.vertex(0)), edge.vertex(1));
  auto partition = orbit_partition(n, std::vector{h});
  if (target_uwn.size() != partition.block_count()) {
    throw DimensionError("edge_path: target has " + std::to_string(target_uwn.size()) +
                         " entries, edge partition has " +
                         std::to_string(partition.block_count()) + " blocks");
  }

  // Per block: orthonormal eigenvectors of the cyclic shift and the angle
  // each eigen-direction turns through over t in [0, 1].
  struct Direction {
    Eigen::VectorXcd vector;
    double angle;
  };
  std::vector<Direction> directions;
  for (std::size_t bi = 0; bi < partition.block_count(); ++bi) {
    const auto order = cycle_order(h, partition.blocks()[bi]);
    const auto k = order.size();
    const auto base = static_cast<long>(k % 2 == 0 ? 1 : 0);
    const auto shift = target_uwn[bi] - base;
    double det_angle = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
      for (std::size_t pos = 0; pos < k; ++pos) {
        const auto phase = -2 * pi * static_cast<double>(j * pos % k) / static_cast<double>(k);
        v(order[pos] - 1) = std::polar(1.0 / std::sqrt(static_cast<double>(k)), phase);
      }
      auto angle = principal_root_angle(j, k);
      // The eigenvalue-1 direction carries the extra full turns.
      if (j == 0) angle += 2 * pi * static_cast<double>(shift);
      det_angle += angle;
      directions.push_back({std::move(v), angle});
    }
    if (std::abs(det_angle) / samples >= pi - margin) {
      throw ResolutionError("edge_path: " + std::to_string(samples) +
                            " samples are too coarse for block winding target " +
                            std::to_string(target_uwn[bi]) + "; increase the sample count");
    }
  }

  std::vector<CMatrix> values;
  values.reserve(static_cast<std::size_t>(samples) + 1);
  for (int step = 0; step <= samples; ++step) {
    const auto t = static_cast<double>(step) / samples;
    CMatrix u = CMatrix::Zero(n, n);
    for (const auto& d : directions) {
      u += std::polar(1.0, d.angle * t) * (d.vector * d.vector.adjoint());
    }
    values.push_back(std::move(u));
  }
  return BlockUnitaryPath(std::move(partition), std::move(values));
}

BlockUnitaryPath face_loop(const Subsimplex& face, const BlockUnitaryPath& e01,
                           const BlockUnitaryPath& e12, const BlockUnitaryPath& e02) {
  if (face.dim() != 2) throw DimensionError("face_loop expects a 2-face");
  const auto& v = face.vertices();
  const Subsimplex edges[] = {Subsimplex({v[0], v[1]}), Subsimplex({v[1], v[2]}),
                              Subsimplex({v[0], v[2]})};
  const BlockUnitaryPath* paths[] = {&e01, &e12, &e02};
  for (int i = 0; i < 3; ++i) {
    if (!(paths[i]->partition() == simplex_partition(edges[i]))) {
      throw CompositionError("face_loop: edge path partition does not match its edge");
    }
  }
  const auto partition = simplex_partition(face);
  const auto shift = permutation_matrix(compose(inverse(v[0]), v[1]));
  const auto first = coarsen(e01, partition);
  const auto second = left_multiply(shift, e12, partition);
  const auto third = reversed(coarsen(e02, partition));
  return concatenate(concatenate(first, second), third);
}

EdgeMapSamples admissible_edge_samples(const BlockUnitaryPath& gamma, const Subsimplex& edge) {
  const auto base = permutation_matrix(edge.vertex(0));
  EdgeMapSamples out{edge, {}};
  out.values.reserve(gamma.samples().size());
  for (const auto& s : gamma.samples()) out.values.push_back(base * s);
  return out;
}

EdgeMapSamples twist_edge_samples(const EdgeMapSamples& samples,
                                  const std::map<Permutation, std::vector<double>>& phases) {
  const auto n = samples.edge.degree();
  const auto lookup = [&](const Permutation& g) {
    const auto it = phases.find(g);
    if (it == phases.end()) return std::vector<double>(static_cast<std::size_t>(n), 0.0);
    if (it->second.size() != static_cast<std::size_t>(n)) {
      throw DimensionError("twist phases must have one entry per basis vector");
    }
    return it->second;
  };
  const auto t0 = lookup(samples.edge.vertex(0));
  const auto t1 = lookup(samples.edge.vertex(1));
  const auto m = samples.values.size() - 1;
  EdgeMapSamples out{samples.edge, {}};
  for (std::size_t k = 0; k <= m; ++k) {
    const auto t = static_cast<double>(k) / static_cast<double>(m);
    Eigen::VectorXcd diag(n);
    for (int i = 0; i < n; ++i) diag(i) = std::polar(1.0, (1 - t) * t0[i] + t * t1[i]);
    out.values.push_back(samples.values[k] * diag.asDiagonal());
  }
  return out;
}

WeakCorrectionReport correct_weakly_admissible(std::span<const EdgeMapSamples> edges,
                                               double tolerance) {
  WeakCorrectionReport report;
  std::map<Permutation, CMatrix> vertex_values;
  const auto record = [&](const Permutation& g, const CMatrix& value) {
    const auto [it, inserted] = vertex_values.emplace(g, value);
    if (!inserted && max_abs_difference(it->second, value) > tolerance) {
      throw InputError("edges disagree on the value of the map at a shared vertex");
    }
  };
  for (const auto& e : edges) {
    if (e.edge.dim() != 1 || e.values.size() < 2) {
      throw InputError("weak map samples need an edge and at least two values");
    }
    record(e.edge.vertex(0), e.values.front());
    record(e.edge.vertex(1), e.values.back());
  }

  // U_g^* u(g) = exp(i T_g) with T_g diagonal.
  std::map<Permutation, Eigen::VectorXd> log_phases;
  for (const auto& [g, value] : vertex_values) {
    const CMatrix residue = permutation_matrix(g).adjoint() * value;
    if (off_block_magnitude(residue, Partition::finest(g.size())) > tolerance) {
      throw InputError("vertex residue U_g^* u(g) is not diagonal");
    }
    Eigen::VectorXd t(residue.rows());
    for (Eigen::Index i = 0; i < residue.rows(); ++i) t(i) = std::arg(residue(i, i));
    log_phases.emplace(g, std::move(t));
  }

  for (const auto& e : edges) {
    const auto& g0 = e.edge.vertex(0);
    const auto& g1 = e.edge.vertex(1);
    const auto partition = simplex_partition(e.edge);
    const CMatrix base_inv = permutation_matrix(g0).adjoint();
    const auto& t0 = log_phases.at(g0);
    const auto& t1 = log_phases.at(g1);
    const auto m = e.values.size() - 1;
    for (std::size_t k = 0; k <= m; ++k) {
      const auto t = static_cast<double>(k) / static_cast<double>(m);
      Eigen::VectorXcd correction(t0.size());
      for (Eigen::Index i = 0; i < t0.size(); ++i) {
        correction(i) = std::polar(1.0, -((1 - t) * t0(i) + t * t1(i)));
      }
      const CMatrix corrected = e.values[k] * correction.asDiagonal();
      report.max_unitarity_error = std::max(report.max_unitarity_error, unitarity_error(corrected));
      report.max_off_block =
          std::max(report.max_off_block, off_block_magnitude(base_inv * corrected, partition));
      if (k == 0) {
        report.max_vertex_error = std::max(
            report.max_vertex_error, max_abs_difference(corrected, permutation_matrix(g0)));
      } else if (k == m) {
        report.max_vertex_error = std::max(
            report.max_vertex_error, max_abs_difference(corrected, permutation_matrix(g1)));
      }
    }
  }
  report.admissible = report.max_vertex_error <= tolerance && report.max_off_block <= tolerance &&
                      report.max_unitarity_error <= tolerance;
  return report;
}

bool validate_weak_to_admissible(std::span<const EdgeMapSamples> edges, double tolerance) {
  return correct_weakly_admissible(edges, tolerance).admissible;
}

nlohmann::json path_to_json(const BlockUnitaryPath& path) {
  auto samples = nlohmann::json::array();
  for (const auto& s : path.samples()) {
    auto entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
      for (Eigen::Index c = 0; c < s.cols(); ++c) {
        entries.push_back({s(r, c).real(), s(r, c).imag()});
      }
    }
    samples.push_back(std::move(entries));
  }
  return {{"n", path.degree()}, {"partition", path.partition()}, {"samples", std::move(samples)}};
}

void to_json(nlohmann::json& j, const BlockWinding& w) {
  j = {{"block", w.block},
       {"w", w.winding},
       {"uwn", w.upper_winding},
       {"defect", w.defect}};
}

}  // namespace simplexobs
