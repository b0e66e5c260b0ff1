#include "simplexobs/counterexample.hpp"

#include <algorithm>
#include <string>

#include "simplexobs/errors.hpp"

namespace simplexobs {

namespace {

const mpq_class& quarter() {
  static const mpq_class q(1, 4);
  return q;
}

void check_map_index(const SkeletonPoint& x, int i) {
  if (i < 1 || i > x.degree()) {
    throw ValidationError("map index " + std::to_string(i) + " outside [1, " +
                          std::to_string(x.degree()) + "]");
  }
}

std::vector<Permutation> domain_vertices(const SkeletonPoint& x) {
  std::vector<Permutation> out;
  for (const auto& [g, c] : x.coords()) {
    if (c >= quarter()) out.push_back(g);
  }
  return out;
}

bool is_subset(const std::vector<Permutation>& small, const std::vector<Permutation>& big) {
  return std::all_of(small.begin(), small.end(), [&](const Permutation& g) {
    return std::find(big.begin(), big.end(), g) != big.end();
  });
}

}  // namespace

SkeletonPoint::SkeletonPoint(std::vector<std::pair<Permutation, mpq_class>> coords) {
  mpq_class total = 0;
  for (auto& [g, c] : coords) {
    c.canonicalize();
    if (sgn(c) < 0) throw ValidationError("barycentric coordinates must be non-negative");
    total += c;
    if (sgn(c) > 0) coords_.emplace_back(g, c);
  }
  if (total != 1) throw ValidationError("barycentric coordinates must sum to 1");
  if (coords_.size() > 3) {
    throw ValidationError("point has more than three non-zero coordinates; not in the 2-skeleton");
  }
  std::sort(coords_.begin(), coords_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < coords_.size(); ++k) {
    if (coords_[k].first == coords_[k - 1].first) {
      throw ValidationError("repeated vertex in barycentric coordinates");
    }
    if (coords_[k].first.size() != coords_.front().first.size()) {
      throw DimensionError("barycentric vertices must share the same degree");
    }
  }
}

SkeletonPoint SkeletonPoint::vertex(const Permutation& g) { return SkeletonPoint({{g, 1}}); }

SkeletonPoint SkeletonPoint::on(const Subsimplex& s, const std::vector<mpq_class>& weights) {
  if (weights.size() != s.vertices().size()) {
    throw DimensionError("one weight per subsimplex vertex expected");
  }
  std::vector<std::pair<Permutation, mpq_class>> coords;
  for (std::size_t k = 0; k < weights.size(); ++k) coords.emplace_back(s.vertex(k), weights[k]);
  return SkeletonPoint(std::move(coords));
}

SkeletonPoint SkeletonPoint::barycenter(const Subsimplex& s) {
  const auto k = static_cast<long>(s.vertices().size());
  return on(s, std::vector<mpq_class>(s.vertices().size(), mpq_class(1, k)));
}

mpq_class SkeletonPoint::coord(const Permutation& g) const {
  for (const auto& [h, c] : coords_) {
    if (h == g) return c;
  }
  return 0;
}

std::vector<Permutation> SkeletonPoint::support() const {
  std::vector<Permutation> out;
  for (const auto& [g, c] : coords_) out.push_back(g);
  return out;
}

bool in_v(const SkeletonPoint& x, const Permutation& g) { return x.coord(g) > quarter(); }

bool in_d(const SkeletonPoint& x, const Permutation& g) { return x.coord(g) >= quarter(); }

std::vector<Subsimplex> containing_domains(const SkeletonPoint& x) {
  const auto s = domain_vertices(x);
  if (s.size() > 3) throw InternalError("more than three coordinates reach 1/4");
  std::vector<Subsimplex> out;
  for (unsigned mask = 1; mask < (1U << s.size()); ++mask) {
    std::vector<Permutation> vertices;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (mask & (1U << k)) vertices.push_back(s[k]);
    }
    out.emplace_back(std::move(vertices));
  }
  std::sort(out.begin(), out.end(), [](const Subsimplex& a, const Subsimplex& b) {
    return a.dim() != b.dim() ? a.dim() < b.dim() : a < b;
  });
  return out;
}

Partition domain_partition(const SkeletonPoint& x) {
  auto joined = Partition::finest(x.degree());
  for (const auto& d : containing_domains(x)) joined = join(joined, simplex_partition(d));
  return joined;
}

ZClass z_class(const SkeletonPoint& x, int i) {
  check_map_index(x, i);
  return ZClass{x, domain_partition(x).representative(i)};
}

ZClass sigma_eval(const SkeletonPoint& x, int i) { return z_class(x, i); }

ZClass tau_chart(const SkeletonPoint& x, int i, const Permutation& g) {
  check_map_index(x, i);
  if (!in_v(x, g)) throw InputError("point does not lie in the chart V_g");
  return z_class(x, inverse(g)(i));
}

ZClass tau_eval(const SkeletonPoint& x, int i) {
  for (const auto& g : x.support()) {
    if (in_v(x, g)) return tau_chart(x, i, g);
  }
  throw InternalError("no chart V_g contains the point; the V_g do not cover the skeleton");
}

Partition point_partition(const SkeletonPoint& x, SystemSide side) {
  const auto n = x.degree();
  std::vector<std::vector<int>> blocks;
  std::vector<ZClass> seen;
  for (int i = 1; i <= n; ++i) {
    const auto cls = side == SystemSide::sigma ? sigma_eval(x, i) : tau_eval(x, i);
    const auto it = std::find(seen.begin(), seen.end(), cls);
    if (it == seen.end()) {
      seen.push_back(cls);
      blocks.push_back({i});
    } else {
      blocks[static_cast<std::size_t>(it - seen.begin())].push_back(i);
    }
  }
  return Partition(n, std::move(blocks));
}

std::vector<SkeletonPoint> face_grid(const Subsimplex& face, int depth) {
  if (depth < 1) throw ValidationError("grid depth must be at least 1");
  if (face.dim() != 2) throw DimensionError("face_grid expects a 2-face");
  std::vector<SkeletonPoint> out;
  for (int a = depth; a >= 0; --a) {
    for (int b = depth - a; b >= 0; --b) {
      const int c = depth - a - b;
      out.push_back(SkeletonPoint::on(
          face, {mpq_class(a, depth), mpq_class(b, depth), mpq_class(c, depth)}));
    }
  }
  return out;
}

PiecewiseReport check_piecewise_equivalence(int grid_depth,
                                            std::optional<std::vector<Subsimplex>> faces) {
  if (grid_depth < 1) throw ValidationError("grid depth must be at least 1");
  if (!faces) faces = enumerate_cells(kSystemMaps, 2);

  PiecewiseReport report;
  report.grid_depth = grid_depth;
  for (const auto& face : *faces) {
    ++report.faces_checked;
    const auto face_partition = simplex_partition(face);
    for (const auto& x : face_grid(face, grid_depth)) {
      ++report.points_checked;
      const auto n = x.degree();

      std::vector<Permutation> charts;
      for (const auto& g : face.vertices()) {
        if (in_v(x, g)) charts.push_back(g);
      }
      if (charts.empty()) {
        ++report.cover_failures;
        continue;
      }

      const auto sigma_partition = point_partition(x, SystemSide::sigma);

      bool glued = true;
      for (int i = 1; i <= n && glued; ++i) {
        const auto reference = tau_eval(x, i);
        for (const auto& g : charts) {
          if (!(tau_chart(x, i, g) == reference) ||
              !(sigma_eval(x, inverse(g)(i)) == reference)) {
            glued = false;
            break;
          }
        }
      }
      if (!glued) ++report.gluing_failures;

      // Every subsimplex of the face that contains x bounds P_sigma(x).
      const auto support = x.support();
      bool bounded = true;
      for (unsigned mask = 1; mask < 8U && bounded; ++mask) {
        std::vector<Permutation> vertices;
        for (std::size_t k = 0; k < 3; ++k) {
          if (mask & (1U << k)) vertices.push_back(face.vertex(k));
        }
        if (!is_subset(support, vertices)) continue;
        if (!refines(sigma_partition, simplex_partition(Subsimplex(vertices)))) bounded = false;
      }
      if (!refines(sigma_partition, face_partition)) bounded = false;
      if (!bounded) ++report.partition_lemma_failures;

      for (const auto& d : containing_domains(x)) {
        if (!is_subset(d.vertices(), face.vertices())) {
          ++report.intersection_failures;
          break;
        }
      }

      const auto tau_partition = point_partition(x, SystemSide::tau);
      for (const auto& g : charts) {
        if (!(relabel(sigma_partition, g) == tau_partition)) {
          ++report.relabel_failures;
          break;
        }
      }
    }
  }
  return report;
}

void to_json(nlohmann::json& j, const PiecewiseReport& r) {
  j = {{"grid_depth", r.grid_depth},
       {"faces_checked", r.faces_checked},
       {"points_checked", r.points_checked},
       {"cover_failures", r.cover_failures},
       {"gluing_failures", r.gluing_failures},
       {"partition_lemma_failures", r.partition_lemma_failures},
       {"intersection_failures", r.intersection_failures},
       {"relabel_failures", r.relabel_failures}};
}

bool is_unitary_equivalence_at(const SkeletonPoint& x, const CMatrix& u, double tol) {
  const auto n = x.degree();
  if (u.rows() != n || u.cols() != n) throw DimensionError("unitary has the wrong shape");
  for (int i = 1; i <= n; ++i) {
    const auto tau_i = tau_eval(x, i);
    for (int j = 1; j <= n; ++j) {
      if (std::abs(u(i - 1, j - 1)) > tol && !(tau_i == sigma_eval(x, j))) return false;
    }
  }
  return true;
}

double unitary_block_residual(const SkeletonPoint& x, const CMatrix& u, const Permutation& g) {
  const auto n = x.degree();
  if (u.rows() != n || u.cols() != n) throw DimensionError("unitary has the wrong shape");
  const auto g_inv = inverse(g);
  for (int i = 1; i <= n; ++i) {
    if (!(tau_eval(x, i) == sigma_eval(x, g_inv(i)))) {
      throw InputError("g does not intertwine the two systems at this point");
    }
  }
  const CMatrix residue = permutation_matrix(g).adjoint() * u;
  return off_block_magnitude(residue, point_partition(x, SystemSide::sigma));
}

bool satisfies_unitary_block_constraint(const SkeletonPoint& x, const CMatrix& u,
                                        const Permutation& g, double tol) {
  return unitary_block_residual(x, u, g) <= tol;
}

void to_json(nlohmann::json& j, const SkeletonPoint& x) {
  j = nlohmann::json::array();
  for (const auto& [g, c] : x.coords()) j.push_back({{"vertex", g}, {"weight", c.get_str()}});
}

}  // namespace simplexobs
