#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "simplexobs/errors.hpp"
#include "simplexobs/obstruction.hpp"
#include "simplexobs/unitary_path.hpp"
#include "support.hpp"

using namespace simplexobs;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

Permutation P(std::vector<int> v) { return Permutation(std::move(v)); }

BlockUnitaryPath scalar_path(double turns, int samples = 256) {
  std::vector<CMatrix> v;
  for (int k = 0; k <= samples; ++k) {
    CMatrix m(1, 1);
    m(0, 0) = std::polar(1.0, 2 * pi * turns * k / samples);
    v.push_back(m);
  }
  return BlockUnitaryPath(Partition::finest(1), std::move(v));
}

double block_winding(const BlockUnitaryPath& p, const std::vector<int>& block) {
  return winding(p, block).winding;
}

}  // namespace

TEST_CASE("scalar windings") {
  const auto one = winding(scalar_path(1.0), std::vector<int>{1});
  CHECK(one.winding == Approx(1.0));
  CHECK(one.upper_winding == 1);
  CHECK(one.defect == Approx(0.0));

  const auto half_back = winding(scalar_path(-0.5), std::vector<int>{1});
  CHECK(half_back.winding == Approx(-0.5));
  CHECK(half_back.upper_winding == 0);
  CHECK(half_back.defect == Approx(0.5));

  const BlockUnitaryPath constant(Partition::finest(3),
                                  std::vector<CMatrix>(5, CMatrix::Identity(3, 3)));
  for (const auto& w : winding_report(constant)) {
    CHECK(w.winding == 0.0);
    CHECK(w.upper_winding == 0);
    CHECK(w.defect == 0.0);
  }
}

TEST_CASE("upper winding snapping") {
  CHECK(upper_winding_number(1.0 + 1e-9) == 1);
  CHECK(upper_winding_number(1.0 - 1e-9) == 1);
  CHECK(upper_winding_number(0.5) == 1);
  CHECK(upper_winding_number(-0.5) == 0);
}

TEST_CASE("path validation") {
  CMatrix bad = CMatrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(BlockUnitaryPath(Partition::coarsest(2), {CMatrix::Identity(2, 2), bad}),
                  InputError);
  const auto swap = permutation_matrix(P({2, 1}));
  CHECK_THROWS_AS(BlockUnitaryPath(Partition::finest(2), {CMatrix::Identity(2, 2), swap}),
                  InputError);
  CHECK_THROWS(BlockUnitaryPath(Partition::finest(2), {}));
  CHECK_THROWS_AS(winding(scalar_path(1.0), std::vector<int>{2}), InputError);
  CHECK_THROWS_AS(winding(scalar_path(40.0, 64), std::vector<int>{1}), ResolutionError);
}

TEST_CASE("permutation matrix convention") {
  const auto g = P({2, 3, 1});
  const auto u = permutation_matrix(g);
  for (int i = 1; i <= 3; ++i) CHECK(std::abs(u(g(i) - 1, i - 1) - 1.0) < 1e-15);
  CHECK((permutation_matrix(compose(g, g)) - u * u).norm() < 1e-15);
}

TEST_CASE("edge paths reach U and hit their targets") {
  const auto faces_n = 4;
  const auto edges = enumerate_cells(faces_n, 1);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> tgt(-3, 3);
  for (int k = 0; k < 60; ++k) {
    const auto& edge = edges[rng() % edges.size()];
    const auto partition = simplex_partition(edge);
    std::vector<long> target(partition.block_count());
    for (auto& t : target) t = tgt(rng);
    const auto path = edge_path(edge, target);
    const auto h = compose(inverse(edge.vertex(0)), edge.vertex(1));
    CHECK((path.front() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((path.back() - permutation_matrix(h)).cwiseAbs().maxCoeff() < 1e-12);
    const auto report = winding_report(path);
    for (std::size_t b = 0; b < report.size(); ++b) {
      CHECK(report[b].upper_winding == target[b]);
      const double expected_defect = report[b].block.size() % 2 == 0 ? 0.5 : 0.0;
      CHECK(report[b].defect == Approx(expected_defect).epsilon(1e-9));
    }
  }
}

TEST_CASE("base construction and defects per block") {
  const auto e = Permutation::identity(4);
  const Subsimplex transposition({e, P({2, 1, 3, 4})});
  const auto base = base_upper_winding(transposition);
  const std::vector<long> expected_base{1, 0, 0};
  CHECK(base == expected_base);
  const auto path = edge_path(transposition, base);
  const auto rep = winding_report(path);
  CHECK(rep[0].defect == Approx(0.5));
  CHECK(rep[1].defect == 0.0);
  CHECK(std::abs(block_determinant(path.back(), rep[1].block) - 1.0) < 1e-12);

  // defect depends only on the endpoints
  const auto edges = enumerate_cells(4, 1);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> tgt(-4, 4);
  for (int k = 0; k < 10; ++k) {
    const auto& edge = edges[rng() % edges.size()];
    std::vector<double> first;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<long> target(simplex_partition(edge).block_count());
      for (auto& t : target) t = tgt(rng);
      const auto r = winding_report(edge_path(edge, target));
      for (std::size_t b = 0; b < r.size(); ++b) {
        if (trial == 0) {
          first.push_back(r[b].defect);
        } else {
          CHECK(r[b].defect == Approx(first[b]).epsilon(1e-9));
        }
        CHECK(r[b].defect == Approx((1 + (r[b].block.size() % 2 == 0 ? 1 : -1)) / 4.0));
      }
    }
  }
}

TEST_CASE("edge path argument errors") {
  const auto e = Permutation::identity(3);
  const Subsimplex edge({e, P({2, 3, 1})});
  CHECK_THROWS_AS(edge_path(edge, std::vector<long>{0, 0}), DimensionError);
  CHECK_THROWS_AS(edge_path(Subsimplex({e}), std::vector<long>{}), DimensionError);
  CHECK_THROWS_AS(edge_path(edge, std::vector<long>{100}, 64), ResolutionError);
  CHECK_NOTHROW(edge_path(edge, std::vector<long>{100}, 4096));
}

TEST_CASE("random path invariants") {
  std::mt19937_64 rng(314);
  for (int k = 0; k < 30; ++k) {
    const auto p = testsupport::random_partition(4, rng);
    const auto a = testsupport::random_block_path(p, rng);
    auto b = testsupport::random_block_path(p, rng);
    // shift b to start where a ends
    b = left_multiply(a.back() * b.front().adjoint(), b, p);
    const auto ab = concatenate(a, b);
    for (const auto& blk : p.blocks()) {
      CHECK(block_winding(ab, blk) ==
            Approx(block_winding(a, blk) + block_winding(b, blk)).epsilon(1e-9));
      CHECK(block_winding(reversed(a), blk) == Approx(-block_winding(a, blk)).epsilon(1e-9));
    }
    const auto coarse = testsupport::random_partition(4, rng);
    const auto q = join(p, coarse);
    const auto qa = coarsen(a, q);
    for (const auto& qb : q.blocks()) {
      double sum = 0.0;
      for (const auto& pb : p.blocks()) {
        if (q.same_block(pb.front(), qb.front())) sum += block_winding(a, pb);
      }
      CHECK(block_winding(qa, qb) == Approx(sum).epsilon(1e-9));
    }
  }
}

TEST_CASE("composition errors") {
  std::mt19937_64 rng(1);
  const auto p = Partition::finest(2);
  const auto a = testsupport::random_block_path(p, rng);
  const auto b = testsupport::random_block_path(p, rng);
  CHECK_THROWS_AS(concatenate(a, b), CompositionError);
  const auto c = testsupport::random_block_path(Partition::coarsest(2), rng);
  CHECK_THROWS_AS(concatenate(a, c), CompositionError);
  CHECK_THROWS_AS(coarsen(c, p), InputError);
}

TEST_CASE("face loops close and match the combinatorial identity") {
  const auto sys = build_system(4);
  const auto faces = sys.rows.simplices();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> tgt(-2, 2);
  std::vector<long> w(sys.columns.size());
  for (auto& x : w) x = tgt(rng);
  const auto edge = [&](const Subsimplex& e) {
    const auto r = *sys.columns.range(e);
    return edge_path(e, std::span<const long>(w.data() + r.first, r.second - r.first), 512);
  };
  for (int k = 0; k < 40; ++k) {
    const auto& f = faces[rng() % faces.size()];
    const auto& v = f.vertices();
    const auto e01 = edge(Subsimplex({v[0], v[1]}));
    const auto e12 = edge(Subsimplex({v[1], v[2]}));
    const auto e02 = edge(Subsimplex({v[0], v[2]}));
    const auto loop = face_loop(f, e01, e12, e02);
    CHECK((loop.front() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((loop.back() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    const auto fp = simplex_partition(f);
    for (const auto& blk : fp.blocks()) {
      // face winding = sum of edge windings over sub-blocks
      double expected = 0.0;
      const BlockUnitaryPath* es[] = {&e01, &e12, &e02};
      const double sg[] = {1, 1, -1};
      for (int i = 0; i < 3; ++i) {
        for (const auto& sb : es[i]->partition().blocks()) {
          if (fp.same_block(sb.front(), blk.front())) expected += sg[i] * block_winding(*es[i], sb);
        }
      }
      const double got = block_winding(loop, blk);
      CHECK(got == Approx(expected).epsilon(1e-9));
      const auto row = *sys.rows.find(f, blk);
      long combinatorial = -sys.rhs[row];
      for (const auto& e : sys.matrix.row(row)) combinatorial += e.value * w[e.col];
      CHECK(std::abs(got - static_cast<double>(combinatorial)) < 1e-6);
    }
  }
  const auto f = faces.front();
  const auto& v = f.vertices();
  CHECK_THROWS_AS(face_loop(f, edge(Subsimplex({v[0], v[2]})), edge(Subsimplex({v[1], v[2]})),
                            edge(Subsimplex({v[0], v[1]}))),
                  CompositionError);
}

TEST_CASE("weakly admissible correction") {
  const auto order = enumerate_sn(3);
  std::vector<EdgeMapSamples> admissible;
  for (const auto& e : enumerate_cells(3, 1)) {
    const auto base = base_upper_winding(e);
    admissible.push_back(admissible_edge_samples(edge_path(e, base, 128), e));
  }
  CHECK(validate_weak_to_admissible(admissible));
  const auto untouched = correct_weakly_admissible(admissible);
  CHECK(untouched.max_vertex_error < 1e-12);

  std::map<Permutation, std::vector<double>> full_turns{{order[2], {2 * pi, -2 * pi, 4 * pi}}};
  std::vector<EdgeMapSamples> twisted;
  for (const auto& s : admissible) twisted.push_back(twist_edge_samples(s, full_turns));
  CHECK(validate_weak_to_admissible(twisted));

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ph(-3.0, 3.0);
  std::map<Permutation, std::vector<double>> random_phases;
  for (const auto& g : order) random_phases[g] = {ph(rng), ph(rng), ph(rng)};
  std::vector<EdgeMapSamples> weak;
  for (const auto& s : admissible) weak.push_back(twist_edge_samples(s, random_phases));
  const auto rep = correct_weakly_admissible(weak);
  CHECK(rep.admissible);
  CHECK(rep.max_off_block < 1e-9);
  CHECK(rep.max_vertex_error < 1e-9);

  // a non-diagonal vertex residue is rejected
  auto broken = admissible;
  for (auto& v : broken.front().values) v = v * permutation_matrix(P({2, 1, 3}));
  CHECK_THROWS_AS(correct_weakly_admissible(broken), InputError);
}

TEST_CASE("winding json") {
  const nlohmann::json j = winding(scalar_path(1.0), std::vector<int>{1});
  CHECK(j.at("uwn") == 1);
  CHECK(j.at("block") == nlohmann::json::array({1}));
}
