// Runs the eight acceptance criteria; one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "simplexobs/commands.hpp"
#include "simplexobs/counterexample.hpp"
#include "simplexobs/linalg.hpp"
#include "simplexobs/obstruction.hpp"
#include "simplexobs/unitary_path.hpp"
#include "support.hpp"

using namespace simplexobs;

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome headline_ranks() {
  const auto sys = build_system(4);
  const auto r = solve_field(sys.matrix, sys.rhs, Field::gf2());
  const auto z = solve_integer(sys.matrix, sys.rhs);
  const bool ok = r.rank == 462 && r.rank_augmented == 463 && !r.solvable && !z.solvable;
  return {ok, "rank_gf2 = " + std::to_string(r.rank) + ", augmented = " +
                  std::to_string(r.rank_augmented) + ", integer solvable = " +
                  (z.solvable ? "yes" : "no")};
}

Outcome cross_field() {
  const auto sys = build_system(4);
  const auto q = solve_field(sys.matrix, sys.rhs, Field::rational());
  bool ok = q.solvable && q.witness &&
            verify_solution(sys.matrix, sys.rhs, *q.witness, Field::rational());
  std::vector<mpq_class> delta;
  for (auto d : sys.delta_numerators) delta.emplace_back(mpq_class(d, kDeltaDenominator));
  for (auto& x : delta) x.canonicalize();
  ok = ok && verify_solution(sys.matrix, sys.rhs, delta, Field::rational());
  std::string detail = "Q witness verified";
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const auto r = solve_field(sys.matrix, sys.rhs, Field::gfp(p));
    const bool good = r.solvable && verify_solution(sys.matrix, sys.rhs, *r.witness, Field::gfp(p));
    ok = ok && good;
    detail += ", F_" + std::to_string(p) + (good ? " ok" : " FAIL");
  }
  return {ok, detail};
}

Outcome three_maps() {
  const auto start = std::chrono::steady_clock::now();
  const auto sys = build_system(3);
  const auto z = solve_integer(sys.matrix, sys.rhs);
  const bool verified =
      z.solvable && verify_solution(sys.matrix, sys.rhs, *z.witness, Field::integer());
  const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
  return {verified && secs.count() < 10.0,
          std::string("integer witness ") + (verified ? "verified" : "missing") + " in " +
              sci(secs.count()) + " s"};
}

Outcome delta_formula() {
  for (int n = 2; n <= 4; ++n) {
    const auto sys = build_system(n);
    for (std::size_t c = 0; c < sys.columns.size(); ++c) {
      const auto size = sys.columns[c].block.size();
      // (1 + (-1)^|B|) / 4 in units of 1/2
      const std::int64_t expected = (1 + (size % 2 == 0 ? 1 : -1)) / 2;
      if (sys.delta_numerators[c] != expected) {
        return {false, "delta mismatch at n = " + std::to_string(n)};
      }
    }
    for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
      std::int64_t twice = 0;
      for (const auto& e : sys.matrix.row(r)) twice += e.value * sys.delta_numerators[e.col];
      if (twice % 2 != 0 || twice / 2 != sys.rhs[r]) {
        return {false, "M delta != D at n = " + std::to_string(n)};
      }
    }
  }
  return {true, "n = 2, 3, 4 exact"};
}

Outcome bridge() {
  VerifyPathsOptions o;
  o.n = 4;
  o.faces = 50;
  o.samples = 1024;
  o.seed = 20240101;
  o.tol = 1e-6;
  o.trials = 20;
  const auto r = cmd_verify_paths(o);
  const auto& res = r.report.at("results").at("unitary-paths");
  const double dev = res.at("max_deviation").get<double>();
  return {r.exit_code == kExitOk && res.at("faces_checked") == 50 && dev < 1e-6,
          "20 targets x 50 faces, max deviation " + sci(dev)};
}

Outcome path_properties() {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  const auto w = [](const BlockUnitaryPath& p, const std::vector<int>& b) {
    return winding(p, b).winding;
  };
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 4;
    const auto p = testsupport::random_partition(n, rng);
    const auto a = testsupport::random_block_path(p, rng);
    auto b = testsupport::random_block_path(p, rng);
    b = left_multiply(a.back() * b.front().adjoint(), b, p);
    const auto ab = concatenate(a, b);
    const auto inv = reversed(a);
    // constant V in U(P)
    CMatrix v = CMatrix::Zero(n, n);
    for (const auto& blk : p.blocks()) {
      const auto u = testsupport::random_unitary(static_cast<int>(blk.size()), rng);
      for (std::size_t i = 0; i < blk.size(); ++i)
        for (std::size_t j = 0; j < blk.size(); ++j) v(blk[i] - 1, blk[j] - 1) = u(i, j);
    }
    const auto va = left_multiply(v, a, p);
    for (const auto& blk : p.blocks()) {
      worst = std::max(worst, std::abs(w(ab, blk) - w(a, blk) - w(b, blk)));
      worst = std::max(worst, std::abs(w(inv, blk) + w(a, blk)));
      worst = std::max(worst, std::abs(w(va, blk) - w(a, blk)));
    }
    const auto q = join(p, testsupport::random_partition(n, rng));
    const auto qa = coarsen(a, q);
    for (const auto& qb : q.blocks()) {
      double sum = 0.0;
      for (const auto& pb : p.blocks()) {
        if (q.same_block(pb.front(), qb.front())) sum += w(a, pb);
      }
      worst = std::max(worst, std::abs(w(qa, qb) - sum));
    }
  }
  return {worst <= 1e-9, "100 random paths, worst error " + sci(worst)};
}

Outcome counterexample_suite() {
  const auto r = check_piecewise_equivalence(8);
  const bool ok = r.passed() && r.faces_checked == 2024 && r.points_checked == 2024 * 45;
  return {ok, "depth 8, " + std::to_string(r.points_checked) + " points, failures " +
                  std::to_string(r.cover_failures + r.gluing_failures +
                                 r.partition_lemma_failures + r.intersection_failures +
                                 r.relabel_failures)};
}

Outcome order_independence() {
  std::mt19937_64 rng(8);
  auto elems = enumerate_sn(3);
  std::shuffle(elems.begin(), elems.end(), rng);
  const auto lex = build_system(3);
  const auto shuffled = build_system(TotalOrder(elems));
  bool ok = true;
  for (auto f : {Field::gf2(), Field::gfp(3), Field::rational(), Field::integer()}) {
    const auto a = solve_field(lex.matrix, lex.rhs, f);
    const auto b = solve_field(shuffled.matrix, shuffled.rhs, f);
    ok = ok && a.solvable == b.solvable && a.rank == b.rank &&
         a.rank_augmented == b.rank_augmented;
  }
  return {ok, "gf2, gfp(3), rational and integer verdicts agree under a shuffled order"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 headline ranks at n = 4", headline_ranks},
      {"2 cross-field coherence", cross_field},
      {"3 integer solution for three maps", three_maps},
      {"4 delta formula", delta_formula},
      {"5 combinatorial-numeric bridge", bridge},
      {"6 path invariant properties", path_properties},
      {"7 counterexample suite", counterexample_suite},
      {"8 order independence", order_independence},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out{false, ""};
    const auto start = std::chrono::steady_clock::now();
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    std::printf("[%s] criterion %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", name.c_str(),
                out.detail.c_str(), secs.count());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
