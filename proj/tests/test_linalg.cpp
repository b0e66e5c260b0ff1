#include <random>

#include "doctest.h"
#include "simplexobs/errors.hpp"
#include "simplexobs/linalg.hpp"
#include "simplexobs/obstruction.hpp"
#include "support.hpp"

using namespace simplexobs;

namespace {

IntMatrix identity(std::size_t k) {
  std::vector<std::vector<std::int64_t>> d(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) d[i][i] = 1;
  return IntMatrix::from_dense(d, k);
}

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out;
  for (const auto& row : m.to_dense()) {
    std::vector<mpz_class> r;
    for (auto v : row) r.emplace_back(static_cast<long>(v));
    out.push_back(std::move(r));
  }
  return out;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  BigMatrix c(a.size(), std::vector<mpz_class>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("ranks of small matrices") {
  CHECK(rank_gf2(IntMatrix(5)) == 0);
  CHECK(rank_gf2(IntMatrix::from_dense({{0, 0}, {0, 0}}, 2)) == 0);
  CHECK(rank_gf2(identity(7)) == 7);
  CHECK(rank_gfp(identity(7), 5) == 7);
  CHECK(rank_rational(identity(7)) == 7);
  const auto two = IntMatrix::from_dense({{2}}, 1);
  CHECK(rank_mod_prime(two, 2) == 0);
  CHECK(rank_gfp(two, 3) == 1);
  CHECK_THROWS_AS(rank_gfp(two, 2), ValidationError);
  CHECK_THROWS_AS(rank_gfp(two, 9), ValidationError);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK(is_prime(998244353));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("field parsing") {
  CHECK(Field::parse("gf2").kind == FieldKind::gf2);
  CHECK(Field::parse("gfp", 7).p == 7);
  CHECK(Field::parse("rational").tag() == "rational");
  CHECK_THROWS_AS(Field::parse("gfp"), ValidationError);
  CHECK_THROWS_AS(Field::parse("gfp", 8), ValidationError);
  CHECK_THROWS_AS(Field::parse("reals"), ValidationError);
  CHECK_THROWS_AS(Field::parse("gf2", 3), ValidationError);
}

TEST_CASE("rank_gf2 agrees with generic mod-2 elimination") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 40; ++k) {
    const auto m = testsupport::random_ternary(50, 50, rng, 0.05 + 0.02 * k);
    CHECK(rank_gf2(m) == rank_mod_prime(m, 2));
    CHECK(rank_rational(m) >= rank_gf2(m));
    CHECK(rank_rational(m) >= rank_gfp(m, 3));
  }
}

TEST_CASE("Rouche-Capelli on random systems") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int k = 0; k < 60; ++k) {
    const auto m = testsupport::random_ternary(12, 9, rng, 0.35);
    std::vector<std::int64_t> rhs(12);
    for (auto& v : rhs) v = val(rng);
    for (auto f : {Field::gf2(), Field::gfp(3), Field::gfp(7), Field::rational(), Field::integer()}) {
      const auto r = solve_field(m, rhs, f);
      if (f.kind != FieldKind::integer) CHECK(r.solvable == (r.rank == r.rank_augmented));
      CHECK(r.solvable == r.witness.has_value());
      if (r.witness) CHECK(verify_solution(m, rhs, *r.witness, f));
    }
  }
}

TEST_CASE("integer solvability follows from the image lattice") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int k = 0; k < 40; ++k) {
    const auto m = testsupport::random_ternary(10, 8, rng, 0.4);
    std::vector<std::int64_t> x(8);
    for (auto& v : x) v = val(rng);
    std::vector<std::int64_t> rhs(10, 0);
    for (std::size_t r = 0; r < 10; ++r)
      for (const auto& e : m.row(r)) rhs[r] += e.value * x[e.col];
    const auto sol = solve_integer(m, rhs);
    REQUIRE(sol.solvable);
    CHECK(verify_solution(m, rhs, *sol.witness, Field::integer()));
    for (const auto& q : *sol.witness) CHECK(q.get_den() == 1);
  }
}

TEST_CASE("parity example") {
  const auto m = IntMatrix::from_dense({{2}}, 1);
  const std::vector<std::int64_t> d{1};
  const auto z = solve_integer(m, d);
  CHECK_FALSE(z.solvable);
  CHECK_FALSE(z.witness.has_value());
  const auto q = solve_field(m, d, Field::rational());
  CHECK(q.solvable);
  CHECK((*q.witness)[0] == mpq_class(1, 2));
  CHECK_FALSE(solve_field(m, d, Field::gf2()).solvable);
  CHECK(solve_field(m, d, Field::gfp(3)).solvable);
}

TEST_CASE("verify_solution rejects wrong witnesses") {
  const auto m = IntMatrix::from_dense({{1, 1}, {0, 2}}, 2);
  const std::vector<std::int64_t> d{3, 4};
  CHECK(verify_solution(m, d, std::vector<mpq_class>{1, 2}, Field::integer()));
  CHECK_FALSE(verify_solution(m, d, std::vector<mpq_class>{2, 1}, Field::integer()));
  const std::vector<std::int64_t> odd{3, 3};
  const std::vector<mpq_class> halves{mpq_class(3, 2), mpq_class(3, 2)};
  CHECK(verify_solution(m, odd, halves, Field::rational()));
  CHECK_FALSE(verify_solution(m, odd, halves, Field::integer()));
  CHECK(verify_solution(m, d, std::vector<mpq_class>{1, 0}, Field::gf2()));
  CHECK_FALSE(verify_solution(m, d, std::vector<mpq_class>{1}, Field::rational()));
  CHECK_THROWS_AS(solve_field(m, std::vector<std::int64_t>{1}, Field::rational()), DimensionError);
  CHECK_THROWS_AS(solve_integer(m, std::vector<std::int64_t>{1, 2, 3}), DimensionError);
}

TEST_CASE("hermite form is unimodular and reproduces A U = H") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 25; ++k) {
    const auto rows = 4 + k % 4;
    const auto cols = 3 + (k * 7) % 5;
    const auto a = to_big(testsupport::random_ternary(rows, cols, rng, 0.5));
    const auto hf = hermite_column_form(a);
    CHECK(multiply(a, hf.u) == hf.h);
    const auto det = testsupport::bareiss_det(hf.u);
    CHECK(abs(det) == 1);
    for (std::size_t c = 0; c < hf.pivot_rows.size(); ++c) {
      const auto pr = hf.pivot_rows[c];
      CHECK(hf.h[pr][c] > 0);
      for (std::size_t r = 0; r < pr; ++r) CHECK(hf.h[r][c] == 0);
      for (std::size_t j = 0; j < c; ++j) {
        CHECK(hf.h[pr][j] >= 0);
        CHECK(hf.h[pr][j] < hf.h[pr][c]);
      }
      if (c > 0) CHECK(pr > hf.pivot_rows[c - 1]);
    }
    for (std::size_t c = hf.pivot_rows.size(); c < hf.h[0].size(); ++c)
      for (std::size_t r = 0; r < hf.h.size(); ++r) CHECK(hf.h[r][c] == 0);
  }
}

TEST_CASE("obstruction system verdicts") {
  const auto s3 = build_system(3);
  CHECK(rank_gf2(s3.matrix) == 10);
  const auto z3 = solve_integer(s3.matrix, s3.rhs);
  CHECK(z3.solvable);
  CHECK(verify_solution(s3.matrix, s3.rhs, *z3.witness, Field::integer()));

  const auto s4 = build_system(4);
  const auto g = solve_field(s4.matrix, s4.rhs, Field::gf2());
  CHECK(g.rank == 462);
  CHECK(g.rank_augmented == 463);
  CHECK_FALSE(g.solvable);
  const auto q = solve_field(s4.matrix, s4.rhs, Field::rational());
  CHECK(q.rank == 463);
  CHECK(q.rank_augmented == 463);
  CHECK(q.solvable);
  CHECK(verify_solution(s4.matrix, s4.rhs, *q.witness, Field::rational()));
  CHECK_FALSE(solve_integer(s4.matrix, s4.rhs).solvable);
  for (std::uint64_t p : {3, 5, 7, 11, 1000003}) {
    const auto r = solve_field(s4.matrix, s4.rhs, Field::gfp(p));
    CHECK(r.rank == 463);
    CHECK(r.solvable);
  }
}

TEST_CASE("solve report json") {
  const auto m = IntMatrix::from_dense({{2}}, 1);
  const std::vector<std::int64_t> d{1};
  const auto j = to_json(solve_field(m, d, Field::rational()));
  CHECK(j.at("field") == "rational");
  CHECK(j.at("solvable") == true);
  CHECK(j.at("witness")[0] == "1/2");
}
