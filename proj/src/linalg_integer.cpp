#include <string>

#include "linalg_detail.hpp"
#include "simplexobs/errors.hpp"
#include "simplexobs/linalg.hpp"

namespace simplexobs {

namespace {

using Column = std::vector<mpz_class>;

// Column-major working copy of A together with the accumulated transform U.
struct ColumnState {
  std::vector<Column> a;
  std::vector<Column> u;
  std::size_t rows = 0;
};

// col_j -= q * col_k on rows [from, rows) of A and on all of U.
void subtract_multiple(ColumnState& st, std::size_t j, std::size_t k, const mpz_class& q,
                       std::size_t from) {
  auto& aj = st.a[j];
  const auto& ak = st.a[k];
  for (auto r = from; r < st.rows; ++r) {
    if (sgn(ak[r]) != 0) aj[r] -= q * ak[r];
  }
  auto& uj = st.u[j];
  const auto& uk = st.u[k];
  for (std::size_t r = 0; r < uj.size(); ++r) {
    if (sgn(uk[r]) != 0) uj[r] -= q * uk[r];
  }
}

// (col_k, col_j) <- (s col_k + t col_j, -(b/g) col_k + (a/g) col_j); the 2x2
// block has determinant (s a + t b) / g = 1.
void combine(std::vector<Column>& cols, std::size_t k, std::size_t j, const mpz_class& s,
             const mpz_class& t, const mpz_class& bg, const mpz_class& ag, std::size_t from,
             std::size_t to) {
  auto& ck = cols[k];
  auto& cj = cols[j];
  mpz_class x, y;
  for (auto r = from; r < to; ++r) {
    const bool zk = sgn(ck[r]) == 0;
    const bool zj = sgn(cj[r]) == 0;
    if (zk && zj) continue;
    x = s * ck[r] + t * cj[r];
    y = ag * cj[r] - bg * ck[r];
    ck[r].swap(x);
    cj[r].swap(y);
  }
}

BigMatrix to_row_major(const std::vector<Column>& cols, std::size_t rows) {
  BigMatrix out(rows, std::vector<mpz_class>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) out[r][c] = cols[c][r];
  }
  return out;
}

}  // namespace

HermiteForm hermite_column_form(const BigMatrix& a) {
  const auto rows = a.size();
  const auto cols = rows == 0 ? 0 : a.front().size();
  ColumnState st;
  st.rows = rows;
  st.a.assign(cols, Column(rows));
  st.u.assign(cols, Column(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (a[r].size() != cols) throw DimensionError("hermite_column_form: ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) st.a[c][r] = a[r][c];
  }
  for (std::size_t c = 0; c < cols; ++c) st.u[c][c] = 1;

  HermiteForm out;
  std::size_t k = 0;
  mpz_class g, s, t, ag, bg, q;
  for (std::size_t i = 0; i < rows && k < cols; ++i) {
    for (auto j = k + 1; j < cols; ++j) {
      if (sgn(st.a[j][i]) == 0) continue;
      if (sgn(st.a[k][i]) == 0) {
        st.a[k].swap(st.a[j]);
        st.u[k].swap(st.u[j]);
        continue;
      }
      const auto& pa = st.a[k][i];
      const auto& pb = st.a[j][i];
      if (mpz_divisible_p(pb.get_mpz_t(), pa.get_mpz_t()) != 0) {
        q = pb / pa;
        subtract_multiple(st, j, k, q, i);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
      ag = pa / g;
      bg = pb / g;
      combine(st.a, k, j, s, t, bg, ag, i, rows);
      combine(st.u, k, j, s, t, bg, ag, 0, cols);
    }
    if (sgn(st.a[k][i]) == 0) continue;
    if (sgn(st.a[k][i]) < 0) {
      for (auto r = i; r < rows; ++r) st.a[k][r] = -st.a[k][r];
      for (auto& x : st.u[k]) x = -x;
    }
    const auto pivot = st.a[k][i];
    for (std::size_t j = 0; j < k; ++j) {
      mpz_fdiv_q(q.get_mpz_t(), st.a[j][i].get_mpz_t(), pivot.get_mpz_t());
      if (sgn(q) != 0) subtract_multiple(st, j, k, q, i);
    }
    out.pivot_rows.push_back(i);
    ++k;
  }
  out.h = to_row_major(st.a, rows);
  out.u = to_row_major(st.u, cols);
  return out;
}

SolveReport solve_integer(const IntMatrix& m, std::span<const std::int64_t> rhs) {
  if (rhs.size() != m.rows()) {
    throw DimensionError("right-hand side has " + std::to_string(rhs.size()) +
                         " entries, matrix has " + std::to_string(m.rows()) + " rows");
  }
  const auto elim = detail::rational_echelon(m, rhs);
  SolveReport report;
  report.field = Field::integer();
  report.rank = elim.rank;
  report.rank_augmented = elim.rank_augmented;
  if (elim.rank != elim.rank_augmented) return report;

  // Over a consistent system the rows kept by the rational elimination span
  // the row space, so every other equation is implied by them.
  const auto& basis = elim.source_rows;
  const auto cols = m.cols();
  BigMatrix a(basis.size(), std::vector<mpz_class>(cols));
  std::vector<mpz_class> b(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& e : m.row(basis[i])) a[i][e.col] = static_cast<long>(e.value);
    b[i] = static_cast<long>(rhs[basis[i]]);
  }

  const auto hf = hermite_column_form(a);
  const auto pivots = hf.pivot_rows.size();
  std::vector<mpz_class> y(pivots);
  std::size_t next = 0;
  mpz_class residual;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    residual = b[i];
    for (std::size_t j = 0; j < next; ++j) residual -= hf.h[i][j] * y[j];
    if (next < pivots && hf.pivot_rows[next] == i) {
      const auto& d = hf.h[i][next];
      if (mpz_divisible_p(residual.get_mpz_t(), d.get_mpz_t()) == 0) return report;
      y[next] = residual / d;
      ++next;
    } else if (sgn(residual) != 0) {
      return report;
    }
  }

  std::vector<mpq_class> x(cols, 0);
  for (std::size_t r = 0; r < cols; ++r) {
    mpz_class sum = 0;
    for (std::size_t j = 0; j < pivots; ++j) {
      if (sgn(hf.u[r][j]) != 0 && sgn(y[j]) != 0) sum += hf.u[r][j] * y[j];
    }
    x[r] = sum;
  }
  if (!verify_solution(m, rhs, x, Field::integer())) {
    throw InternalError("integer witness failed exact re-multiplication");
  }
  report.solvable = true;
  report.witness = std::move(x);
  return report;
}

}  // namespace simplexobs
