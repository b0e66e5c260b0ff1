#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "linalg_detail.hpp"
#include "simplexobs/errors.hpp"
#include "simplexobs/linalg.hpp"

namespace simplexobs {

namespace {

using Word = std::uint64_t;
constexpr std::size_t kWordBits = 64;

// Incremental echelon basis over GF(2). Each stored row is keyed by its
// lowest set bit; an incoming row is reduced until it vanishes or exposes a
// fresh pivot.
class Gf2Echelon {
 public:
  explicit Gf2Echelon(std::size_t width)
      : words_((width + kWordBits - 1) / kWordBits), pivot_slot_(width, -1) {}

  bool insert(std::vector<Word> v) {
    for (std::size_t w = 0; w < words_; ++w) {
      while (v[w] != 0) {
        const auto col = w * kWordBits + static_cast<std::size_t>(std::countr_zero(v[w]));
        const auto slot = pivot_slot_[col];
        if (slot < 0) {
          pivot_slot_[col] = static_cast<long>(rows_.size());
          pivots_.push_back(col);
          rows_.push_back(std::move(v));
          return true;
        }
        const auto& b = rows_[static_cast<std::size_t>(slot)];
        for (std::size_t k = w; k < words_; ++k) v[k] ^= b[k];
      }
    }
    return false;
  }

  std::size_t words() const { return words_; }
  const std::vector<std::vector<Word>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t words_;
  std::vector<long> pivot_slot_;
  std::vector<std::vector<Word>> rows_;
  std::vector<std::size_t> pivots_;
};

bool bit(const std::vector<Word>& v, std::size_t c) {
  return ((v[c / kWordBits] >> (c % kWordBits)) & 1U) != 0;
}

std::vector<Word> gf2_row(const IntMatrix& m, std::size_t r, std::size_t words,
                          std::optional<std::int64_t> rhs) {
  std::vector<Word> v(words, 0);
  for (const auto& e : m.row(r)) {
    if (e.value % 2 != 0) v[e.col / kWordBits] |= Word{1} << (e.col % kWordBits);
  }
  if (rhs && *rhs % 2 != 0) {
    const auto c = m.cols();
    v[c / kWordBits] |= Word{1} << (c % kWordBits);
  }
  return v;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t reduce_mod(std::int64_t value, std::uint64_t p) {
  const auto r = value % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// Incremental echelon basis over GF(p) with dense residue rows; stored rows
// have pivot 1 at their lowest non-zero column.
class ModpEchelon {
 public:
  ModpEchelon(std::size_t width, std::uint64_t p) : p_(p), width_(width), pivot_slot_(width, -1) {}

  bool insert(std::vector<std::uint64_t> v) {
    for (std::size_t c = 0; c < width_; ++c) {
      if (v[c] == 0) continue;
      const auto slot = pivot_slot_[c];
      if (slot < 0) {
        const auto inv = inv_mod(v[c], p_);
        for (std::size_t k = c; k < width_; ++k) v[k] = mul_mod(v[k], inv, p_);
        pivot_slot_[c] = static_cast<long>(rows_.size());
        pivots_.push_back(c);
        support_.push_back(nonzero_columns(v, c));
        rows_.push_back(std::move(v));
        return true;
      }
      const auto factor = p_ - v[c];
      const auto& b = rows_[static_cast<std::size_t>(slot)];
      for (const auto k : support_[static_cast<std::size_t>(slot)]) {
        v[k] = (v[k] + mul_mod(factor, b[k], p_)) % p_;
      }
    }
    return false;
  }

  const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::vector<std::size_t> nonzero_columns(const std::vector<std::uint64_t>& v, std::size_t from) {
    std::vector<std::size_t> cols;
    for (auto k = from; k < width_; ++k) {
      if (v[k] != 0) cols.push_back(k);
    }
    return cols;
  }

  std::uint64_t p_;
  std::size_t width_;
  std::vector<long> pivot_slot_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::size_t> pivots_;
};

std::vector<std::uint64_t> modp_row(const IntMatrix& m, std::size_t r, std::uint64_t p,
                                    std::optional<std::int64_t> rhs) {
  std::vector<std::uint64_t> v(m.cols() + (rhs ? 1 : 0), 0);
  for (const auto& e : m.row(r)) v[e.col] = reduce_mod(e.value, p);
  if (rhs) v[m.cols()] = reduce_mod(*rhs, p);
  return v;
}

void check_rhs(const IntMatrix& m, std::span<const std::int64_t> rhs) {
  if (rhs.size() != m.rows()) {
    throw DimensionError("right-hand side has " + std::to_string(rhs.size()) +
                         " entries, matrix has " + std::to_string(m.rows()) + " rows");
  }
}

SolveReport solve_gf2(const IntMatrix& m, std::span<const std::int64_t> rhs) {
  const auto cols = m.cols();
  Gf2Echelon echelon(cols + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    echelon.insert(gf2_row(m, r, echelon.words(), rhs[r]));
  }
  SolveReport report;
  report.field = Field::gf2();
  report.rank_augmented = echelon.pivots().size();
  report.rank = static_cast<std::size_t>(
      std::count_if(echelon.pivots().begin(), echelon.pivots().end(),
                    [cols](std::size_t c) { return c < cols; }));
  report.solvable = report.rank == report.rank_augmented;
  if (!report.solvable) return report;

  // Back substitution from the highest pivot; free variables stay 0.
  std::vector<bool> x(cols, false);
  std::vector<std::size_t> order(echelon.pivots().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return echelon.pivots()[a] > echelon.pivots()[b];
  });
  for (const auto i : order) {
    const auto& row = echelon.rows()[i];
    const auto pivot = echelon.pivots()[i];
    bool value = bit(row, cols);
    for (auto c = pivot + 1; c < cols; ++c) {
      if (bit(row, c) && x[c]) value = !value;
    }
    x[pivot] = value;
  }
  std::vector<mpq_class> witness;
  witness.reserve(cols);
  for (const auto v : x) witness.emplace_back(v ? 1 : 0);
  report.witness = std::move(witness);
  return report;
}

SolveReport solve_modp(const IntMatrix& m, std::span<const std::int64_t> rhs, std::uint64_t p) {
  const auto cols = m.cols();
  ModpEchelon echelon(cols + 1, p);
  for (std::size_t r = 0; r < m.rows(); ++r) echelon.insert(modp_row(m, r, p, rhs[r]));

  SolveReport report;
  report.field = Field::gfp(p);
  report.rank_augmented = echelon.pivots().size();
  report.rank = static_cast<std::size_t>(
      std::count_if(echelon.pivots().begin(), echelon.pivots().end(),
                    [cols](std::size_t c) { return c < cols; }));
  report.solvable = report.rank == report.rank_augmented;
  if (!report.solvable) return report;

  std::vector<std::uint64_t> x(cols, 0);
  std::vector<std::size_t> order(echelon.pivots().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return echelon.pivots()[a] > echelon.pivots()[b];
  });
  for (const auto i : order) {
    const auto& row = echelon.rows()[i];
    const auto pivot = echelon.pivots()[i];
    std::uint64_t value = row[cols];
    for (auto c = pivot + 1; c < cols; ++c) {
      if (row[c] != 0 && x[c] != 0) value = (value + p - mul_mod(row[c], x[c], p)) % p;
    }
    x[pivot] = value;
  }
  std::vector<mpq_class> witness;
  witness.reserve(cols);
  for (const auto v : x) witness.emplace_back(mpz_class(std::to_string(v)));
  report.witness = std::move(witness);
  return report;
}

SolveReport solve_rational(const IntMatrix& m, std::span<const std::int64_t> rhs) {
  auto elim = detail::rational_echelon(m, rhs);
  SolveReport report;
  report.field = Field::rational();
  report.rank = elim.rank;
  report.rank_augmented = elim.rank_augmented;
  report.solvable = elim.rank == elim.rank_augmented;
  if (report.solvable) report.witness = detail::back_substitute(elim, m.cols());
  return report;
}

}  // namespace

namespace detail {

void RationalEchelon::reduce(std::vector<mpz_class>& v) const {
  const auto width = v.size();
  mpz_class g, a, b;
  for (std::size_t c = 0; c < width; ++c) {
    if (sgn(v[c]) == 0) continue;
    const auto it = slot_of_pivot.find(c);
    if (it == slot_of_pivot.end()) return;
    const auto& row = rows[it->second];
    const auto& lead = row.front().second;
    // v <- (lead/g) v - (v_c/g) row, which zeroes column c.
    mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), v[c].get_mpz_t());
    a = lead / g;
    b = v[c] / g;
    if (a != 1) {
      for (auto k = c; k < width; ++k) {
        if (sgn(v[k]) != 0) v[k] *= a;
      }
    }
    for (const auto& [k, value] : row) v[k] -= b * value;
  }
}

RationalEchelon rational_echelon(const IntMatrix& m, std::span<const std::int64_t> rhs) {
  const bool augmented = !rhs.empty();
  if (augmented) check_rhs(m, rhs);
  const auto cols = m.cols();
  const auto width = cols + (augmented ? 1 : 0);
  RationalEchelon elim;
  std::vector<mpz_class> v(width);
  mpz_class content;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (auto& x : v) x = 0;
    for (const auto& e : m.row(r)) v[e.col] = static_cast<long>(e.value);
    if (augmented) v[cols] = static_cast<long>(rhs[r]);
    elim.reduce(v);
    const auto lead = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; });
    if (lead == v.end()) continue;
    const auto pivot = static_cast<std::size_t>(lead - v.begin());
    content = 0;
    for (auto k = pivot; k < width; ++k) {
      if (sgn(v[k]) != 0) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v[k].get_mpz_t());
    }
    if (sgn(v[pivot]) < 0) content = -content;
    SparseBigRow row;
    for (auto k = pivot; k < width; ++k) {
      if (sgn(v[k]) != 0) row.emplace_back(k, v[k] / content);
    }
    elim.slot_of_pivot.emplace(pivot, elim.rows.size());
    elim.rows.push_back(std::move(row));
    elim.source_rows.push_back(r);
    if (pivot < cols) ++elim.rank;
    ++elim.rank_augmented;
  }
  if (!augmented) elim.rank_augmented = elim.rank;
  return elim;
}

std::vector<mpq_class> back_substitute(const RationalEchelon& elim, std::size_t cols) {
  std::vector<mpq_class> x(cols, 0);
  // Highest pivot first; map iteration is by ascending pivot.
  for (auto it = elim.slot_of_pivot.rbegin(); it != elim.slot_of_pivot.rend(); ++it) {
    const auto pivot = it->first;
    if (pivot >= cols) throw InternalError("back substitution on an inconsistent system");
    const auto& row = elim.rows[it->second];
    mpq_class value = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      const auto& [c, a] = row[k];
      if (c == cols) {
        value += a;
      } else if (sgn(x[c]) != 0) {
        value -= a * x[c];
      }
    }
    x[pivot] = value / row.front().second;
    x[pivot].canonicalize();
  }
  return x;
}

}  // namespace detail

std::string Field::tag() const {
  switch (kind) {
    case FieldKind::gf2:
      return "gf2";
    case FieldKind::gfp:
      return "gfp";
    case FieldKind::rational:
      return "rational";
    case FieldKind::integer:
      return "integer";
  }
  return "unknown";
}

Field Field::parse(const std::string& tag, std::optional<std::uint64_t> p) {
  if (tag == "gfp") {
    if (!p) throw ValidationError("field gfp requires a prime p");
    if (*p < 3 || !is_prime(*p)) {
      throw ValidationError("field gfp requires an odd prime, got " + std::to_string(*p));
    }
    return gfp(*p);
  }
  if (p) throw ValidationError("p is only meaningful for field gfp");
  if (tag == "gf2") return gf2();
  if (tag == "rational") return rational();
  if (tag == "integer") return integer();
  throw ValidationError("unknown field '" + tag + "' (expected gf2, gfp, rational or integer)");
}

nlohmann::json to_json(const SolveReport& report) {
  nlohmann::json j;
  j["field"] = report.field.tag();
  if (report.field.kind == FieldKind::gfp) j["p"] = report.field.p;
  j["rank"] = report.rank;
  j["rank_augmented"] = report.rank_augmented;
  j["solvable"] = report.solvable;
  if (report.witness) {
    auto w = nlohmann::json::array();
    for (const auto& x : *report.witness) w.push_back(x.get_str());
    j["witness"] = std::move(w);
  }
  return j;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::size_t rank_gf2(const IntMatrix& m) {
  Gf2Echelon echelon(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    echelon.insert(gf2_row(m, r, echelon.words(), std::nullopt));
  }
  return echelon.pivots().size();
}

std::size_t rank_mod_prime(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError("modulus " + std::to_string(p) + " is not prime");
  if (p > (std::uint64_t{1} << 62)) throw ValidationError("modulus too large");
  ModpEchelon echelon(m.cols(), p);
  for (std::size_t r = 0; r < m.rows(); ++r) echelon.insert(modp_row(m, r, p, std::nullopt));
  return echelon.pivots().size();
}

std::size_t rank_gfp(const IntMatrix& m, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) {
    throw ValidationError("rank_gfp requires an odd prime, got " + std::to_string(p));
  }
  return rank_mod_prime(m, p);
}

std::size_t rank_rational(const IntMatrix& m) { return detail::rational_echelon(m, {}).rank; }

SolveReport solve_field(const IntMatrix& m, std::span<const std::int64_t> rhs, Field field) {
  check_rhs(m, rhs);
  switch (field.kind) {
    case FieldKind::gf2:
      return solve_gf2(m, rhs);
    case FieldKind::gfp:
      if (field.p < 3 || !is_prime(field.p) || field.p > (std::uint64_t{1} << 62)) {
        throw ValidationError("gfp requires an odd prime below 2^62, got " +
                              std::to_string(field.p));
      }
      return solve_modp(m, rhs, field.p);
    case FieldKind::rational:
      return solve_rational(m, rhs);
    case FieldKind::integer:
      return solve_integer(m, rhs);
  }
  throw InternalError("unhandled field kind");
}

bool verify_solution(const IntMatrix& m, std::span<const std::int64_t> rhs,
                     std::span<const mpq_class> x, Field field) {
  if (rhs.size() != m.rows() || x.size() != m.cols()) return false;
  const bool modular = field.kind == FieldKind::gf2 || field.kind == FieldKind::gfp;
  const mpz_class p(std::to_string(field.p));
  if (field.kind == FieldKind::integer) {
    for (const auto& v : x) {
      if (v.get_den() != 1) return false;
    }
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpq_class sum = 0;
    for (const auto& e : m.row(r)) sum += mpq_class(static_cast<long>(e.value)) * x[e.col];
    sum -= static_cast<long>(rhs[r]);
    if (modular) {
      if (sum.get_den() != 1) return false;
      mpz_class rem = sum.get_num() % p;
      if (rem != 0) return false;
    } else if (sgn(sum) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace simplexobs
