#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "simplexobs/int_matrix.hpp"

namespace simplexobs {

enum class FieldKind { gf2, gfp, rational, integer };

/// Coefficient domain for a solvability decision. `p` is only meaningful for
/// FieldKind::gfp.
struct Field {
  FieldKind kind = FieldKind::rational;
  std::uint64_t p = 0;

  static Field gf2() { return {FieldKind::gf2, 2}; }
  static Field gfp(std::uint64_t p) { return {FieldKind::gfp, p}; }
  static Field rational() { return {FieldKind::rational, 0}; }
  static Field integer() { return {FieldKind::integer, 0}; }

  /// "gf2", "gfp", "rational" or "integer".
  std::string tag() const;
  /// Inverse of tag(); throws ValidationError on unknown names.
  static Field parse(const std::string& tag, std::optional<std::uint64_t> p = std::nullopt);
};

/// Outcome of deciding M x = D.
///
/// For the fields, rank and rank_augmented are ranks over that field. For the
/// integer case they are ranks over Q and `solvable` is decided by the
/// Hermite form; a witness is always re-verified before it is reported.
struct SolveReport {
  Field field;
  std::size_t rank = 0;
  std::size_t rank_augmented = 0;
  bool solvable = false;
  /// Exact solution. Over GF(p) entries are residues in [0, p).
  std::optional<std::vector<mpq_class>> witness;
};

nlohmann::json to_json(const SolveReport& report);

bool is_prime(std::uint64_t p);

std::size_t rank_gf2(const IntMatrix& m);
/// Requires an odd prime p; throws ValidationError otherwise.
std::size_t rank_gfp(const IntMatrix& m, std::uint64_t p);
/// Generic modular elimination; accepts any prime including 2.
std::size_t rank_mod_prime(const IntMatrix& m, std::uint64_t p);
std::size_t rank_rational(const IntMatrix& m);

/// Decides solvability over gf2, gfp or rational (Rouche-Capelli) and
/// returns a back-substituted witness (free variables set to 0) when
/// solvable. FieldKind::integer is forwarded to solve_integer.
SolveReport solve_field(const IntMatrix& m, std::span<const std::int64_t> rhs, Field field);

/// Decides existence of an integer solution through the column Hermite
/// normal form of a row basis of M.
SolveReport solve_integer(const IntMatrix& m, std::span<const std::int64_t> rhs);

/// Exact check of M x == D in the given domain (residues mod p for gf2/gfp).
bool verify_solution(const IntMatrix& m, std::span<const std::int64_t> rhs,
                     std::span<const mpq_class> x, Field field);

using BigMatrix = std::vector<std::vector<mpz_class>>;

/// Column-style Hermite normal form: A U = H with U unimodular and H lower
/// echelon. Pivot column k of row `pivot_rows[k]` is positive, and entries
/// left of a pivot in its row lie in [0, pivot).
struct HermiteForm {
  BigMatrix h;
  BigMatrix u;
  std::vector<std::size_t> pivot_rows;
};

HermiteForm hermite_column_form(const BigMatrix& a);

}  // namespace simplexobs
