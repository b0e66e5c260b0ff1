#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "simplexobs/int_matrix.hpp"
#include "simplexobs/permutation.hpp"
#include "simplexobs/unitary_path.hpp"

namespace testsupport {

using simplexobs::BlockUnitaryPath;
using simplexobs::CMatrix;
using simplexobs::IntMatrix;
using simplexobs::Partition;

// Order-sensitive fingerprint of a sparse matrix; mirrors the Python oracle.
inline std::uint64_t matrix_checksum(const IntMatrix& m) {
  constexpr std::int64_t P = 1000000007;
  std::int64_t s = 0;
  const auto cols = static_cast<std::int64_t>(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto rr = static_cast<std::int64_t>(r);
    for (const auto& e : m.row(r)) {
      const auto v = ((e.value % P) + P) % P;
      const auto idx = (rr * cols + static_cast<std::int64_t>(e.col) + 1) % P;
      s = (s + idx * v % P * (rr + 7)) % P;
    }
  }
  return static_cast<std::uint64_t>(s);
}

// Bareiss fraction-free determinant.
inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const auto n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline IntMatrix random_ternary(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                                double density = 0.3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<std::int64_t>> dense(rows, std::vector<std::int64_t>(cols, 0));
  for (auto& row : dense)
    for (auto& x : row)
      if (u(rng) < density) x = u(rng) < 0.5 ? -1 : 1;
  return IntMatrix::from_dense(dense, cols);
}

inline CMatrix random_unitary(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix z(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) z(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMatrix> qr(z);
  return qr.householderQ() * CMatrix::Identity(k, k);
}

// t -> W exp(i t H) blockwise, with random Hermitian H and unitary W per block.
inline BlockUnitaryPath random_block_path(const Partition& p, std::mt19937_64& rng,
                                          int samples = 512, double scale = 6.0) {
  const int n = p.size();
  std::normal_distribution<double> g;
  struct Piece {
    std::vector<int> block;
    Eigen::MatrixXcd vecs;
    Eigen::VectorXd vals;
    CMatrix start;
  };
  std::vector<Piece> pieces;
  for (const auto& b : p.blocks()) {
    const int k = static_cast<int>(b.size());
    CMatrix h(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) h(i, j) = {g(rng), g(rng)};
    h = (h + h.adjoint()).eval() * (scale / (2.0 * k));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    pieces.push_back({b, es.eigenvectors(), es.eigenvalues(), random_unitary(k, rng)});
  }
  std::vector<CMatrix> values;
  for (int s = 0; s <= samples; ++s) {
    const double t = static_cast<double>(s) / samples;
    CMatrix u = CMatrix::Zero(n, n);
    for (const auto& pc : pieces) {
      const int k = static_cast<int>(pc.block.size());
      Eigen::VectorXcd ph(k);
      for (int i = 0; i < k; ++i) ph(i) = std::polar(1.0, t * pc.vals(i));
      const CMatrix blk = pc.start * pc.vecs * ph.asDiagonal() * pc.vecs.adjoint();
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) u(pc.block[i] - 1, pc.block[j] - 1) = blk(i, j);
    }
    values.push_back(std::move(u));
  }
  return BlockUnitaryPath(p, std::move(values));
}

// A random partition of {1..n}: random labels, then canonicalized.
inline Partition random_partition(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lab(0, n - 1);
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) blocks[static_cast<std::size_t>(lab(rng))].push_back(i);
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return Partition(n, std::move(blocks));
}

}  // namespace testsupport
