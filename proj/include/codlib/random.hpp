#pragma once

#include <cstdint>
#include <random>

#include "codlib/matrix.hpp"

namespace codlib {

/// Deterministic generator for (seed, stream) pairs, so one user-facing seed
/// can feed several independent draws (e.g. the U and V of a scramble, or
/// the retry attempts of the intertwiner search).
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

/// Matrix with i.i.d. standard complex Gaussian entries (unit total variance).
inline ComplexMatrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  require(rows >= 1 && cols >= 1, Errc::invalid_argument, "gaussian_matrix needs positive shape");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = Complex(normal(rng), normal(rng)) * scale;
  return m;
}

/// Haar-distributed n x n unitary: QR of a Ginibre matrix with the R-diagonal
/// phases folded into Q so the distribution is exactly Haar rather than
/// merely unitary. `stream` lets one seed feed several independent draws.
inline ComplexMatrix haar_unitary(Index n, std::uint64_t seed, std::uint64_t stream = 0) {
  require(n >= 1, Errc::invalid_argument, "haar_unitary needs n >= 1");
  auto rng = seeded_rng(seed, stream);
  ComplexMatrix a = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace codlib
