#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "codlib/canonical.hpp"
#include "codlib/polar.hpp"
#include "codlib/random.hpp"
#include "codlib/representation.hpp"

namespace codlib {

/// Result of the structure decomposition: the design equals
/// U * canonical_block(spec) * V with unitary factors, up to `residual`
/// measured entry-wise on the coefficient matrices.
struct Decomposition {
  CanonicalSpec spec;
  ComplexMatrix u, v;
  double residual = 0.0;
};

struct DecomposeOptions {
  std::uint64_t seed = 0;
  Tolerance tol{};
  int threads = 1;
};

/// Group-averaged intertwiner (1/|G|) sum_g target(g) Y source(g)^H. The
/// result T satisfies target(g) T = T source(g) for every g; when the two
/// representations are equivalent it is invertible for generic Y. The sum
/// runs over all 2^{m+1} elements; partitioning across threads only
/// reassociates the floating-point reduction.
inline ComplexMatrix average_intertwiner(const Representation& target,
                                         const Representation& source, const ComplexMatrix& y,
                                         int threads = 1) {
  require(target.m == source.m, Errc::invalid_argument,
          "intertwiner average needs representations of one group");
  require(y.rows() == target.dim && y.cols() == source.dim, Errc::invalid_argument,
          "seed matrix shape must be target.dim x source.dim");
  const std::vector<ComplexMatrix> t_table = detail::mask_images(target);
  const std::vector<ComplexMatrix> s_table = detail::mask_images(source);
  const std::vector<GroupElement> elements = enumerate_elements(target.m);

  const int nthreads = std::clamp(threads, 1, 64);
  std::vector<ComplexMatrix> partial(static_cast<std::size_t>(nthreads),
                                     ComplexMatrix::Zero(target.dim, source.dim));
  auto accumulate = [&](int slot) {
    const std::size_t lo = elements.size() * static_cast<std::size_t>(slot) /
                           static_cast<std::size_t>(nthreads);
    const std::size_t hi = elements.size() * static_cast<std::size_t>(slot + 1) /
                           static_cast<std::size_t>(nthreads);
    ComplexMatrix acc = ComplexMatrix::Zero(target.dim, source.dim);
    for (std::size_t i = lo; i < hi; ++i) {
      const GroupElement& g = elements[i];
      // sign(g) enters both factors and cancels in the product
      acc.noalias() += t_table[g.mask] * y * s_table[g.mask].adjoint();
    }
    partial[static_cast<std::size_t>(slot)] = std::move(acc);
  };
  if (nthreads == 1) {
    accumulate(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(accumulate, t);
    for (std::thread& t : pool) t.join();
  }
  ComplexMatrix sum = ComplexMatrix::Zero(target.dim, source.dim);
  for (const ComplexMatrix& part : partial) sum += part;
  return sum / static_cast<double>(elements.size());
}

namespace detail {

inline Representation canonical_rep(DesignKind kind, int vars, bool minus) {
  const LinearDesign blk =
      kind == DesignKind::cod ? canonical_cod(vars, minus) : canonical_hod(vars, minus);
  return rep_from_coefficients(hod_coefficients(blk));
}

}  // namespace detail

/// Constructive structure theorem for square designs.
///
/// Extracts the normalized representation of the design, reads off the
/// block multiplicities from character inner products against the canonical
/// realizations of the same kind, then averages a Gaussian seed matrix into
/// an intertwiner, unitarizes it by its polar factor T, and returns
/// U = E_0 T^H, V = T together with the reconstruction residual.
inline Decomposition decompose(const LinearDesign& design, const DecomposeOptions& opts = {}) {
  opts.tol.validate();
  require(design.is_square(), Errc::invalid_argument, "decompose needs a square design");
  const Index n = design.n();
  const int v = design.vars();

  const bool admissible = design.kind() == DesignKind::cod ? cod_admissible(n, v)
                                                           : hod_admissible(n, v);
  require(admissible, Errc::not_admissible,
          "no square design of this size exists: the block dimension does not divide n");

  const VerifyReport report = verify_design(design, opts.tol);
  require(report.ok, Errc::verification_failed,
          "design does not verify (residual " + std::to_string(report.max_residual) + ")");

  const std::vector<ComplexMatrix> e = hod_coefficients(design);
  Representation rho = detail::rep_from_coefficients(e);
  check_representation(rho, opts.tol);

  // Block multiplicities, labelled against the canonical blocks of the
  // design's own kind so that the counts match the reconstruction target.
  CanonicalSpec spec{design.kind(), v, 0, 0};
  if (design.kind() == DesignKind::hod && v % 2 == 1) {
    const Representation single = detail::canonical_rep(design.kind(), v, false);
    spec.plus_blocks = multiplicities_against(rho, single, nullptr).plus;
  } else {
    const Representation plus = detail::canonical_rep(design.kind(), v, false);
    const Representation minus = detail::canonical_rep(design.kind(), v, true);
    const Multiplicities mult = multiplicities_against(rho, plus, &minus);
    spec.plus_blocks = mult.plus;
    spec.minus_blocks = mult.minus;
  }
  require(spec.dim() == n, Errc::non_integral_multiplicity,
          "multiplicities do not account for the full dimension");

  const LinearDesign block = canonical_block(spec);
  const Representation target = detail::rep_from_coefficients(hod_coefficients(block));

  // Gaussian seeds until the averaged intertwiner is safely invertible;
  // each retry reseeds deterministically from (seed, attempt).
  constexpr double kInvertibilityGate = 1e-8;
  constexpr int kMaxAttempts = 8;
  ComplexMatrix t0;
  bool invertible = false;
  for (int attempt = 0; attempt < kMaxAttempts && !invertible; ++attempt) {
    auto rng = seeded_rng(opts.seed, static_cast<std::uint64_t>(attempt));
    const ComplexMatrix y = gaussian_matrix(n, n, rng);
    t0 = average_intertwiner(target, rho, y, opts.threads);
    Eigen::JacobiSVD<ComplexMatrix> svd(t0);
    const auto& sv = svd.singularValues();
    invertible = sv(sv.size() - 1) > kInvertibilityGate * sv(0);
  }
  require(invertible, Errc::intertwiner_singular,
          "averaged intertwiner stayed singular across retries");

  const ComplexMatrix t = polar_unitary(t0, opts.tol);
  ComplexMatrix u = e[0] * t.adjoint();
  ComplexMatrix v_factor = t;

  // Pin the mutual scalar phase: largest-magnitude entry of V real positive.
  Index pr = 0, pc = 0;
  double best = -1.0;
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      if (std::abs(v_factor(r, c)) > best) {
        best = std::abs(v_factor(r, c));
        pr = r;
        pc = c;
      }
  const Complex phase = v_factor(pr, pc) / std::abs(v_factor(pr, pc));
  v_factor *= std::conj(phase);
  u *= phase;

  require(is_unitary(u, opts.tol), Errc::verification_failed,
          "left factor failed its unitarity assertion");

  const double residual = coefficient_distance(design, transform(block, u, v_factor));
  require(opts.tol.admits(residual, 1.0), Errc::residual_too_large,
          "reconstruction residual " + std::to_string(residual) + " exceeds tolerance");
  return Decomposition{spec, std::move(u), std::move(v_factor), residual};
}

/// U * canonical_block(spec) * V; verifies whenever the factors are unitary.
inline LinearDesign reconstruct(const Decomposition& dec) {
  dec.spec.validate();
  return transform(canonical_block(dec.spec), dec.u, dec.v);
}

/// Number of equivalence classes of [n, n, k] square CODs: one per block
/// split, n / 2^{k-1} + 1 in total.
inline Index equivalence_class_count(Index n, int k) {
  require(cod_admissible(n, k), Errc::not_admissible,
          "no [n, n, k] square design exists for this size");
  return n / pow2(k - 1) + 1;
}

/// Extends an odd-variable HOD by one variable: decomposes it onto the
/// single canonical form and adds U (direct sum of signed last-variable
/// coefficients) V. Per-block signs choose which of the two even forms each
/// block becomes; the extension verifies as an [n, n, v+1] HOD.
inline LinearDesign extend_hod(const LinearDesign& design, const std::vector<int>& signs,
                               std::uint64_t seed = 0, const Tolerance& tol = {}) {
  require(design.kind() == DesignKind::hod && design.vars() % 2 == 1, Errc::invalid_argument,
          "extend_hod needs an hod with an odd number of variables");
  require(design.is_square(), Errc::invalid_argument, "extend_hod needs a square design");
  const int v = design.vars();
  require(hod_admissible(design.n(), v), Errc::not_admissible,
          "no square design of this size exists: the block dimension does not divide n");
  const Index bd = pow2((v + 1) / 2 - 1);
  const Index blocks = design.n() / bd;
  require(static_cast<Index>(signs.size()) == blocks, Errc::invalid_argument,
          "extend_hod needs exactly one sign per canonical block");
  for (int s : signs)
    require(s == 1 || s == -1, Errc::invalid_argument, "block signs must be +1 or -1");

  const Decomposition dec = decompose(design, DecomposeOptions{seed, tol, 1});
  const LinearDesign even = canonical_hod(v + 1);
  const ComplexMatrix& last = even.e(v + 1);
  ComplexMatrix l = ComplexMatrix::Zero(design.n(), design.n());
  for (Index j = 0; j < blocks; ++j)
    l.block(j * bd, j * bd, bd, bd) = static_cast<double>(signs[static_cast<std::size_t>(j)]) * last;

  std::vector<ComplexMatrix> e = hod_coefficients(design);
  e.push_back(dec.u * l * dec.v);
  LinearDesign out = LinearDesign::hod(std::move(e));
  const VerifyReport report = verify_design(out, tol);
  require(report.ok, Errc::verification_failed,
          "extension does not verify (residual " + std::to_string(report.max_residual) + ")");
  return out;
}

}  // namespace codlib
