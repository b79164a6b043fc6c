#pragma once

#include <cstdint>

#include "codlib/design.hpp"

namespace codlib {

/// Shape of a block-diagonal canonical design: plus_blocks copies of the
/// plus form followed by minus_blocks copies of the minus form. For CODs
/// vars is the complex variable count k; for HODs the real count m (minus
/// blocks only exist when m is even).
struct CanonicalSpec {
  DesignKind kind = DesignKind::cod;
  int vars = 1;
  int plus_blocks = 1;   // n1
  int minus_blocks = 0;  // n2

  Index block_dim() const {
    const int k = kind == DesignKind::cod ? vars : (vars + 1) / 2;
    return pow2(k - 1);
  }

  Index dim() const { return static_cast<Index>(plus_blocks + minus_blocks) * block_dim(); }

  void validate() const {
    require(vars >= 1, Errc::invalid_argument, "canonical spec needs at least one variable");
    require(plus_blocks >= 0 && minus_blocks >= 0 && plus_blocks + minus_blocks >= 1,
            Errc::invalid_argument, "canonical spec needs nonnegative counts with n1 + n2 >= 1");
    if (kind == DesignKind::hod && vars % 2 == 1)
      require(minus_blocks == 0, Errc::invalid_argument,
              "odd-variable hod has a single canonical form; n2 must be 0");
  }

  friend bool operator==(const CanonicalSpec&, const CanonicalSpec&) = default;
};

namespace detail {

// Coefficients of the conjugate-transposed design: swaps the roles of A_i
// and B_i besides transposing.
inline LinearDesign design_adjoint(const LinearDesign& d) {
  std::vector<ComplexMatrix> a, b;
  for (int i = 1; i <= d.vars(); ++i) {
    if (d.kind() == DesignKind::cod) {
      a.push_back(d.b(i).adjoint());
      b.push_back(d.a(i).adjoint());
    } else {
      a.push_back(d.e(i).adjoint());
    }
  }
  return d.kind() == DesignKind::cod ? LinearDesign::cod(std::move(a), std::move(b))
                                     : LinearDesign::hod(std::move(a));
}

}  // namespace detail

/// The 2^{k-1}-dimensional canonical COD, built by the two-by-two block
/// recursion from the 1x1 seed (z_1). `minus` conjugates the last variable.
/// All coefficients are exact 0/±1 values.
inline LinearDesign canonical_cod(int k, bool minus = false) {
  require(k >= 1, Errc::invalid_argument, "canonical_cod needs k >= 1");
  require(k <= 16, Errc::invalid_argument, "canonical_cod limited to k <= 16");
  std::vector<ComplexMatrix> a, b;
  a.push_back(ComplexMatrix::Identity(1, 1));
  b.push_back(ComplexMatrix::Zero(1, 1));
  for (int level = 2; level <= k; ++level) {
    const Index h = pow2(level - 2);
    LinearDesign prev = LinearDesign::cod(a, b);
    LinearDesign prev_h = detail::design_adjoint(prev);
    a.assign(static_cast<std::size_t>(level), ComplexMatrix::Zero(2 * h, 2 * h));
    b.assign(static_cast<std::size_t>(level), ComplexMatrix::Zero(2 * h, 2 * h));
    for (int i = 1; i < level; ++i) {
      a[static_cast<std::size_t>(i - 1)].topLeftCorner(h, h) = prev.a(i);
      a[static_cast<std::size_t>(i - 1)].bottomRightCorner(h, h) = prev_h.a(i);
      b[static_cast<std::size_t>(i - 1)].topLeftCorner(h, h) = prev.b(i);
      b[static_cast<std::size_t>(i - 1)].bottomRightCorner(h, h) = prev_h.b(i);
    }
    a.back().topRightCorner(h, h) = ComplexMatrix::Identity(h, h);
    b.back().bottomLeftCorner(h, h) = -ComplexMatrix::Identity(h, h);
  }
  if (minus) std::swap(a.back(), b.back());
  return LinearDesign::cod(std::move(a), std::move(b));
}

/// Canonical COD with variable i (1-based) conjugated everywhere; the i = k
/// case coincides with canonical_cod(k, true).
inline LinearDesign canonical_cod_conjugated(int k, int i) {
  require(i >= 1 && i <= k, Errc::invalid_argument, "variable index out of range");
  LinearDesign d = canonical_cod(k);
  std::vector<ComplexMatrix> a, b;
  for (int j = 1; j <= k; ++j) {
    a.push_back(j == i ? d.b(j) : d.a(j));
    b.push_back(j == i ? d.a(j) : d.b(j));
  }
  return LinearDesign::cod(std::move(a), std::move(b));
}

/// Canonical HOD in m real variables of dimension 2^{ceil(m/2)-1}. Even m
/// follows the interleaved recursion whose 1x1 seed is (x_1 + sqrt(-1) x_2);
/// odd m zeroes the last variable of the (m+1)-variable form. `minus`
/// negates the last variable and requires even m.
inline LinearDesign canonical_hod(int m, bool minus = false) {
  require(m >= 1, Errc::invalid_argument, "canonical_hod needs m >= 1");
  require(m <= 32, Errc::invalid_argument, "canonical_hod limited to m <= 32");
  require(!(minus && m % 2 == 1), Errc::invalid_argument,
          "minus variant only exists for even variable counts");
  const int k = (m + 1) / 2;  // even-variable levels: 2, 4, ..., 2k
  std::vector<ComplexMatrix> e;
  e.push_back(ComplexMatrix::Identity(1, 1));
  e.push_back(kImag * ComplexMatrix::Identity(1, 1));
  for (int level = 2; level <= k; ++level) {
    const Index h = pow2(level - 2);
    LinearDesign prev = LinearDesign::hod(e);
    LinearDesign prev_h = detail::design_adjoint(prev);
    e.assign(static_cast<std::size_t>(2 * level), ComplexMatrix::Zero(2 * h, 2 * h));
    for (int i = 1; i <= 2 * (level - 1); ++i) {
      e[static_cast<std::size_t>(i - 1)].topLeftCorner(h, h) = prev.e(i);
      e[static_cast<std::size_t>(i - 1)].bottomRightCorner(h, h) = prev_h.e(i);
    }
    e[static_cast<std::size_t>(2 * level - 2)].topRightCorner(h, h) =
        ComplexMatrix::Identity(h, h);
    e[static_cast<std::size_t>(2 * level - 2)].bottomLeftCorner(h, h) =
        -ComplexMatrix::Identity(h, h);
    e[static_cast<std::size_t>(2 * level - 1)].topRightCorner(h, h) =
        kImag * ComplexMatrix::Identity(h, h);
    e[static_cast<std::size_t>(2 * level - 1)].bottomLeftCorner(h, h) =
        kImag * ComplexMatrix::Identity(h, h);
  }
  if (m % 2 == 1) e.pop_back();
  if (minus) e.back() = -e.back();
  return LinearDesign::hod(std::move(e));
}

/// Block-diagonal canonical design: plus blocks first, then minus blocks.
inline LinearDesign canonical_block(const CanonicalSpec& spec) {
  spec.validate();
  const LinearDesign plus = spec.kind == DesignKind::cod ? canonical_cod(spec.vars)
                                                         : canonical_hod(spec.vars);
  const Index bd = spec.block_dim();
  const Index n = spec.dim();
  const int t = spec.plus_blocks + spec.minus_blocks;
  const int v = plus.vars();
  std::vector<ComplexMatrix> a(static_cast<std::size_t>(v), ComplexMatrix::Zero(n, n));
  std::vector<ComplexMatrix> b;
  if (spec.kind == DesignKind::cod) b.assign(static_cast<std::size_t>(v), ComplexMatrix::Zero(n, n));

  LinearDesign minus = plus;  // replaced below when needed
  if (spec.minus_blocks > 0)
    minus = spec.kind == DesignKind::cod ? canonical_cod(spec.vars, true)
                                         : canonical_hod(spec.vars, true);

  for (int j = 0; j < t; ++j) {
    const LinearDesign& blk = j < spec.plus_blocks ? plus : minus;
    const Index off = static_cast<Index>(j) * bd;
    for (int i = 1; i <= v; ++i) {
      if (spec.kind == DesignKind::cod) {
        a[static_cast<std::size_t>(i - 1)].block(off, off, bd, bd) = blk.a(i);
        b[static_cast<std::size_t>(i - 1)].block(off, off, bd, bd) = blk.b(i);
      } else {
        a[static_cast<std::size_t>(i - 1)].block(off, off, bd, bd) = blk.e(i);
      }
    }
  }
  return spec.kind == DesignKind::cod ? LinearDesign::cod(std::move(a), std::move(b))
                                      : LinearDesign::hod(std::move(a));
}

/// Classical Hurwitz-Radon function: with n = 2^m n_0 (n_0 odd) the value
/// depends only on m mod 4 and the 2-adic valuation.
inline int hurwitz_radon(std::uint64_t n) {
  require(n >= 1, Errc::invalid_argument, "hurwitz_radon needs n >= 1");
  int m = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++m;
  }
  switch (m % 4) {
    case 0: return 2 * m + 1;
    case 1:
    case 2: return 2 * m;
    default: return 2 * m + 2;
  }
}

/// Square CODs of size [n, n, k] exist exactly when 2^{k-1} divides n.
inline bool cod_admissible(Index n, int k) {
  require(n >= 1 && k >= 1, Errc::invalid_argument, "cod_admissible needs n, k >= 1");
  if (k - 1 >= 62) return false;
  return n % pow2(k - 1) == 0;
}

/// Square HODs of size [n, n, m] exist exactly when 2^{ceil(m/2)-1} divides n.
inline bool hod_admissible(Index n, int m) {
  require(n >= 1 && m >= 1, Errc::invalid_argument, "hod_admissible needs n, m >= 1");
  const int k = (m + 1) / 2;
  if (k - 1 >= 62) return false;
  return n % pow2(k - 1) == 0;
}

}  // namespace codlib
