#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "codlib/canonical.hpp"
#include "codlib/design.hpp"
#include "codlib/group.hpp"

namespace codlib {

/// Unitary representation of the sign group on m generators, stored as the
/// generator images G_1..G_m (the image of -1 is -I by construction, so the
/// representation is nondegenerate). Images of arbitrary elements are
/// products taken in increasing generator order.
struct Representation {
  int m = 0;
  Index dim = 0;
  std::vector<ComplexMatrix> images;  // images[i-1] = image of generator i

  const ComplexMatrix& generator_image(int i) const {
    require(i >= 1 && i <= m, Errc::invalid_argument, "generator index out of range");
    return images[static_cast<std::size_t>(i - 1)];
  }
};

/// Asserts the defining relations within tolerance: each image unitary,
/// G_i^2 = -I, and G_i G_j = -G_j G_i for i != j.
inline void check_representation(const Representation& rep, const Tolerance& tol = {}) {
  tol.validate();
  require(rep.m >= 0 && rep.images.size() == static_cast<std::size_t>(rep.m) && rep.dim >= 1,
          Errc::invalid_argument, "malformed representation");
  const ComplexMatrix eye = ComplexMatrix::Identity(rep.dim, rep.dim);
  for (int i = 1; i <= rep.m; ++i) {
    const ComplexMatrix& gi = rep.generator_image(i);
    require(gi.rows() == rep.dim && gi.cols() == rep.dim, Errc::invalid_argument,
            "generator image with wrong shape");
    require(tol.admits(unitarity_defect(gi)), Errc::verification_failed,
            "generator image is not unitary");
    require(tol.admits(max_abs(gi * gi + eye)), Errc::verification_failed,
            "generator image does not square to -I");
    for (int j = i + 1; j <= rep.m; ++j) {
      const ComplexMatrix& gj = rep.generator_image(j);
      require(tol.admits(max_abs(gi * gj + gj * gi)), Errc::verification_failed,
              "generator images do not anticommute");
    }
  }
}

namespace detail {

// Representation from an explicit coefficient list E_0..E_v-1, without
// re-verifying the design identities.
inline Representation rep_from_coefficients(const std::vector<ComplexMatrix>& e) {
  require(!e.empty(), Errc::invalid_argument, "empty coefficient list");
  Representation rep;
  rep.m = static_cast<int>(e.size()) - 1;
  rep.dim = e[0].rows();
  const ComplexMatrix e0h = e[0].adjoint();
  for (std::size_t i = 1; i < e.size(); ++i) rep.images.push_back(e0h * e[i]);
  return rep;
}

}  // namespace detail

/// Normalized representation of a verified square design: with coefficients
/// relabelled E_0..E_{v-1}, the generator images are G_i = E_0^H E_i, giving
/// m = v - 1 generators.
inline Representation rep_from_design(const LinearDesign& d, const Tolerance& tol = {}) {
  require(d.is_square(), Errc::invalid_argument, "rep_from_design needs a square design");
  const VerifyReport report = verify_design(d, tol);
  require(report.ok, Errc::verification_failed,
          "design does not verify (residual " + std::to_string(report.max_residual) + ")");
  Representation rep = detail::rep_from_coefficients(hod_coefficients(d));
  check_representation(rep, tol);
  return rep;
}

/// Image of an arbitrary element: sign times the generator images multiplied
/// in increasing index order.
inline ComplexMatrix rep_image(const Representation& rep, const GroupElement& e) {
  require(e.m == rep.m, Errc::invalid_argument, "element and representation disagree on m");
  ComplexMatrix out = ComplexMatrix::Identity(rep.dim, rep.dim);
  for (std::uint32_t rest = e.mask; rest != 0; rest &= rest - 1)
    out = out * rep.generator_image(std::countr_zero(rest) + 1);
  if (e.sign < 0) out = -out;
  return out;
}

namespace detail {

inline constexpr std::size_t kMaskTableByteCap = std::size_t{1} << 29;  // 512 MiB

// Images of all positive monomials, indexed by mask. Shares the product
// association of rep_image, so entries agree bitwise with one-off queries.
inline std::vector<ComplexMatrix> mask_images(const Representation& rep) {
  require(rep.m <= kMaxGenerators, Errc::invalid_argument, "group too large for table build");
  const std::size_t count = std::size_t{1} << rep.m;
  const std::size_t bytes = count * static_cast<std::size_t>(rep.dim) *
                            static_cast<std::size_t>(rep.dim) * sizeof(Complex);
  require(bytes <= kMaskTableByteCap, Errc::invalid_argument,
          "group-sum table would exceed the memory guard");
  std::vector<ComplexMatrix> table(count);
  table[0] = ComplexMatrix::Identity(rep.dim, rep.dim);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const int high = std::bit_width(static_cast<std::uint32_t>(mask)) - 1;
    table[mask] = table[mask & ~(std::size_t{1} << high)] * rep.generator_image(high + 1);
  }
  return table;
}

}  // namespace detail

/// Character values over the whole group in enumerate_elements order.
inline std::vector<Complex> character_values(const Representation& rep) {
  const std::vector<ComplexMatrix> table = detail::mask_images(rep);
  std::vector<Complex> out;
  out.reserve(2 * table.size());
  for (const ComplexMatrix& img : table) out.push_back(img.trace());
  for (const ComplexMatrix& img : table) out.push_back(-img.trace());
  return out;
}

/// Scalar lambda with image(g_1 ... g_m) = lambda I; defined for odd m,
/// where the all-generators product is central.
inline Complex central_scalar(const Representation& rep, const Tolerance& tol = {}) {
  require(rep.m % 2 == 1, Errc::invalid_argument,
          "central scalar requires an odd generator count");
  const std::uint32_t full = (std::uint32_t{1} << rep.m) - 1;
  const ComplexMatrix img = rep_image(rep, {rep.m, full, +1});
  const Complex lambda = img(0, 0);
  require(tol.admits(max_abs(img - lambda * ComplexMatrix::Identity(rep.dim, rep.dim))),
          Errc::verification_failed, "central element image is not scalar");
  return lambda;
}

/// One irreducible representation of the sign group: its dimension plus, for
/// the nondegenerate ones, a concrete unitary realization (and for odd m the
/// central-element scalar separating the two of them). The degenerate
/// one-dimensional characters carry their defining generator subset instead.
struct IrrepSpec {
  Index dim = 1;
  std::optional<Representation> realization;
  std::optional<Complex> central_scalar;
  std::optional<std::uint32_t> sign_subset;
};

/// Complete irreducible inventory: for odd m the two 2^{(m-1)/2}-dimensional
/// nondegenerate representations realized by the canonical plus/minus CODs;
/// for even m the single 2^{m/2}-dimensional one realized by the canonical
/// odd-variable HOD; plus the 2^m one-dimensional characters. Squared
/// dimensions always sum to the group order 2^{m+1}.
inline std::vector<IrrepSpec> irrep_inventory(int m) {
  require(m >= 1 && m <= kMaxGenerators, Errc::invalid_argument,
          "irrep_inventory supports 1 <= m <= 14");
  std::vector<IrrepSpec> out;
  if (m % 2 == 1) {
    const int k = (m + 1) / 2;
    for (bool minus : {false, true}) {
      IrrepSpec spec;
      spec.realization = rep_from_design(canonical_cod(k, minus));
      spec.dim = spec.realization->dim;
      spec.central_scalar = central_scalar(*spec.realization);
      out.push_back(std::move(spec));
    }
    require(std::abs(*out[0].central_scalar + *out[1].central_scalar) < 1e-12,
            Errc::verification_failed, "canonical central scalars are not opposite");
  } else {
    IrrepSpec spec;
    spec.realization = rep_from_design(canonical_hod(m + 1));
    spec.dim = spec.realization->dim;
    out.push_back(std::move(spec));
  }
  Index square_sum = 0;
  for (const IrrepSpec& s : out) square_sum += s.dim * s.dim;
  for (const OneDimCharacter& chi : one_dim_characters(m)) {
    IrrepSpec spec;
    spec.sign_subset = chi.negated;
    out.push_back(std::move(spec));
    square_sum += 1;
  }
  require(square_sum == pow2(m + 1), Errc::verification_failed,
          "irrep dimension count does not match the group order");
  return out;
}

namespace detail {

// <chi_rep, chi_ref> rounded to the nearest nonnegative integer; rejects
// inner products that are not integral to within 1e-6.
inline int integral_multiplicity(const std::vector<Complex>& rep_chi,
                                 const std::vector<Complex>& ref_chi) {
  require(rep_chi.size() == ref_chi.size(), Errc::invalid_argument,
          "character vectors of different groups");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < rep_chi.size(); ++i) acc += rep_chi[i] * std::conj(ref_chi[i]);
  acc /= static_cast<double>(rep_chi.size());
  const double rounded = std::round(acc.real());
  require(std::abs(acc.imag()) < 1e-6 && std::abs(acc.real() - rounded) < 1e-6 && rounded >= 0.0,
          Errc::non_integral_multiplicity,
          "character inner product is not a nonnegative integer; the input is not a valid "
          "design representation");
  return static_cast<int>(rounded);
}

}  // namespace detail

struct Multiplicities {
  int plus = 0;   // n1
  int minus = 0;  // n2 (always 0 when has_minus is false)
  bool has_minus = true;
};

/// Isotypic multiplicities of rep against explicit nondegenerate reference
/// irreps; the plus/minus labels follow the argument order. For odd m the
/// result is cross-checked against the central-element trace shortcut
/// n1 - n2 = tr(rep(g_1...g_m)) / (lambda 2^{k-1}).
inline Multiplicities multiplicities_against(const Representation& rep,
                                             const Representation& ref_plus,
                                             const Representation* ref_minus) {
  require(ref_plus.m == rep.m && (!ref_minus || ref_minus->m == rep.m), Errc::invalid_argument,
          "references and representation disagree on m");
  const std::vector<Complex> chi = character_values(rep);
  Multiplicities out;
  out.plus = detail::integral_multiplicity(chi, character_values(ref_plus));
  if (ref_minus) {
    out.minus = detail::integral_multiplicity(chi, character_values(*ref_minus));
    const Complex lambda = central_scalar(ref_plus);
    const std::uint32_t full = (std::uint32_t{1} << rep.m) - 1;
    const Complex central_trace = rep_image(rep, {rep.m, full, +1}).trace();
    const Complex diff = central_trace / (lambda * static_cast<double>(ref_plus.dim));
    require(std::abs(diff - Complex(static_cast<double>(out.plus - out.minus), 0.0)) < 1e-6,
            Errc::non_integral_multiplicity,
            "central-element shortcut disagrees with the character inner products");
  } else {
    out.has_minus = false;
  }
  return out;
}

/// Multiplicities against the canonical inventory realizations: (n1, n2) for
/// odd m, a single count for even m.
inline Multiplicities multiplicities(const Representation& rep) {
  if (rep.m % 2 == 1) {
    const int k = (rep.m + 1) / 2;
    const Representation plus = rep_from_design(canonical_cod(k));
    const Representation minus = rep_from_design(canonical_cod(k, true));
    return multiplicities_against(rep, plus, &minus);
  }
  const Representation single = rep_from_design(canonical_hod(rep.m + 1));
  return multiplicities_against(rep, single, nullptr);
}

}  // namespace codlib
