#pragma once

#include <string>
#include <utility>
#include <vector>

#include "codlib/matrix.hpp"

namespace codlib {

enum class DesignKind { cod, hod };

inline const char* kind_name(DesignKind k) { return k == DesignKind::cod ? "cod" : "hod"; }

/// A p x n matrix of linear forms stored coefficient-wise.
///
/// A COD in k complex variables z_1..z_k keeps one pair (A_i, B_i) per
/// variable, multiplying z_i and z_i^* respectively. An HOD in k real
/// variables x_1..x_k keeps a single E_i per variable. Variable indices are
/// 1-based throughout the public API, matching the z_i / x_i naming.
/// Instances are immutable after construction.
class LinearDesign {
 public:
  static LinearDesign cod(std::vector<ComplexMatrix> a, std::vector<ComplexMatrix> b) {
    require(a.size() == b.size(), Errc::invalid_argument,
            "cod design needs matching A and B coefficient lists");
    LinearDesign d(DesignKind::cod, std::move(a), std::move(b));
    d.validate();
    return d;
  }

  static LinearDesign hod(std::vector<ComplexMatrix> e) {
    LinearDesign d(DesignKind::hod, std::move(e), {});
    d.validate();
    return d;
  }

  DesignKind kind() const { return kind_; }
  Index p() const { return p_; }
  Index n() const { return n_; }
  int vars() const { return static_cast<int>(a_.size()); }
  bool is_square() const { return p_ == n_; }

  /// Coefficient of z_i (1-based); COD only.
  const ComplexMatrix& a(int i) const {
    require(kind_ == DesignKind::cod, Errc::invalid_argument, "a(i) is a cod accessor");
    return a_[var_index(i)];
  }

  /// Coefficient of z_i^* (1-based); COD only.
  const ComplexMatrix& b(int i) const {
    require(kind_ == DesignKind::cod, Errc::invalid_argument, "b(i) is a cod accessor");
    return b_[var_index(i)];
  }

  /// Coefficient of x_i (1-based); HOD only.
  const ComplexMatrix& e(int i) const {
    require(kind_ == DesignKind::hod, Errc::invalid_argument, "e(i) is a hod accessor");
    return a_[var_index(i)];
  }

  /// All coefficient matrices in variable order: {A_1, B_1, A_2, ...} for a
  /// COD, {E_1, E_2, ...} for an HOD. Used by transforms and residuals.
  std::vector<const ComplexMatrix*> coefficient_view() const {
    std::vector<const ComplexMatrix*> out;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      out.push_back(&a_[i]);
      if (kind_ == DesignKind::cod) out.push_back(&b_[i]);
    }
    return out;
  }

 private:
  LinearDesign(DesignKind kind, std::vector<ComplexMatrix> a, std::vector<ComplexMatrix> b)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)) {}

  std::size_t var_index(int i) const {
    require(i >= 1 && static_cast<std::size_t>(i) <= a_.size(), Errc::invalid_argument,
            "variable index out of range");
    return static_cast<std::size_t>(i - 1);
  }

  void validate() {
    require(!a_.empty(), Errc::invalid_argument, "design needs at least one variable");
    p_ = a_[0].rows();
    n_ = a_[0].cols();
    require(p_ >= n_ && n_ >= 1, Errc::invalid_argument, "design shape must satisfy p >= n >= 1");
    auto check = [&](const ComplexMatrix& m) {
      require(m.rows() == p_ && m.cols() == n_, Errc::invalid_argument,
              "all coefficient matrices must share one shape");
      require_finite(m, "design coefficient");
    };
    for (const auto& m : a_) check(m);
    for (const auto& m : b_) check(m);
  }

  DesignKind kind_;
  Index p_ = 0, n_ = 0;
  std::vector<ComplexMatrix> a_;  // A_i for cod, E_i for hod
  std::vector<ComplexMatrix> b_;  // B_i for cod, unused for hod
};

/// Substitute concrete values for the formal variables. HOD variables are
/// real: any nonzero imaginary part is rejected.
inline ComplexMatrix evaluate(const LinearDesign& d, const std::vector<Complex>& values) {
  require(values.size() == static_cast<std::size_t>(d.vars()), Errc::invalid_argument,
          "evaluate needs one value per variable");
  ComplexMatrix out = ComplexMatrix::Zero(d.p(), d.n());
  for (int i = 1; i <= d.vars(); ++i) {
    const Complex z = values[static_cast<std::size_t>(i - 1)];
    if (d.kind() == DesignKind::cod) {
      out += z * d.a(i) + std::conj(z) * d.b(i);
    } else {
      require(z.imag() == 0.0, Errc::invalid_argument,
              "hod variables are real; got a nonreal value");
      out += z.real() * d.e(i);
    }
  }
  return out;
}

/// Split each complex variable into two real ones: E_i = A_i + B_i and
/// E_{k+i} = sqrt(-1) (A_i - B_i), so z_i = x_i + sqrt(-1) x_{k+i}
/// reproduces the original evaluation. This is the library's "block"
/// pairing; see hod_to_interleaved for the (x_{2i-1}, x_{2i}) layout.
inline LinearDesign cod_to_hod(const LinearDesign& d) {
  require(d.kind() == DesignKind::cod, Errc::invalid_argument, "cod_to_hod needs a cod");
  const int k = d.vars();
  std::vector<ComplexMatrix> e(static_cast<std::size_t>(2 * k));
  for (int i = 1; i <= k; ++i) {
    e[static_cast<std::size_t>(i - 1)] = d.a(i) + d.b(i);
    e[static_cast<std::size_t>(k + i - 1)] = kImag * (d.a(i) - d.b(i));
  }
  return LinearDesign::hod(std::move(e));
}

/// Inverse of cod_to_hod under the block pairing (x_i, x_{k+i}).
inline LinearDesign hod_to_cod(const LinearDesign& d) {
  require(d.kind() == DesignKind::hod, Errc::invalid_argument, "hod_to_cod needs a hod");
  require(d.vars() % 2 == 0, Errc::invalid_argument,
          "hod_to_cod needs an even number of variables");
  const int k = d.vars() / 2;
  std::vector<ComplexMatrix> a(static_cast<std::size_t>(k)), b(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    const ComplexMatrix& ei = d.e(i);
    const ComplexMatrix& eki = d.e(k + i);
    a[static_cast<std::size_t>(i - 1)] = (ei - kImag * eki) * 0.5;
    b[static_cast<std::size_t>(i - 1)] = (ei + kImag * eki) * 0.5;
  }
  return LinearDesign::cod(std::move(a), std::move(b));
}

/// Reorders an even-variable HOD from the block pairing (x_i, x_{k+i}) to
/// the interleaved pairing (x_{2i-1}, x_{2i}).
inline LinearDesign hod_to_interleaved(const LinearDesign& d) {
  require(d.kind() == DesignKind::hod && d.vars() % 2 == 0, Errc::invalid_argument,
          "pairing re-index needs an even-variable hod");
  const int k = d.vars() / 2;
  std::vector<ComplexMatrix> e(static_cast<std::size_t>(2 * k));
  for (int i = 1; i <= k; ++i) {
    e[static_cast<std::size_t>(2 * i - 2)] = d.e(i);
    e[static_cast<std::size_t>(2 * i - 1)] = d.e(k + i);
  }
  return LinearDesign::hod(std::move(e));
}

/// Inverse of hod_to_interleaved.
inline LinearDesign hod_to_block(const LinearDesign& d) {
  require(d.kind() == DesignKind::hod && d.vars() % 2 == 0, Errc::invalid_argument,
          "pairing re-index needs an even-variable hod");
  const int k = d.vars() / 2;
  std::vector<ComplexMatrix> e(static_cast<std::size_t>(2 * k));
  for (int i = 1; i <= k; ++i) {
    e[static_cast<std::size_t>(i - 1)] = d.e(2 * i - 1);
    e[static_cast<std::size_t>(k + i - 1)] = d.e(2 * i);
  }
  return LinearDesign::hod(std::move(e));
}

/// Real-variable coefficient list E_1..E_v of a design (conversion applied
/// for CODs, identity for HODs).
inline std::vector<ComplexMatrix> hod_coefficients(const LinearDesign& d) {
  const LinearDesign h = d.kind() == DesignKind::hod ? d : cod_to_hod(d);
  std::vector<ComplexMatrix> e;
  e.reserve(static_cast<std::size_t>(h.vars()));
  for (int i = 1; i <= h.vars(); ++i) e.push_back(h.e(i));
  return e;
}

struct VerifyReport {
  double max_residual = 0.0;
  bool ok = false;
};

/// Checks the defining identities exactly on the coefficients: every E_i is
/// an isometry (E_i^H E_i = I_n) and distinct coefficients cancel
/// (E_i^H E_j + E_j^H E_i = 0). No sampling is involved.
inline VerifyReport verify_design(const LinearDesign& d, const Tolerance& tol = {}) {
  tol.validate();
  const std::vector<ComplexMatrix> e = hod_coefficients(d);
  const Index n = d.n();
  double residual = 0.0;
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  for (std::size_t i = 0; i < e.size(); ++i) {
    residual = std::max(residual, max_abs(e[i].adjoint() * e[i] - eye));
    for (std::size_t j = i + 1; j < e.size(); ++j)
      residual = std::max(residual, max_abs(e[i].adjoint() * e[j] + e[j].adjoint() * e[i]));
  }
  return VerifyReport{residual, tol.admits(residual, 1.0)};
}

/// Left/right multiply every coefficient matrix: O -> U O V. With unitary
/// factors this maps verified designs to verified designs.
inline LinearDesign transform(const LinearDesign& d, const ComplexMatrix& u,
                              const ComplexMatrix& v) {
  require(u.rows() == d.p() && u.cols() == d.p(), Errc::invalid_argument,
          "left factor must be p x p");
  require(v.rows() == d.n() && v.cols() == d.n(), Errc::invalid_argument,
          "right factor must be n x n");
  std::vector<ComplexMatrix> a, b;
  for (int i = 1; i <= d.vars(); ++i) {
    if (d.kind() == DesignKind::cod) {
      a.push_back(u * d.a(i) * v);
      b.push_back(u * d.b(i) * v);
    } else {
      a.push_back(u * d.e(i) * v);
    }
  }
  return d.kind() == DesignKind::cod ? LinearDesign::cod(std::move(a), std::move(b))
                                     : LinearDesign::hod(std::move(a));
}

/// Largest entry-wise deviation across corresponding coefficient matrices.
inline double coefficient_distance(const LinearDesign& x, const LinearDesign& y) {
  require(x.kind() == y.kind() && x.vars() == y.vars() && x.p() == y.p() && x.n() == y.n(),
          Errc::invalid_argument, "coefficient_distance needs designs of identical shape");
  const auto cx = x.coefficient_view();
  const auto cy = y.coefficient_view();
  double out = 0.0;
  for (std::size_t i = 0; i < cx.size(); ++i) out = std::max(out, max_abs_diff(*cx[i], *cy[i]));
  return out;
}

}  // namespace codlib
