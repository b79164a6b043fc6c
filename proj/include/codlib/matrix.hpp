#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "codlib/errors.hpp"

namespace codlib {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr Complex kImag{0.0, 1.0};

/// Absolute/relative tolerance pair used by every numeric check.
/// A residual passes when it is at most `abs + rel * scale`, where `scale`
/// is the natural magnitude of the quantity being compared (1 for the
/// orthogonality identities, whose targets are 0/1 entries).
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  void validate() const {
    require(std::isfinite(abs) && std::isfinite(rel) && abs >= 0.0 && rel >= 0.0,
            Errc::invalid_argument, "tolerance components must be finite and nonnegative");
  }

  bool admits(double residual, double scale = 1.0) const { return residual <= abs + rel * scale; }
};

/// Largest entry magnitude; 0 for an empty matrix.
inline double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

/// Entry-wise max deviation between two equally shaped matrices.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::invalid_argument,
          "matrix shape mismatch in comparison");
  return max_abs(a - b);
}

/// || M^H M - I ||_max
inline double unitarity_defect(const ComplexMatrix& m) {
  require(m.rows() == m.cols(), Errc::invalid_argument, "unitarity check needs a square matrix");
  ComplexMatrix g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return max_abs(g);
}

inline bool is_unitary(const ComplexMatrix& m, const Tolerance& tol = {}) {
  return m.rows() == m.cols() && tol.admits(unitarity_defect(m));
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
  require(m.allFinite(), Errc::invalid_argument, std::string("non-finite entries in ") + what);
}

inline Index pow2(int e) {
  require(e >= 0 && e < 62, Errc::invalid_argument, "power of two out of range");
  return Index{1} << e;
}

}  // namespace codlib
