#pragma once

#include <Eigen/SVD>

#include "codlib/matrix.hpp"

namespace codlib {

/// Unitary polar factor T (T^H T)^{-1/2} of an invertible square matrix,
/// computed from the SVD T = W S X^H as W X^H. The input counts as
/// invertible when its smallest singular value exceeds tol.abs times the
/// largest one.
inline ComplexMatrix polar_unitary(const ComplexMatrix& t, const Tolerance& tol = {}) {
  tol.validate();
  require(t.rows() == t.cols() && t.rows() >= 1, Errc::invalid_argument,
          "polar_unitary needs a nonempty square matrix");
  require_finite(t, "polar_unitary input");
  Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(sv.size() - 1);
  require(smallest > tol.abs * largest, Errc::invalid_argument,
          "polar_unitary input is singular or near-singular");
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace codlib
