#include "zeno/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

}  // namespace

double operator_norm(const Matrix& a) {
  auto s = singular_values(a);
  return s.size() == 0 ? 0.0 : s.maxCoeff();
}

double trace_norm(const Matrix& a) { return singular_values(a).sum(); }

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Matrix& a) {
  return max_abs(a - a.adjoint());
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace_bath(const Matrix& joint, std::size_t bath_dim) {
  const auto dim = static_cast<std::size_t>(joint.rows());
  if (bath_dim == 0 || joint.rows() != joint.cols() || dim % bath_dim != 0)
    throw Error(ErrorCode::dimension,
                "partial trace: joint dimension " + std::to_string(dim) +
                    " is not a multiple of bath dimension " +
                    std::to_string(bath_dim));
  const auto bd = static_cast<Eigen::Index>(bath_dim);
  const Eigen::Index sys = joint.rows() / bd;
  Matrix out = Matrix::Zero(sys, sys);
  for (Eigen::Index i = 0; i < sys; ++i)
    for (Eigen::Index j = 0; j < sys; ++j) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index b = 0; b < bd; ++b) acc += joint(i * bd + b, j * bd + b);
      out(i, j) = acc;
    }
  return out;
}

Matrix unitary_from_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  Vector phases = (eig.eigenvalues().cast<Complex>() * Complex(0.0, -t))
                      .array()
                      .exp()
                      .matrix();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double min_eigenvalue(const Matrix& a) {
  Matrix herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace zeno
