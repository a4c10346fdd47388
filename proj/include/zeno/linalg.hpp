#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest joint (system x bath) dimension handled by dense routines.
inline constexpr std::size_t kMaxJointDim = 4096;

// Small dense helpers used across modules. All norms are on the full matrix.

double operator_norm(const Matrix& a);      // Schatten-inf, largest singular value
double trace_norm(const Matrix& a);         // Schatten-1, sum of singular values
double max_abs(const Matrix& a);            // entrywise max |a_ij|
double hermiticity_residual(const Matrix& a);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Tr_B of an operator on C^{system_dim} (x) C^{bath_dim}; the joint index is
/// system * bath_dim + bath.
Matrix partial_trace_bath(const Matrix& joint, std::size_t bath_dim);

/// exp(-i H t) for Hermitian H via its eigendecomposition.
Matrix unitary_from_hermitian(const Matrix& h, double t);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_eigenvalue(const Matrix& a);

}  // namespace zeno
