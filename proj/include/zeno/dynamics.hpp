#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "zeno/linalg.hpp"
#include "zeno/measurement.hpp"
#include "zeno/stabilizer.hpp"

namespace zeno {

enum class Protocol { group, generators };

const char* protocol_name(Protocol p) noexcept;

struct StateDiagnostics {
  double hermiticity = 0.0;    // max |rho - rho^dagger|
  double trace_error = 0.0;    // |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool valid(double tol_hermitian = 1e-12, double tol_trace = 1e-12,
             double tol_positive = 1e-10) const noexcept {
    return hermiticity <= tol_hermitian && trace_error <= tol_trace &&
           min_eigenvalue >= -tol_positive;
  }
};

StateDiagnostics diagnose_state(const Matrix& rho);

/// Throws Error(precondition) unless rho is a density matrix within the
/// given tolerances.
void require_density_matrix(const Matrix& rho, const char* what, double tol = 1e-10);

/// 1/2 sum of singular values of rho1 - rho2.
double trace_distance(const Matrix& rho1, const Matrix& rho2);

/// Free evolution under a (piecewise-constant) Hamiltonian, optionally
/// restricted to a subset of its terms. Eigendecompositions are cached per
/// distinct set of term scales and unitaries per (scales, duration), so a
/// Propagator must not be shared between threads.
class Propagator {
 public:
  explicit Propagator(const HamiltonianSpec& h, std::vector<bool> mask = {},
                      double tolerance = kDefaultValidationTolerance);

  Matrix unitary(double t0, double t1) const;
  Matrix propagate(double t0, double t1, const Matrix& rho) const;

 private:
  struct Eigensystem {
    Matrix vectors;
    RealVector values;
  };
  const Eigensystem& eigensystem(const std::vector<double>& scales) const;

  const HamiltonianSpec* h_;
  std::vector<bool> mask_;
  double tolerance_;
  mutable std::map<std::vector<double>, Eigensystem> eigen_cache_;
  mutable std::map<std::pair<std::vector<double>, double>, Matrix> unitary_cache_;
};

/// rho -> U rho U^dagger over [t0, t1].
Matrix propagate(const HamiltonianSpec& h, double t0, double t1, const Matrix& rho);

/// B rho_L B^dagger with B the codespace basis (system only).
Matrix encode_logical_state(const StabilizerCode& code, const Matrix& logical_rho);
Matrix encode_logical_vector(const StabilizerCode& code, const Vector& logical_psi);

/// Largest |Pi rho Pi - rho| with Pi the codespace projector (x) 1_B.
double codespace_residual(const StabilizerCode& code, const Matrix& joint_rho,
                          std::size_t bath_dim);

struct ProtocolResult {
  Matrix final_joint;
  Matrix reduced;
  Matrix ideal_reduced;
  double distance = 0.0;
  std::vector<double> cycle_distances;  // D after each measurement
  double tau = 0.0;
  std::uint64_t M = 0;
  double epsilon = 0.0;
  Protocol variant = Protocol::group;
  double J0 = 0.0;
  double J1 = 0.0;
  /// Worst state diagnostics seen after any cycle.
  StateDiagnostics worst;
};

/// Runs (P_eps U(tau/M))^M from rho0 and compares the reduced state with
/// the ideal evolution under H_1 alone.
ProtocolResult run_protocol(const StabilizerCode& code, const HamiltonianSpec& h,
                            const Matrix& rho0, double tau, std::uint64_t M, double epsilon,
                            Protocol variant, double tolerance = kDefaultValidationTolerance);

/// Tr_B of rho0 evolved under H_1 for time tau.
Matrix ideal_reduced_state(const StabilizerCode& code, const HamiltonianSpec& h,
                           const Matrix& rho0, double tau);

}  // namespace zeno
