#include "zeno/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "zeno/errors.hpp"
#include "zeno/log.hpp"

namespace zeno {

const char* protocol_name(Protocol p) noexcept {
  return p == Protocol::group ? "group" : "generators";
}

StateDiagnostics diagnose_state(const Matrix& rho) {
  StateDiagnostics d;
  d.hermiticity = hermiticity_residual(rho);
  d.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  d.min_eigenvalue = min_eigenvalue(rho);
  return d;
}

void require_density_matrix(const Matrix& rho, const char* what, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw Error(ErrorCode::dimension, std::string(what) + " is not a square matrix");
  const auto d = diagnose_state(rho);
  if (!d.valid(tol, tol, tol)) {
    std::ostringstream os;
    os << what << " is not a density matrix (hermiticity " << d.hermiticity << ", trace error "
       << d.trace_error << ", min eigenvalue " << d.min_eigenvalue << ")";
    throw Error(ErrorCode::precondition, os.str());
  }
}

double trace_distance(const Matrix& rho1, const Matrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
    throw Error(ErrorCode::dimension, "trace distance of matrices with different shapes");
  return 0.5 * trace_norm(rho1 - rho2);
}

Propagator::Propagator(const HamiltonianSpec& h, std::vector<bool> mask, double tolerance)
    : h_(&h), mask_(std::move(mask)), tolerance_(tolerance) {}

const Propagator::Eigensystem& Propagator::eigensystem(const std::vector<double>& scales) const {
  auto it = eigen_cache_.find(scales);
  if (it != eigen_cache_.end()) return it->second;
  const Matrix hm = h_->matrix(scales, mask_);
  const double herm = hermiticity_residual(hm);
  if (herm > tolerance_)
    throw Error(ErrorCode::model, "Hamiltonian is not Hermitian (residual " +
                                      std::to_string(herm) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (hm + hm.adjoint()));
  return eigen_cache_.emplace(scales, Eigensystem{eig.eigenvectors(), eig.eigenvalues()})
      .first->second;
}

Matrix Propagator::unitary(double t0, double t1) const {
  if (!(t1 >= t0)) throw Error(ErrorCode::domain, "propagation interval is reversed");
  const auto d = static_cast<Eigen::Index>(h_->dim());
  Matrix u = Matrix::Identity(d, d);
  for (const auto& slice : h_->slices(t0, t1)) {
    const double dt = slice.t1 - slice.t0;
    auto key = std::make_pair(slice.scales, dt);
    auto it = unitary_cache_.find(key);
    if (it == unitary_cache_.end()) {
      const auto& es = eigensystem(slice.scales);
      const Vector phases =
          (es.values.cast<Complex>() * Complex(0.0, -dt)).array().exp().matrix();
      Matrix step = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
      it = unitary_cache_.emplace(std::move(key), std::move(step)).first;
    }
    u = it->second * u;
  }
  return u;
}

Matrix Propagator::propagate(double t0, double t1, const Matrix& rho) const {
  if (rho.rows() != static_cast<Eigen::Index>(h_->dim()) || rho.cols() != rho.rows())
    throw Error(ErrorCode::dimension, "state dimension " + std::to_string(rho.rows()) +
                                          " does not match Hamiltonian dimension " +
                                          std::to_string(h_->dim()));
  const Matrix u = unitary(t0, t1);
  return u * rho * u.adjoint();
}

Matrix propagate(const HamiltonianSpec& h, double t0, double t1, const Matrix& rho) {
  return Propagator(h).propagate(t0, t1, rho);
}

Matrix encode_logical_state(const StabilizerCode& code, const Matrix& logical_rho) {
  const Matrix basis = code.codespace_basis();
  if (logical_rho.rows() != basis.cols() || logical_rho.cols() != basis.cols())
    throw Error(ErrorCode::dimension, "logical state must be " + std::to_string(basis.cols()) +
                                          "x" + std::to_string(basis.cols()));
  return basis * logical_rho * basis.adjoint();
}

Matrix encode_logical_vector(const StabilizerCode& code, const Vector& logical_psi) {
  const double norm = logical_psi.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw Error(ErrorCode::precondition,
                "logical state vector is not normalized (norm " + std::to_string(norm) + ")");
  return encode_logical_state(code, logical_psi * logical_psi.adjoint());
}

double codespace_residual(const StabilizerCode& code, const Matrix& joint_rho,
                          std::size_t bath_dim) {
  const Matrix proj = kron(code.codespace_projector(),
                           Matrix::Identity(static_cast<Eigen::Index>(bath_dim),
                                            static_cast<Eigen::Index>(bath_dim)));
  if (proj.rows() != joint_rho.rows())
    throw Error(ErrorCode::dimension, "state dimension does not match code and bath");
  return max_abs(proj * joint_rho * proj - joint_rho);
}

ProtocolResult run_protocol(const StabilizerCode& code, const HamiltonianSpec& h,
                            const Matrix& rho0, double tau, std::uint64_t M, double epsilon,
                            Protocol variant, double tolerance) {
  if (M < 1) throw Error(ErrorCode::domain, "cycle count M must be at least 1");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw Error(ErrorCode::domain, "total time must be finite and nonnegative");
  const auto decomposition = decompose_hamiltonian(code, h, tau, tolerance);
  if (rho0.rows() != static_cast<Eigen::Index>(h.dim()) || rho0.cols() != rho0.rows())
    throw Error(ErrorCode::dimension, "initial state dimension does not match the model");
  require_density_matrix(rho0, "initial state", tolerance);
  const double residual = codespace_residual(code, rho0, h.bath_dim());
  if (residual > tolerance)
    throw Error(ErrorCode::precondition,
                "initial state is not supported on the codespace (residual " +
                    std::to_string(residual) + ")");

  const QuantumChannel channel = variant == Protocol::group
                                     ? weak_measure_group(code, epsilon)
                                     : weak_measure_generators(code, epsilon);
  const Propagator full(h, {}, tolerance);
  const Propagator ideal(h, decomposition.identity_mask, tolerance);

  ProtocolResult out;
  out.tau = tau;
  out.M = M;
  out.epsilon = epsilon;
  out.variant = variant;
  out.J0 = decomposition.J0;
  out.J1 = decomposition.J1;
  out.worst.min_eigenvalue = 1.0;
  out.cycle_distances.reserve(M);

  Matrix rho = rho0;
  Matrix rho_ideal = rho0;
  const double steps = static_cast<double>(M);
  for (std::uint64_t j = 0; j < M; ++j) {
    const double t0 = tau * static_cast<double>(j) / steps;
    const double t1 = tau * static_cast<double>(j + 1) / steps;
    rho = channel.apply(full.propagate(t0, t1, rho));
    rho_ideal = ideal.propagate(t0, t1, rho_ideal);
    const auto diag = diagnose_state(rho);
    out.worst.hermiticity = std::max(out.worst.hermiticity, diag.hermiticity);
    out.worst.trace_error = std::max(out.worst.trace_error, diag.trace_error);
    out.worst.min_eigenvalue = std::min(out.worst.min_eigenvalue, diag.min_eigenvalue);
    out.cycle_distances.push_back(trace_distance(partial_trace_bath(rho, h.bath_dim()),
                                                 partial_trace_bath(rho_ideal, h.bath_dim())));
  }
  out.final_joint = rho;
  out.reduced = partial_trace_bath(rho, h.bath_dim());
  out.ideal_reduced = partial_trace_bath(rho_ideal, h.bath_dim());
  out.distance = out.cycle_distances.back();
  log_debug("protocol " + std::string(protocol_name(variant)) + " M=" + std::to_string(M) +
            " eps=" + std::to_string(epsilon) + " D=" + std::to_string(out.distance));
  return out;
}

Matrix ideal_reduced_state(const StabilizerCode& code, const HamiltonianSpec& h,
                           const Matrix& rho0, double tau) {
  const auto decomposition = decompose_hamiltonian(code, h, tau);
  const Propagator ideal(h, decomposition.identity_mask);
  return partial_trace_bath(ideal.propagate(0.0, tau, rho0), h.bath_dim());
}

}  // namespace zeno
