#include "oracles.hpp"

#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace oracle {

namespace {

Matrix single(char c) {
  Matrix m = Matrix::Zero(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("bad Pauli letter ") + c);
  }
  return m;
}

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Matrix pauli_kron(const std::string& letters) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : letters) m = kron2(m, single(c));
  return m;
}

Matrix hamiltonian_kron(const std::vector<std::pair<std::string, Matrix>>& terms) {
  Matrix h;
  for (const auto& [label, bath] : terms) {
    const Matrix t = kron2(pauli_kron(label), bath);
    if (h.size() == 0) h = Matrix::Zero(t.rows(), t.cols());
    h += t;
  }
  return h;
}

Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(Complex(0.0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Matrix trace_out_bath(const Matrix& joint, std::size_t bath_dim) {
  const auto b = static_cast<Eigen::Index>(bath_dim);
  const Eigen::Index s = joint.rows() / b;
  Matrix out = Matrix::Zero(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      for (Eigen::Index k = 0; k < b; ++k) out(i, j) += joint(i * b + k, j * b + k);
  return out;
}

std::uint64_t count_products(const zeno::StabilizerCode& code, unsigned l, bool identity_target) {
  const std::size_t size = code.group_size();
  const auto target = code.element(identity_target ? 0 : static_cast<zeno::GroupLabel>(size - 1));
  std::uint64_t count = 0;
  std::function<void(unsigned, const zeno::PauliOperator&)> walk =
      [&](unsigned depth, const zeno::PauliOperator& acc) {
        if (depth == l) {
          if (acc.same_letters(target)) ++count;
          return;
        }
        for (std::size_t s = 1; s < size; ++s)
          walk(depth + 1, acc * code.element(static_cast<zeno::GroupLabel>(s)));
      };
  walk(0, zeno::PauliOperator::identity(code.n()));
  return count;
}

std::vector<Matrix> syndrome_projectors(const std::vector<std::string>& generators,
                                        std::size_t bath_dim) {
  const std::size_t r = generators.size();
  const Matrix id_bath = Matrix::Identity(static_cast<Eigen::Index>(bath_dim),
                                          static_cast<Eigen::Index>(bath_dim));
  std::vector<Matrix> out;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << r); ++pattern) {
    Matrix p;
    for (std::size_t j = 0; j < r; ++j) {
      const Matrix s = pauli_kron(generators[j]);
      const double sign = (pattern >> j) & 1 ? -1.0 : 1.0;
      const Matrix f = 0.5 * (Matrix::Identity(s.rows(), s.cols()) + sign * s);
      p = p.size() == 0 ? f : Matrix(p * f);
    }
    out.push_back(kron2(p, id_bath));
  }
  return out;
}

double projective_protocol_distance(const std::vector<std::string>& generators,
                                    std::size_t bath_dim, const Matrix& h, const Matrix& h_ideal,
                                    const Matrix& rho0, double tau, std::uint64_t M) {
  const auto projectors = syndrome_projectors(generators, bath_dim);
  const Matrix u = expm_hermitian(h, tau / static_cast<double>(M));
  Matrix rho = rho0;
  for (std::uint64_t m = 0; m < M; ++m) {
    const Matrix evolved = u * rho * u.adjoint();
    rho = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& p : projectors) rho += p * evolved * p;
  }
  const Matrix ui = expm_hermitian(h_ideal, tau);
  const Matrix ideal = ui * rho0 * ui.adjoint();
  return trace_distance(trace_out_bath(rho, bath_dim), trace_out_bath(ideal, bath_dim));
}

Matrix bitflip_codewords() {
  Matrix b = Matrix::Zero(8, 2);
  b(0, 0) = 1.0;
  b(7, 1) = 1.0;
  return b;
}

Matrix logical_frame_state(const Matrix& rho_logical, const Matrix& h_logical, double t) {
  const Matrix u = expm_hermitian(h_logical, t);
  const Matrix b = bitflip_codewords();
  return b * (u * rho_logical * u.adjoint()) * b.adjoint();
}

}  // namespace oracle
