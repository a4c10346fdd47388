#include "zeno/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

// Rank over GF(2) of the symplectic rows.
std::size_t gf2_rank(std::vector<std::vector<std::uint8_t>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t j = c; j < cols; ++j) rows[r][j] ^= rows[rank][j];
    ++rank;
  }
  return rank;
}

void require_projector_capacity(const StabilizerCode& code) {
  if (code.num_generators() > kMaxProjectorGenerators)
    throw Error(ErrorCode::capacity, "dense projectors limited to " +
                                         std::to_string(kMaxProjectorGenerators) +
                                         " generators");
  if (code.n() > kMaxDenseQubits)
    throw Error(ErrorCode::capacity, "dense projectors limited to " +
                                         std::to_string(kMaxDenseQubits) + " qubits");
}

bool proportional_to_identity(const Matrix& b, double tol) {
  if (b.rows() == 0) return true;
  const Complex c = b.trace() / static_cast<double>(b.rows());
  Matrix diff = b;
  diff.diagonal().array() -= c;
  return max_abs(diff) <= tol;
}

}  // namespace

StabilizerCode StabilizerCode::build(const std::vector<std::string>& labels) {
  std::vector<PauliOperator> gens;
  gens.reserve(labels.size());
  for (const auto& l : labels) gens.push_back(PauliOperator::parse(l));
  return build(std::move(gens));
}

StabilizerCode StabilizerCode::build(std::vector<PauliOperator> generators) {
  if (generators.empty())
    throw Error(ErrorCode::invalid_code, "a stabilizer code needs at least one generator");
  const std::size_t n = generators.front().num_qubits();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.num_qubits() != n)
      throw Error(ErrorCode::dimension, "generator " + std::to_string(i) + " (" + g.to_string() +
                                            ") has " + std::to_string(g.num_qubits()) +
                                            " qubits, expected " + std::to_string(n));
    if (!g.is_hermitian())
      throw Error(ErrorCode::phase, "generator " + g.to_string() + " is not Hermitian");
    if (g.is_identity_up_to_phase())
      throw Error(ErrorCode::invalid_code, "generator " + std::to_string(i) + " is " +
                                               (g.phase() == Phase::plus_one ? "the identity"
                                                                             : "-identity"));
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (!commutes(generators[i], generators[j]))
        throw Error(ErrorCode::invalid_code, "generators " + generators[i].to_string() + " and " +
                                                 generators[j].to_string() + " anticommute");

  if (generators.size() > n)
    throw Error(ErrorCode::rank, std::to_string(generators.size()) +
                                     " generators cannot be independent on " +
                                     std::to_string(n) + " qubits");
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& g : generators) rows.push_back(g.symplectic_row());
  const std::size_t rank = gf2_rank(rows);
  if (rank < generators.size())
    throw Error(ErrorCode::rank, "generators are dependent (GF(2) rank " + std::to_string(rank) +
                                     " < " + std::to_string(generators.size()) + ")");
  if (generators.size() > kMaxEnumeratedGenerators)
    throw Error(ErrorCode::capacity, "group enumeration limited to " +
                                         std::to_string(kMaxEnumeratedGenerators) +
                                         " generators");

  StabilizerCode code;
  code.n_ = n;
  code.generators_ = std::move(generators);
  const std::size_t size = std::size_t{1} << code.generators_.size();
  code.group_.reserve(size);
  code.group_.push_back(PauliOperator::identity(n));
  // B(b) for increasing b: b = b' + 2^j with j the top bit of b.
  for (std::size_t b = 1; b < size; ++b) {
    std::size_t top = 0;
    while ((b >> (top + 1)) != 0) ++top;
    const std::size_t rest = b & ~(std::size_t{1} << top);
    code.group_.push_back(multiply(code.group_[rest], code.generators_[top]));
  }
  for (std::size_t b = 0; b < size; ++b) {
    const auto& s = code.group_[b];
    if (b != 0 && s.is_identity_up_to_phase())
      throw Error(ErrorCode::phase, "the generators produce " + s.to_string() +
                                        ", so -1 lies in the group");
    code.by_letters_.emplace(s.letters(), static_cast<GroupLabel>(b));
  }
  return code;
}

const PauliOperator& StabilizerCode::element(GroupLabel label) const {
  if (label >= group_.size())
    throw Error(ErrorCode::membership, "group label " + std::to_string(label) + " out of range");
  return group_[label];
}

std::optional<GroupLabel> StabilizerCode::find_letters(const PauliOperator& p) const {
  if (p.num_qubits() != n_) return std::nullopt;
  auto it = by_letters_.find(p.letters());
  if (it == by_letters_.end()) return std::nullopt;
  return it->second;
}

GroupLabel StabilizerCode::label_of(const PauliOperator& s) const {
  auto label = find_letters(s);
  if (!label || group_[*label].phase() != s.phase())
    throw Error(ErrorCode::membership, s.to_string() + " is not an element of the stabilizer group");
  return *label;
}

int StabilizerCode::sigma(const PauliOperator& g, const PauliOperator& s) const {
  return sigma_labels(label_of(g), label_of(s));
}

GroupLabel StabilizerCode::syndrome_of(const PauliOperator& p) const {
  if (p.num_qubits() != n_)
    throw Error(ErrorCode::dimension, "operator " + p.to_string() + " acts on " +
                                          std::to_string(p.num_qubits()) + " qubits, code on " +
                                          std::to_string(n_));
  GroupLabel label = 0;
  for (std::size_t j = 0; j < generators_.size(); ++j)
    if (!commutes(p, generators_[j])) label |= GroupLabel{1} << j;
  return label;
}

bool StabilizerCode::is_nontrivial_logical(const PauliOperator& p) const {
  return syndrome_of(p) == 0 && !find_letters(p).has_value();
}

Matrix StabilizerCode::syndrome_projector(GroupLabel g) const {
  require_projector_capacity(*this);
  if (g >= group_.size())
    throw Error(ErrorCode::membership, "sector label " + std::to_string(g) + " out of range");
  const Eigen::Index dim = Eigen::Index{1} << n_;
  Matrix proj = Matrix::Identity(dim, dim);
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    const double sign = ((g >> j) & 1U) ? -1.0 : 1.0;
    proj = 0.5 * (proj + sign * apply_left(generators_[j], proj));
  }
  return proj;
}

Matrix StabilizerCode::codespace_basis() const {
  const Matrix proj = codespace_projector();
  const Eigen::Index dim = proj.rows();
  const Eigen::Index kdim = Eigen::Index{1} << k();
  Matrix basis(dim, kdim);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < dim && found < kdim; ++i) {
    Vector v = proj.col(i);
    for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    const double norm = v.norm();
    if (norm > 1e-8) basis.col(found++) = v / norm;
  }
  if (found != kdim)
    throw Error(ErrorCode::invalid_code, "codespace basis has dimension " + std::to_string(found) +
                                             ", expected " + std::to_string(kdim));
  return basis;
}

Matrix apply_isotypical_projector(const StabilizerCode& code, GroupLabel g, const Matrix& a) {
  require_projector_capacity(code);
  if (g >= code.group_size())
    throw Error(ErrorCode::membership, "sector label " + std::to_string(g) + " out of range");
  Matrix acc = Matrix::Zero(a.rows(), a.cols());
  for (std::size_t s = 0; s < code.group_size(); ++s) {
    const Matrix term = conjugate(code.element(static_cast<GroupLabel>(s)), a);
    if (sigma_labels(g, static_cast<GroupLabel>(s)))
      acc -= term;
    else
      acc += term;
  }
  return acc / static_cast<double>(code.group_size());
}

IsotypicalDimensions verify_isotypical_dimensions(const StabilizerCode& code,
                                                  std::size_t bath_dim) {
  require_projector_capacity(code);
  const std::size_t sys = std::size_t{1} << code.n();
  const std::size_t dim = sys * bath_dim;
  if (bath_dim == 0) throw Error(ErrorCode::dimension, "bath dimension must be positive");
  if (dim > 32)
    throw Error(ErrorCode::capacity, "operator-space dimension check limited to joint dimension 32");
  IsotypicalDimensions out;
  out.expected_a = (std::size_t{1} << code.k()) * bath_dim;
  out.expected_b = (std::size_t{1} << (2 * code.k() + code.num_generators())) * bath_dim * bath_dim;
  const Matrix bath_id = Matrix::Identity(static_cast<Eigen::Index>(bath_dim),
                                          static_cast<Eigen::Index>(bath_dim));
  const auto d = static_cast<Eigen::Index>(dim);
  out.consistent = true;
  for (std::size_t g = 0; g < code.group_size(); ++g) {
    const Matrix proj = kron(code.syndrome_projector(static_cast<GroupLabel>(g)), bath_id);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(proj, Eigen::EigenvaluesOnly);
    const auto a = static_cast<std::size_t>((eig.eigenvalues().array() > 0.5).count());

    // Trace of the idempotent superoperator over the matrix-unit basis.
    double trace = 0.0;
    Matrix unit = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        unit(i, j) = 1.0;
        trace += apply_isotypical_projector(code, static_cast<GroupLabel>(g), unit)(i, j).real();
        unit(i, j) = 0.0;
      }
    const auto b = static_cast<std::size_t>(std::llround(trace));
    out.a.push_back(a);
    out.b.push_back(b);
    if (a != out.expected_a || b != out.expected_b) out.consistent = false;
  }
  return out;
}

double HamiltonianTerm::scale_at(double t) const {
  if (profile.empty()) return 1.0;
  for (const auto& seg : profile)
    if (t >= seg.t0 && t < seg.t1) return seg.scale;
  return 0.0;
}

HamiltonianSpec::HamiltonianSpec(std::size_t n, std::size_t bath_dim,
                                 std::vector<HamiltonianTerm> terms, double tolerance)
    : n_(n), bath_dim_(bath_dim), terms_(std::move(terms)) {
  if (n == 0) throw Error(ErrorCode::model, "Hamiltonian needs at least one system qubit");
  if (bath_dim == 0) throw Error(ErrorCode::model, "bath dimension must be positive");
  if (n > kMaxDenseQubits || dim() > kMaxJointDim)
    throw Error(ErrorCode::capacity, "joint dimension " + std::to_string(dim()) +
                                         " exceeds the dense limit " +
                                         std::to_string(kMaxJointDim));
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& term = terms_[i];
    const std::string name = "term " + std::to_string(i) + " (" + term.system.to_string() + ")";
    if (term.system.num_qubits() != n)
      throw Error(ErrorCode::model, name + " acts on " + std::to_string(term.system.num_qubits()) +
                                        " qubits, expected " + std::to_string(n));
    if (!term.system.is_hermitian())
      throw Error(ErrorCode::model, name + " has a non-Hermitian system factor");
    if (term.bath.rows() != static_cast<Eigen::Index>(bath_dim) ||
        term.bath.cols() != static_cast<Eigen::Index>(bath_dim))
      throw Error(ErrorCode::model, name + " bath operator is " + std::to_string(term.bath.rows()) +
                                        "x" + std::to_string(term.bath.cols()) + ", expected " +
                                        std::to_string(bath_dim) + "x" + std::to_string(bath_dim));
    const double herm = hermiticity_residual(term.bath);
    if (herm > tolerance)
      throw Error(ErrorCode::model,
                  name + " bath operator is not Hermitian (residual " + std::to_string(herm) + ")");
    for (const auto& seg : term.profile) {
      if (!(seg.t1 > seg.t0) || !std::isfinite(seg.scale) || !std::isfinite(seg.t0) ||
          !std::isfinite(seg.t1))
        throw Error(ErrorCode::model, name + " has an invalid profile segment");
    }
  }
}

std::vector<TimeSlice> HamiltonianSpec::slices(double t0, double t1) const {
  if (t1 < t0) throw Error(ErrorCode::domain, "time interval is reversed");
  std::set<double> cuts{t0, t1};
  for (const auto& term : terms_)
    for (const auto& seg : term.profile) {
      if (seg.t0 > t0 && seg.t0 < t1) cuts.insert(seg.t0);
      if (seg.t1 > t0 && seg.t1 < t1) cuts.insert(seg.t1);
    }
  std::vector<TimeSlice> out;
  if (t1 == t0) return out;
  auto it = cuts.begin();
  double prev = *it++;
  for (; it != cuts.end(); ++it) {
    TimeSlice slice;
    slice.t0 = prev;
    slice.t1 = *it;
    for (const auto& term : terms_) slice.scales.push_back(term.scale_at(slice.t0));
    out.push_back(std::move(slice));
    prev = *it;
  }
  return out;
}

Matrix HamiltonianSpec::matrix(const std::vector<double>& scales,
                               const std::vector<bool>& mask) const {
  const auto d = static_cast<Eigen::Index>(dim());
  Matrix h = Matrix::Zero(d, d);
  const Matrix sys_id = Matrix::Identity(Eigen::Index{1} << n_, Eigen::Index{1} << n_);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    const double s = scales.empty() ? 1.0 : scales[i];
    if (s == 0.0) continue;
    h += s * apply_left(terms_[i].system, kron(sys_id, terms_[i].bath));
  }
  return h;
}

Matrix HamiltonianSpec::matrix_at(double t, const std::vector<bool>& mask) const {
  std::vector<double> scales;
  for (const auto& term : terms_) scales.push_back(term.scale_at(t));
  return matrix(scales, mask);
}

HamiltonianDecomposition decompose_hamiltonian(const StabilizerCode& code,
                                               const HamiltonianSpec& h, double tau,
                                               double tolerance) {
  if (h.n() != code.n())
    throw Error(ErrorCode::dimension, "Hamiltonian acts on " + std::to_string(h.n()) +
                                          " qubits, code on " + std::to_string(code.n()));
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw Error(ErrorCode::domain, "total time must be finite and nonnegative");
  HamiltonianDecomposition out;
  const auto& terms = h.terms();
  for (const auto& term : terms) {
    const GroupLabel sector = code.syndrome_of(term.system);
    out.term_sector.push_back(sector);
    out.identity_mask.push_back(sector == 0);
    out.coupling_mask.push_back(sector != 0);
    if (sector == 0 && code.is_nontrivial_logical(term.system) &&
        !proportional_to_identity(term.bath, tolerance))
      throw Error(ErrorCode::assumption_violation,
                  "undetectable term " + term.system.to_string() +
                      ": a logical operator couples to the bath, and no stabilizer element "
                      "anticommutes with it");
  }

  auto slices = h.slices(0.0, tau);
  if (slices.empty()) {
    TimeSlice at_zero;
    for (const auto& term : terms) at_zero.scales.push_back(term.scale_at(0.0));
    slices.push_back(std::move(at_zero));
  }
  for (const auto& slice : slices) {
    const Matrix h1 = h.matrix(slice.scales, out.identity_mask);
    const Matrix hsb = h.matrix(slice.scales, out.coupling_mask);
    for (const auto& gen : code.generators()) {
      const double residual = max_abs(apply_left(gen, h1) - apply_right(gen, h1));
      if (residual > tolerance)
        throw Error(ErrorCode::assumption_violation,
                    "H_1 does not commute with " + gen.to_string() + " (residual " +
                        std::to_string(residual) + ")");
    }
    out.J0 = std::max(out.J0, 2.0 * operator_norm(h1));
    out.J1 = std::max(out.J1, 2.0 * operator_norm(hsb));
  }
  return out;
}

std::vector<Matrix> hamiltonian_components(const StabilizerCode& code, const HamiltonianSpec& h,
                                           double t) {
  const Matrix full = h.matrix_at(t);
  std::vector<Matrix> out;
  out.reserve(code.group_size());
  for (std::size_t g = 0; g < code.group_size(); ++g)
    out.push_back(apply_isotypical_projector(code, static_cast<GroupLabel>(g), full));
  return out;
}

}  // namespace zeno
