#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "zeno/linalg.hpp"
#include "zeno/pauli.hpp"

namespace zeno {

/// Largest generator count for which the full group is enumerated.
inline constexpr std::size_t kMaxEnumeratedGenerators = 16;
/// Largest generator count for dense projector application.
inline constexpr std::size_t kMaxProjectorGenerators = 10;

inline constexpr double kDefaultValidationTolerance = 1e-10;

/// Group elements are addressed by their label b in {0,1}^Qbar packed into an
/// integer: bit j of the label is the exponent of generator j in B(b).
using GroupLabel = std::uint32_t;

/// sigma_g(S) for labels: parity of the shared generators.
inline int sigma_labels(GroupLabel g, GroupLabel s) noexcept {
  return static_cast<int>(__builtin_popcount(g & s) & 1U);
}

class StabilizerCode {
 public:
  /// Validates the generators (Hermitian, pairwise commuting, independent,
  /// -1 not generated) and enumerates the group. Generators may carry phase
  /// +1 or -1; imaginary phases are rejected.
  static StabilizerCode build(std::vector<PauliOperator> generators);
  static StabilizerCode build(const std::vector<std::string>& labels);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return n_ - generators_.size(); }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  /// Q = |S| - 1.
  std::uint64_t Q() const noexcept { return group_.size() - 1; }
  /// q = |S| / 2.
  double q() const noexcept { return static_cast<double>(group_.size()) / 2.0; }
  std::size_t group_size() const noexcept { return group_.size(); }

  const std::vector<PauliOperator>& generators() const noexcept { return generators_; }
  const std::vector<PauliOperator>& group() const noexcept { return group_; }
  /// B(b).
  const PauliOperator& element(GroupLabel label) const;

  /// B^{-1}(S). Throws Error(membership) when S (with its phase) is not in
  /// the group.
  GroupLabel label_of(const PauliOperator& s) const;
  /// Label of the element with the same letters as `p`, ignoring phase.
  std::optional<GroupLabel> find_letters(const PauliOperator& p) const;

  /// sigma_g(S); both arguments must be group elements.
  int sigma(const PauliOperator& g, const PauliOperator& s) const;

  /// The sector g of a Pauli operator P: P lies in W_g where bit j of the
  /// label is set iff P anticommutes with generator j.
  GroupLabel syndrome_of(const PauliOperator& p) const;

  /// True iff p commutes with every generator and is not +-i^k times a
  /// stabilizer element, i.e. a nontrivial logical operator.
  bool is_nontrivial_logical(const PauliOperator& p) const;

  /// Dense projector prod_j (1 + (-1)^{b_j} S_j)/2 onto V_g (system only).
  Matrix syndrome_projector(GroupLabel g) const;
  Matrix codespace_projector() const { return syndrome_projector(0); }

  /// Orthonormal 2^n x 2^k codespace basis obtained by Gram-Schmidt on the
  /// projected computational basis vectors, taken in index order.
  Matrix codespace_basis() const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliOperator> generators_;
  std::vector<PauliOperator> group_;
  std::unordered_map<std::string, GroupLabel> by_letters_;
};

/// P_g(A) = (1/|S|) sum_S (-1)^{sigma_g(S)} S A S for A on H_S (x) H_B.
Matrix apply_isotypical_projector(const StabilizerCode& code, GroupLabel g, const Matrix& a);

struct IsotypicalDimensions {
  std::vector<std::size_t> a;  // state-space sector dimensions, by label
  std::vector<std::size_t> b;  // operator-space sector dimensions, by label
  std::size_t expected_a = 0;  // 2^k dim(H_B)
  std::size_t expected_b = 0;  // 2^{2k+Qbar} dim(H_B)^2
  bool consistent = false;
};

/// Computes a_g from the rank of each V_g projector and b_g from the trace of
/// the idempotent superoperator P_g (both numerically).
IsotypicalDimensions verify_isotypical_dimensions(const StabilizerCode& code,
                                                  std::size_t bath_dim);

// --- Hamiltonians ---------------------------------------------------------

/// One piece of a piecewise-constant profile: scale on [t0, t1).
struct ProfileSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  double scale = 1.0;
};

/// system (x) bath, multiplied by the profile scale at time t. An empty
/// profile means the term is always on with scale 1; otherwise it is off
/// outside the listed intervals.
struct HamiltonianTerm {
  PauliOperator system;
  Matrix bath;
  std::vector<ProfileSegment> profile;

  double scale_at(double t) const;
};

/// A time interval on which every term has a constant scale.
struct TimeSlice {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<double> scales;  // one per term
};

class HamiltonianSpec {
 public:
  HamiltonianSpec() = default;
  /// Throws Error(model) for non-Hermitian pieces or inconsistent shapes.
  HamiltonianSpec(std::size_t n, std::size_t bath_dim, std::vector<HamiltonianTerm> terms,
                  double tolerance = kDefaultValidationTolerance);

  std::size_t n() const noexcept { return n_; }
  std::size_t bath_dim() const noexcept { return bath_dim_; }
  std::size_t dim() const noexcept { return (std::size_t{1} << n_) * bath_dim_; }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }

  /// Slices of [t0, t1] split at every profile breakpoint.
  std::vector<TimeSlice> slices(double t0, double t1) const;

  /// Dense sum of the selected terms with the given scales. `mask` selects
  /// terms (empty = all).
  Matrix matrix(const std::vector<double>& scales, const std::vector<bool>& mask = {}) const;
  Matrix matrix_at(double t, const std::vector<bool>& mask = {}) const;

 private:
  std::size_t n_ = 0;
  std::size_t bath_dim_ = 1;
  std::vector<HamiltonianTerm> terms_;
};

struct HamiltonianDecomposition {
  /// Sector label of each term.
  std::vector<GroupLabel> term_sector;
  /// Terms with sector 0 (H_1) and the rest (H_SB).
  std::vector<bool> identity_mask;
  std::vector<bool> coupling_mask;
  double J0 = 0.0;  // 2 max ||H_1||
  double J1 = 0.0;  // 2 max ||H_SB||
  double Jm() const noexcept { return J0 > J1 ? J0 : J1; }
};

/// Splits H into H_1 and H_SB over [0, tau] and checks the hypotheses of
/// the distance bound. Throws Error(assumption_violation) when H_1 fails to
/// commute with the stabilizers or when a term is undetectable (a
/// nontrivial logical operator coupled to a bath operator that is not a
/// multiple of the identity).
HamiltonianDecomposition decompose_hamiltonian(const StabilizerCode& code,
                                               const HamiltonianSpec& h, double tau,
                                               double tolerance = kDefaultValidationTolerance);

/// Dense H_g = P_g(H) at time t, indexed by label (Qbar <= 10).
std::vector<Matrix> hamiltonian_components(const StabilizerCode& code, const HamiltonianSpec& h,
                                           double t);

}  // namespace zeno
