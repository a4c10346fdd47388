#pragma once

#include <limits>
#include <string>
#include <vector>

#include "zeno/linalg.hpp"
#include "zeno/pauli.hpp"
#include "zeno/stabilizer.hpp"

namespace zeno {

/// sech(eps), with sech(inf) = 0.
double zeta_of(double epsilon);

/// alpha_+(eps), alpha_-(eps) = sqrt((1 +- tanh eps)/2), evaluated without
/// cancellation for large eps.
double alpha_plus(double epsilon);
double alpha_minus(double epsilon);

/// Kraus operator c_id * 1 + c_s * S.
struct KrausTerm {
  Complex c_id;
  Complex c_s;
};

/// rho -> sum_K K rho K^dagger with every K a combination of 1 and one
/// Hermitian involution S (acting as S (x) 1_B).
struct MeasurementStage {
  PauliOperator s;
  std::vector<KrausTerm> kraus;
};

enum class ChannelVariant { single, group, generators, povm3 };

const char* variant_name(ChannelVariant v) noexcept;

/// A measurement channel stored as a sequence of commuting stages applied
/// left to right. Immutable once built.
class QuantumChannel {
 public:
  QuantumChannel(ChannelVariant variant, double epsilon, std::vector<MeasurementStage> stages);

  ChannelVariant variant() const noexcept { return variant_; }
  double epsilon() const noexcept { return epsilon_; }
  bool projective() const noexcept { return epsilon_ == std::numeric_limits<double>::infinity(); }
  const std::vector<MeasurementStage>& stages() const noexcept { return stages_; }

  /// Applies the channel to an operator on H_S (x) H_B.
  Matrix apply(const Matrix& a) const;

  /// All Kraus operators of the composed channel as dense matrices of
  /// dimension 2^n * bath_dim (one per choice of term in every stage).
  std::vector<Matrix> dense_kraus(std::size_t bath_dim) const;

  /// ||sum_K K^dagger K - 1||_max over every stage.
  double trace_preservation_residual(std::size_t bath_dim) const;

  /// Column-stacked superoperator matrix (dimension d^2 x d^2).
  Matrix superoperator(std::size_t bath_dim) const;

 private:
  ChannelVariant variant_;
  double epsilon_;
  std::vector<MeasurementStage> stages_;
};

/// P_{S,eps}: Kraus operators P_S(+-eps) = alpha_+- P_S + alpha_-+ P_{-S}.
/// Throws Error(domain) for eps <= 0 or NaN; eps = inf gives projectors.
QuantumChannel weak_measure_single(const PauliOperator& s, double epsilon);

/// Product of P_{S,eps} over every non-identity group element (the identity
/// element acts trivially).
QuantumChannel weak_measure_group(const StabilizerCode& code, double epsilon);

/// Product of P_{S,eps} over the generators.
QuantumChannel weak_measure_generators(const StabilizerCode& code, double epsilon);

/// M_{1,2} = sqrt(1 - zeta)/2 (1 +- S), M_3 = sqrt(zeta) 1.
QuantumChannel three_term_povm(const PauliOperator& s, double epsilon);

/// Damping factor the channel applies to a sector-g operator:
/// zeta^{q} for the group channel and zeta^{#generators anticommuting} for
/// the generator channel (1 for g = 0).
double damping_factor(const StabilizerCode& code, ChannelVariant variant, GroupLabel g,
                      double epsilon);

}  // namespace zeno
