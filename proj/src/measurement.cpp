#include "zeno/measurement.hpp"

#include <cmath>
#include <limits>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

void require_strength(double epsilon) {
  if (std::isnan(epsilon) || epsilon <= 0.0)
    throw Error(ErrorCode::domain,
                "measurement strength must be positive or inf (got " + std::to_string(epsilon) +
                    "); request the identity channel explicitly instead of eps = 0");
}

void require_involution(const PauliOperator& s) {
  if (!s.is_hermitian())
    throw Error(ErrorCode::domain, "measured operator " + s.to_string() + " is not Hermitian");
}

MeasurementStage two_outcome_stage(const PauliOperator& s, double epsilon) {
  const double ap = alpha_plus(epsilon);
  const double am = alpha_minus(epsilon);
  const double a = 0.5 * (ap + am);
  const double b = 0.5 * (ap - am);
  return MeasurementStage{s, {KrausTerm{a, b}, KrausTerm{a, -b}}};
}

Matrix stage_apply(const MeasurementStage& stage, const Matrix& rho) {
  const Matrix s_rho = apply_left(stage.s, rho);
  const Matrix rho_s = apply_right(stage.s, rho);
  const Matrix s_rho_s = apply_right(stage.s, s_rho);
  double w_id = 0.0;
  double w_ss = 0.0;
  Complex w_left{0.0, 0.0};  // coefficient of S rho
  for (const auto& k : stage.kraus) {
    w_id += std::norm(k.c_id);
    w_ss += std::norm(k.c_s);
    w_left += k.c_s * std::conj(k.c_id);
  }
  // K rho K^dagger summed; the S rho and rho S coefficients are conjugate.
  return w_id * rho + w_ss * s_rho_s + w_left * s_rho + std::conj(w_left) * rho_s;
}

}  // namespace

double zeta_of(double epsilon) {
  if (std::isinf(epsilon)) return 0.0;
  return 1.0 / std::cosh(epsilon);
}

double alpha_plus(double epsilon) {
  // (1 + tanh e)/2 = 1 / (1 + e^{-2e})
  return 1.0 / std::sqrt(1.0 + std::exp(-2.0 * epsilon));
}

double alpha_minus(double epsilon) {
  // e^{-e} / sqrt(1 + e^{-2e}) stays representable for large e
  if (epsilon > 0.0) return std::exp(-epsilon) / std::sqrt(1.0 + std::exp(-2.0 * epsilon));
  return 1.0 / std::sqrt(1.0 + std::exp(2.0 * epsilon));
}

const char* variant_name(ChannelVariant v) noexcept {
  switch (v) {
    case ChannelVariant::single: return "single";
    case ChannelVariant::group: return "group";
    case ChannelVariant::generators: return "generators";
    case ChannelVariant::povm3: return "povm3";
  }
  return "unknown";
}

QuantumChannel::QuantumChannel(ChannelVariant variant, double epsilon,
                               std::vector<MeasurementStage> stages)
    : variant_(variant), epsilon_(epsilon), stages_(std::move(stages)) {}

Matrix QuantumChannel::apply(const Matrix& a) const {
  Matrix out = a;
  for (const auto& stage : stages_) out = stage_apply(stage, out);
  return out;
}

std::vector<Matrix> QuantumChannel::dense_kraus(std::size_t bath_dim) const {
  if (stages_.empty()) throw Error(ErrorCode::precondition, "channel has no stages");
  const std::size_t n = stages_.front().s.num_qubits();
  const auto d = static_cast<Eigen::Index>((std::size_t{1} << n) * bath_dim);
  std::size_t count = 1;
  for (const auto& st : stages_) {
    count *= st.kraus.size();
    if (count > 4096) throw Error(ErrorCode::capacity, "too many Kraus operators to list densely");
  }
  std::vector<Matrix> ops{Matrix::Identity(d, d)};
  for (const auto& st : stages_) {
    std::vector<Matrix> next;
    next.reserve(ops.size() * st.kraus.size());
    for (const auto& k : st.kraus) {
      for (const auto& op : ops) next.push_back(k.c_id * op + k.c_s * apply_left(st.s, op));
    }
    ops = std::move(next);
  }
  return ops;
}

double QuantumChannel::trace_preservation_residual(std::size_t bath_dim) const {
  double worst = 0.0;
  for (const auto& st : stages_) {
    const std::size_t n = st.s.num_qubits();
    const auto d = static_cast<Eigen::Index>((std::size_t{1} << n) * bath_dim);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix s = apply_left(st.s, id);
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& k : st.kraus) {
      const Matrix op = k.c_id * id + k.c_s * s;
      sum += op.adjoint() * op;
    }
    worst = std::max(worst, max_abs(sum - id));
  }
  return worst;
}

Matrix QuantumChannel::superoperator(std::size_t bath_dim) const {
  if (stages_.empty()) throw Error(ErrorCode::precondition, "channel has no stages");
  const std::size_t n = stages_.front().s.num_qubits();
  const auto d = static_cast<Eigen::Index>((std::size_t{1} << n) * bath_dim);
  if (d > 64) throw Error(ErrorCode::capacity, "dense superoperator limited to dimension 64");
  Matrix sup(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      unit(i, j) = 1.0;
      const Matrix img = apply(unit);
      unit(i, j) = 0.0;
      sup.col(j * d + i) = Eigen::Map<const Vector>(img.data(), d * d);
    }
  return sup;
}

QuantumChannel weak_measure_single(const PauliOperator& s, double epsilon) {
  require_strength(epsilon);
  require_involution(s);
  return QuantumChannel(ChannelVariant::single, epsilon, {two_outcome_stage(s, epsilon)});
}

QuantumChannel weak_measure_group(const StabilizerCode& code, double epsilon) {
  require_strength(epsilon);
  if (code.num_generators() > kMaxProjectorGenerators)
    throw Error(ErrorCode::capacity, "group measurement limited to " +
                                         std::to_string(kMaxProjectorGenerators) + " generators");
  std::vector<MeasurementStage> stages;
  for (std::size_t b = 1; b < code.group_size(); ++b)
    stages.push_back(two_outcome_stage(code.element(static_cast<GroupLabel>(b)), epsilon));
  return QuantumChannel(ChannelVariant::group, epsilon, std::move(stages));
}

QuantumChannel weak_measure_generators(const StabilizerCode& code, double epsilon) {
  require_strength(epsilon);
  std::vector<MeasurementStage> stages;
  for (const auto& g : code.generators()) stages.push_back(two_outcome_stage(g, epsilon));
  return QuantumChannel(ChannelVariant::generators, epsilon, std::move(stages));
}

QuantumChannel three_term_povm(const PauliOperator& s, double epsilon) {
  require_strength(epsilon);
  require_involution(s);
  const double zeta = zeta_of(epsilon);
  const double c = 0.5 * std::sqrt(1.0 - zeta);
  MeasurementStage stage{s, {KrausTerm{c, c}, KrausTerm{c, -c}, KrausTerm{std::sqrt(zeta), 0.0}}};
  return QuantumChannel(ChannelVariant::povm3, epsilon, {std::move(stage)});
}

double damping_factor(const StabilizerCode& code, ChannelVariant variant, GroupLabel g,
                      double epsilon) {
  if (g == 0) return 1.0;
  const double zeta = zeta_of(epsilon);
  switch (variant) {
    case ChannelVariant::group: return std::pow(zeta, code.q());
    case ChannelVariant::generators:
      return std::pow(zeta, static_cast<double>(__builtin_popcount(g)));
    default:
      throw Error(ErrorCode::precondition, "damping factor defined for group and generator channels");
  }
}

}  // namespace zeno
