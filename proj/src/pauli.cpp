#include "zeno/pauli.hpp"

#include <bit>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

Phase phase_from_exponent(int k) { return static_cast<Phase>(((k % 4) + 4) % 4); }

void require_same_size(const PauliOperator& p, const PauliOperator& q, const char* op) {
  if (p.num_qubits() != q.num_qubits())
    throw Error(ErrorCode::dimension, std::string(op) + ": qubit counts differ (" +
                                          std::to_string(p.num_qubits()) + " vs " +
                                          std::to_string(q.num_qubits()) + ")");
}

// Per-basis-state action of P on the system factor: P|c> = coeff(c) |c ^ x>.
struct DenseAction {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex base;  // i^{k + #Y}
  std::size_t sys_dim = 0;
  std::size_t bath_dim = 0;

  Complex coeff(std::uint64_t c) const {
    return (std::popcount(c & z) & 1U) ? -base : base;
  }
};

DenseAction dense_action(const PauliOperator& p, const Matrix& a) {
  const std::size_t n = p.num_qubits();
  if (n > kMaxDenseQubits)
    throw Error(ErrorCode::capacity, "dense Pauli action limited to " +
                                         std::to_string(kMaxDenseQubits) + " qubits");
  const std::size_t sys = std::size_t{1} << n;
  const auto rows = static_cast<std::size_t>(a.rows());
  if (a.rows() != a.cols() || rows == 0 || rows % sys != 0)
    throw Error(ErrorCode::dimension,
                "operator of dimension " + std::to_string(rows) +
                    " does not factor as 2^" + std::to_string(n) + " x bath");
  DenseAction act;
  act.x = p.x_mask();
  act.z = p.z_mask();
  const auto ys = static_cast<int>(std::popcount(act.x & act.z));
  act.base = phase_value(phase_from_exponent(static_cast<int>(p.phase()) + ys));
  act.sys_dim = sys;
  act.bath_dim = rows / sys;
  return act;
}

}  // namespace

Complex phase_value(Phase p) noexcept {
  switch (p) {
    case Phase::plus_one: return {1.0, 0.0};
    case Phase::plus_i: return {0.0, 1.0};
    case Phase::minus_one: return {-1.0, 0.0};
    case Phase::minus_i: return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

PauliOperator::PauliOperator(std::size_t n, Phase phase)
    : n_(n), xs_(word_count(n), 0), zs_(word_count(n), 0), phase_(phase) {}

PauliOperator PauliOperator::identity(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::dimension, "Pauli operator needs at least one qubit");
  return PauliOperator(n, Phase::plus_one);
}

void PauliOperator::set(std::size_t qubit, bool xbit, bool zbit) {
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  auto& xw = xs_[qubit / kWordBits];
  auto& zw = zs_[qubit / kWordBits];
  xw = xbit ? (xw | bit) : (xw & ~bit);
  zw = zbit ? (zw | bit) : (zw & ~bit);
}

bool PauliOperator::x(std::size_t qubit) const {
  if (qubit >= n_) throw Error(ErrorCode::dimension, "qubit index out of range");
  return (xs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1U;
}

bool PauliOperator::z(std::size_t qubit) const {
  if (qubit >= n_) throw Error(ErrorCode::dimension, "qubit index out of range");
  return (zs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1U;
}

char PauliOperator::letter(std::size_t qubit) const {
  const bool xb = x(qubit);
  const bool zb = z(qubit);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

PauliOperator PauliOperator::parse(std::string_view label, Phase phase) {
  if (label.empty()) throw ParseError(0, "empty Pauli label");
  PauliOperator p(label.size(), phase);
  for (std::size_t i = 0; i < label.size(); ++i) {
    switch (label[i]) {
      case 'I': break;
      case 'X': p.set(i, true, false); break;
      case 'Y': p.set(i, true, true); break;
      case 'Z': p.set(i, false, true); break;
      default:
        throw ParseError(i, "invalid Pauli character '" + std::string(1, label[i]) +
                                "' at position " + std::to_string(i));
    }
  }
  return p;
}

PauliOperator PauliOperator::parse(std::string_view text) {
  std::size_t offset = 0;
  int k = 0;
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    offset = 1;
  }
  if (offset < text.size() && text[offset] == '1' && offset == 1) {
    offset += 1;
  } else if (offset < text.size() && text[offset] == 'i') {
    k = 1;
    offset += 1;
  }
  if (negative) k += 2;
  if (offset >= text.size()) throw ParseError(offset, "Pauli label has no letters");
  try {
    return parse(text.substr(offset), phase_from_exponent(k));
  } catch (const ParseError& e) {
    const std::size_t pos = e.position() + offset;
    throw ParseError(pos, "invalid Pauli character '" + std::string(1, text[pos]) +
                              "' at position " + std::to_string(pos));
  }
}

PauliOperator PauliOperator::with_phase(Phase p) const {
  PauliOperator out = *this;
  out.phase_ = p;
  return out;
}

bool PauliOperator::is_identity_up_to_phase() const noexcept {
  for (std::size_t w = 0; w < xs_.size(); ++w)
    if (xs_[w] != 0 || zs_[w] != 0) return false;
  return true;
}

bool PauliOperator::is_identity() const noexcept {
  return phase_ == Phase::plus_one && is_identity_up_to_phase();
}

std::size_t PauliOperator::weight() const noexcept {
  std::size_t w = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i)
    w += static_cast<std::size_t>(std::popcount(xs_[i] | zs_[i]));
  return w;
}

std::string PauliOperator::letters() const {
  std::string s(n_, 'I');
  for (std::size_t i = 0; i < n_; ++i) s[i] = letter(i);
  return s;
}

std::string PauliOperator::to_string() const {
  switch (phase_) {
    case Phase::plus_one: return letters();
    case Phase::plus_i: return "+i" + letters();
    case Phase::minus_one: return "-" + letters();
    case Phase::minus_i: return "-i" + letters();
  }
  return letters();
}

std::uint64_t PauliOperator::x_mask() const {
  if (n_ > 63) throw Error(ErrorCode::capacity, "bit mask needs n <= 63");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n_; ++i)
    if (x(i)) m |= std::uint64_t{1} << (n_ - 1 - i);
  return m;
}

std::uint64_t PauliOperator::z_mask() const {
  if (n_ > 63) throw Error(ErrorCode::capacity, "bit mask needs n <= 63");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < n_; ++i)
    if (z(i)) m |= std::uint64_t{1} << (n_ - 1 - i);
  return m;
}

std::vector<std::uint8_t> PauliOperator::symplectic_row() const {
  std::vector<std::uint8_t> row(2 * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    row[i] = x(i) ? 1 : 0;
    row[n_ + i] = z(i) ? 1 : 0;
  }
  return row;
}

std::size_t PauliOperator::hash() const noexcept {
  std::size_t h = std::hash<std::size_t>{}(n_) ^ (static_cast<std::size_t>(phase_) << 1);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    h ^= std::hash<std::uint64_t>{}(xs_[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(zs_[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
  require_same_size(p, q, "multiply");
  PauliOperator out(p.n_, Phase::plus_one);
  // Letter-by-letter: sigma_a sigma_b = i^{g(a,b)} sigma_{a xor b}.
  int k = static_cast<int>(p.phase_) + static_cast<int>(q.phase_);
  for (std::size_t i = 0; i < p.n_; ++i) {
    const int x1 = p.x(i), z1 = p.z(i), x2 = q.x(i), z2 = q.z(i);
    if (x1 && z1) {
      k += z2 - x2;
    } else if (x1) {
      k += z2 * (2 * x2 - 1);
    } else if (z1) {
      k += x2 * (1 - 2 * z2);
    }
  }
  for (std::size_t w = 0; w < out.xs_.size(); ++w) {
    out.xs_[w] = p.xs_[w] ^ q.xs_[w];
    out.zs_[w] = p.zs_[w] ^ q.zs_[w];
  }
  out.phase_ = phase_from_exponent(k);
  return out;
}

bool commutes(const PauliOperator& p, const PauliOperator& q) {
  require_same_size(p, q, "commutes");
  unsigned parity = 0;
  for (std::size_t i = 0; i < p.num_qubits(); ++i)
    parity ^= static_cast<unsigned>((p.x(i) && q.z(i)) != (p.z(i) && q.x(i)));
  return parity == 0;
}

Matrix to_matrix(const PauliOperator& p) {
  if (p.num_qubits() > kMaxDenseQubits)
    throw Error(ErrorCode::capacity, "to_matrix limited to " +
                                         std::to_string(kMaxDenseQubits) + " qubits, got " +
                                         std::to_string(p.num_qubits()));
  const Eigen::Index dim = Eigen::Index{1} << p.num_qubits();
  return apply_left(p, Matrix::Identity(dim, dim));
}

Matrix apply_left(const PauliOperator& p, const Matrix& a) {
  const DenseAction act = dense_action(p, a);
  const auto bd = static_cast<Eigen::Index>(act.bath_dim);
  Matrix out(a.rows(), a.cols());
  for (std::uint64_t c = 0; c < act.sys_dim; ++c) {
    const Complex w = act.coeff(c);
    const auto dst = static_cast<Eigen::Index>(c ^ act.x) * bd;
    out.middleRows(dst, bd) = w * a.middleRows(static_cast<Eigen::Index>(c) * bd, bd);
  }
  return out;
}

Matrix apply_right(const PauliOperator& p, const Matrix& a) {
  const DenseAction act = dense_action(p, a);
  const auto bd = static_cast<Eigen::Index>(act.bath_dim);
  Matrix out(a.rows(), a.cols());
  for (std::uint64_t c = 0; c < act.sys_dim; ++c) {
    const Complex w = act.coeff(c);
    const auto src = static_cast<Eigen::Index>(c ^ act.x) * bd;
    out.middleCols(static_cast<Eigen::Index>(c) * bd, bd) = w * a.middleCols(src, bd);
  }
  return out;
}

Matrix conjugate(const PauliOperator& p, const Matrix& a) {
  const DenseAction act = dense_action(p, a);
  const auto bd = static_cast<Eigen::Index>(act.bath_dim);
  Matrix out(a.rows(), a.cols());
  for (std::uint64_t r = 0; r < act.sys_dim; ++r) {
    const Complex wr = act.coeff(r ^ act.x);
    const auto rs = static_cast<Eigen::Index>(r ^ act.x) * bd;
    for (std::uint64_t c = 0; c < act.sys_dim; ++c) {
      const Complex w = wr * std::conj(act.coeff(c ^ act.x));
      const auto cs = static_cast<Eigen::Index>(c ^ act.x) * bd;
      out.block(static_cast<Eigen::Index>(r) * bd, static_cast<Eigen::Index>(c) * bd, bd, bd) =
          w * a.block(rs, cs, bd, bd);
    }
  }
  return out;
}

}  // namespace zeno
