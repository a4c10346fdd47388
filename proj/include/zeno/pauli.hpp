#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno {

/// Quarter phases i^k, k = 0..3.
enum class Phase : std::uint8_t { plus_one = 0, plus_i = 1, minus_one = 2, minus_i = 3 };

Complex phase_value(Phase p) noexcept;

/// Largest qubit count accepted by to_matrix and the dense actions.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// An n-qubit Pauli operator phase * P_0 (x) P_1 (x) ... (x) P_{n-1} in
/// binary symplectic form. Letters are I, X, Y, Z (so Y has x = z = 1 with
/// no hidden phase); qubit 0 is the leftmost label character and the most
/// significant bit of a computational-basis index.
class PauliOperator {
 public:
  PauliOperator() = default;

  static PauliOperator identity(std::size_t n);

  /// Parses "XZI", optionally prefixed by "+", "-", "i", "+i", "-i", "+1"
  /// or "-1". Throws ParseError naming the offending character position.
  static PauliOperator parse(std::string_view text);
  static PauliOperator parse(std::string_view label, Phase phase);

  std::size_t num_qubits() const noexcept { return n_; }
  bool x(std::size_t qubit) const;
  bool z(std::size_t qubit) const;
  char letter(std::size_t qubit) const;
  Phase phase() const noexcept { return phase_; }

  PauliOperator with_phase(Phase p) const;

  bool is_identity() const noexcept;           // phase +1 and all letters I
  bool is_identity_up_to_phase() const noexcept;
  bool is_hermitian() const noexcept {
    return phase_ == Phase::plus_one || phase_ == Phase::minus_one;
  }
  std::size_t weight() const noexcept;

  /// Label with a phase prefix when the phase is not +1, e.g. "-iXZ".
  std::string to_string() const;
  /// Letters only, without phase.
  std::string letters() const;

  /// X and Z parts packed into an integer (qubit 0 = most significant bit).
  /// Only available for n <= 63.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  /// Symplectic row (x_0..x_{n-1}, z_0..z_{n-1}) as bytes.
  std::vector<std::uint8_t> symplectic_row() const;

  friend bool operator==(const PauliOperator& a, const PauliOperator& b) noexcept {
    return a.n_ == b.n_ && a.phase_ == b.phase_ && a.xs_ == b.xs_ && a.zs_ == b.zs_;
  }
  friend bool operator!=(const PauliOperator& a, const PauliOperator& b) noexcept {
    return !(a == b);
  }

  /// True when both act as the same operator up to a global phase.
  bool same_letters(const PauliOperator& other) const noexcept {
    return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
  }

  std::size_t hash() const noexcept;

  friend PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);

 private:
  PauliOperator(std::size_t n, Phase phase);
  void set(std::size_t qubit, bool xbit, bool zbit);

  std::size_t n_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  Phase phase_ = Phase::plus_one;
};

/// Exact group product p*q. Throws Error(dimension) on qubit-count mismatch.
PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);
inline PauliOperator operator*(const PauliOperator& p, const PauliOperator& q) {
  return multiply(p, q);
}

/// Symplectic inner product test.
bool commutes(const PauliOperator& p, const PauliOperator& q);

/// Dense 2^n x 2^n matrix. Throws Error(capacity) above kMaxDenseQubits.
Matrix to_matrix(const PauliOperator& p);

/// (P (x) 1_B) A for a joint operator A whose system factor has 2^n levels.
Matrix apply_left(const PauliOperator& p, const Matrix& a);
/// A (P (x) 1_B).
Matrix apply_right(const PauliOperator& p, const Matrix& a);
/// (P (x) 1_B) A (P (x) 1_B)^dagger.
Matrix conjugate(const PauliOperator& p, const Matrix& a);

}  // namespace zeno

template <>
struct std::hash<zeno::PauliOperator> {
  std::size_t operator()(const zeno::PauliOperator& p) const noexcept { return p.hash(); }
};
