#pragma once

#include <cstdint>
#include <vector>

#include "zeno/dynamics.hpp"

namespace zeno {

/// Largest M accepted by phi_direct.
inline constexpr std::uint64_t kPhiDirectMaxM = 20;
/// Smallest eps for which B1 is evaluated.
inline constexpr double kB1MinEpsilon = 1e-6;

struct BoundParameters {
  std::uint64_t Q = 1;         // |S| - 1
  double q_effective = 1.0;    // (Q+1)/2 (group) or 1 (generators)
  double J0 = 0.0;
  double J1 = 0.0;
  double tau = 0.0;
  std::uint64_t M = 1;
  double epsilon = 1.0;        // > 0, may be +inf

  double Jm() const noexcept { return J0 > J1 ? J0 : J1; }
  double zeta() const;
  double xi() const;           // zeta^q_effective
  double one_minus_xi() const; // 1 - xi without cancellation
};

BoundParameters make_bound_parameters(std::uint64_t Q, double J0, double J1, double tau,
                                      std::uint64_t M, double epsilon, Protocol protocol);

/// Throws Error(domain) for invalid inputs and Error(degenerate) for eps = 0.
void validate(const BoundParameters& p);

struct BoundReport {
  double zeta = 0.0;
  double xi = 0.0;
  double Gamma_identity = 0.0;
  double Gamma_g = 0.0;
  double beta = 0.0;
  double Gamma_plus = 0.0;
  double Gamma_minus = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double A_plus = 0.0;
  double A_minus = 0.0;
  double phi = 0.0;
  double weak_term = 0.0;     // Gamma_g * phi(M)
  double strong_term = 0.0;   // [1 + Gamma_1]^M - e^{tau J0}
  double full_bound = 0.0;    // B
  double B1 = 0.0;            // NaN when unavailable
  bool B1_available = false;
  double strong_limit = 0.0;
  bool j0_ge_j1 = true;       // branch used for beta and Gamma_+-
  bool degenerate = false;    // beta = 0: closed form replaced by the direct sum
};

// --- counting -------------------------------------------------------------

/// Number of ordered l-tuples of non-identity elements multiplying to the
/// target. Exact; throws Error(capacity) on 64-bit overflow.
std::uint64_t f_count(std::uint64_t Q, unsigned l, bool identity_target);

/// Closed form gamma_l.
double gamma_l(std::uint64_t Q, double J0, double J1, unsigned l, bool identity_target);
/// sum_s C(l,s) J0^s J1^{l-s} f_{l-s}.
double gamma_l_binomial(std::uint64_t Q, double J0, double J1, unsigned l, bool identity_target);

/// Gamma_1(tau/M) or Gamma_g(tau/M).
double big_gamma(const BoundParameters& p, bool identity_target);

// --- phi(M) ---------------------------------------------------------------

/// Triple sum with compensated summation; M <= kPhiDirectMaxM.
double phi_direct(std::uint64_t Q, double beta, double xi, std::uint64_t M);

struct PhiClosed {
  double value = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double A_plus = 0.0;
  double A_minus = 0.0;
  bool degenerate = false;
};

/// A+ g+^{M-1} + A- g-^{M-1} - (1+beta)^M / beta in a cancellation-free
/// arrangement. beta = 0 falls back to the direct sum (flagged degenerate).
PhiClosed phi_closed(std::uint64_t Q, double beta, double xi, std::uint64_t M);

/// Relative residual of the second-order recurrence for phi at M >= 3,
/// using phi_direct (closed = false) or phi_closed values.
double sum_recurrence_residual(std::uint64_t Q, double beta, double xi, std::uint64_t M,
                               bool closed);

/// Summand Phi(M,u,eta,r); zero outside the binomial ranges.
double phi_summand(std::uint64_t Q, double beta, double xi, long M, long u, long eta, long r);
/// Relative residual of the eight-term summand identity at (M,u,eta,r).
double summand_recurrence_residual(std::uint64_t Q, double beta, double xi, long M, long u,
                                   long eta, long r);

// --- the bound ------------------------------------------------------------

BoundReport theorem1_bound(const BoundParameters& p);

/// Coefficient of 1/M in the large-M expansion. NaN below kB1MinEpsilon.
double b1_coefficient(const BoundParameters& p);

/// Strong-measurement (eps = inf) bound; independent of eps.
double strong_limit(std::uint64_t Q, double J0, double J1, double tau, std::uint64_t M);

// --- trade-offs -----------------------------------------------------------

struct SeriesPoint {
  double M = 0.0;
  double value = 0.0;
};

struct TradeoffResult {
  bool convergent = false;
  double cutoff = 0.0;            // 1 or J0/J1
  std::vector<SeriesPoint> series;
  bool tail_decreasing = false;   // last half of the series strictly decreasing
  bool tail_nondecreasing = false;
};

/// Geometric M grid 10^lo .. 10^hi with `per_decade` points per decade.
std::vector<double> log_grid(int lo, int hi, int per_decade);

/// tau = a log(M)/J0; leading-order bound over M in 10^2..10^12.
TradeoffResult tradeoff_tau(const BoundParameters& p, double a);
/// eps = M^exponent; B1/M over M in 10^2..10^6.
TradeoffResult tradeoff_eps(const BoundParameters& p, double exponent);

struct FixedIntervalReport {
  std::vector<double> values;   // f(1), f(2), ...
  std::uint64_t minimizer = 1;
  bool strictly_increasing = false;
  double expansion = 0.0;       // (Q/2)(J1 dt)^2 (1 + J0 dt)
  bool protection = false;      // J1 dt < 1
};

/// f(M) = e^{J0 dt M}[((e^{Q J1 dt} + Q e^{-J1 dt})/(Q+1))^M - 1].
double fixed_interval_bound(std::uint64_t Q, double J0, double J1, double delta_tau,
                            std::uint64_t M);
FixedIntervalReport fixed_interval_report(std::uint64_t Q, double J0, double J1,
                                          double delta_tau, std::uint64_t max_M);

// --- bath moments ---------------------------------------------------------

/// (2 ||B0||)^n ||B_alpha|| ||B_beta||.
double bath_moment_bound(unsigned n, double norm_B0, double norm_Balpha, double norm_Bbeta);
/// Moments of order n >= 1 of a Lorentzian spectral density diverge.
bool lorentzian_moment_diverges(unsigned n) noexcept;
/// |Tr(rho (ad_{B0})^n(B_alpha) B_beta)|: the n-th spectral moment of a
/// finite bath correlation function.
double finite_bath_moment(unsigned n, const Matrix& B0, const Matrix& Balpha, const Matrix& Bbeta,
                          const Matrix& rho_bath);

}  // namespace zeno
