#include "zeno/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool valid_Q(std::uint64_t Q) { return Q >= 1 && Q < (std::uint64_t{1} << 63) && ((Q + 1) & Q) == 0; }

void require_Q(std::uint64_t Q) {
  if (!valid_Q(Q))
    throw Error(ErrorCode::domain, "Q = " + std::to_string(Q) + " is not of the form 2^Qbar - 1");
}

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (long i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

// r(b) = (e^{Qb} + Q e^{-b})/(Q+1) - 1 >= 0.
double strong_ratio_minus_one(std::uint64_t Q, double b) {
  const double q = static_cast<double>(Q);
  if (b == 0.0) return 0.0;
  if (q * std::abs(b) < 0.5) {
    // sum_{k>=2} [(Qb)^k + Q(-b)^k] / ((Q+1) k!)
    CompensatedSum sum;
    double tq = q * b;  // (Qb)^k / k!
    double tb = -b;     // (-b)^k / k!
    for (int k = 2; k < 60; ++k) {
      tq *= q * b / k;
      tb *= -b / k;
      const double term = (tq + q * tb) / (q + 1.0);
      sum.add(term);
      if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
    }
    return sum.value();
  }
  return (std::expm1(q * b) + q * std::expm1(-b)) / (q + 1.0);
}

// log cosh(eps) for eps >= 0.
double log_cosh(double eps) {
  if (eps < 20.0) {
    const double s = std::sinh(0.5 * eps);
    return std::log1p(2.0 * s * s);
  }
  return eps - std::log(2.0) + std::log1p(std::exp(-2.0 * eps));
}

double pow_int(double x, std::uint64_t e) {
  if (e == 0) return 1.0;
  return std::pow(x, static_cast<double>(e));
}

}  // namespace

double BoundParameters::zeta() const { return zeta_of(epsilon); }

double BoundParameters::xi() const {
  if (std::isinf(epsilon)) return 0.0;
  return std::exp(-q_effective * log_cosh(epsilon));
}

double BoundParameters::one_minus_xi() const {
  if (std::isinf(epsilon)) return 1.0;
  return -std::expm1(-q_effective * log_cosh(epsilon));
}

BoundParameters make_bound_parameters(std::uint64_t Q, double J0, double J1, double tau,
                                      std::uint64_t M, double epsilon, Protocol protocol) {
  BoundParameters p;
  p.Q = Q;
  p.q_effective = protocol == Protocol::group ? (static_cast<double>(Q) + 1.0) / 2.0 : 1.0;
  p.J0 = J0;
  p.J1 = J1;
  p.tau = tau;
  p.M = M;
  p.epsilon = epsilon;
  return p;
}

void validate(const BoundParameters& p) {
  require_Q(p.Q);
  if (!(p.q_effective >= 1.0) || !std::isfinite(p.q_effective))
    throw Error(ErrorCode::domain, "q_effective must be at least 1");
  if (!(p.J0 >= 0.0) || !(p.J1 >= 0.0) || !std::isfinite(p.J0) || !std::isfinite(p.J1))
    throw Error(ErrorCode::domain, "J0 and J1 must be finite and nonnegative");
  if (!(p.tau >= 0.0) || !std::isfinite(p.tau))
    throw Error(ErrorCode::domain, "tau must be finite and nonnegative");
  if (p.M < 1) throw Error(ErrorCode::domain, "M must be at least 1");
  if (std::isnan(p.epsilon) || p.epsilon < 0.0)
    throw Error(ErrorCode::domain, "measurement strength must be positive or inf");
  if (p.epsilon == 0.0)
    throw Error(ErrorCode::degenerate,
                "eps = 0 means no measurement (xi = 1); the bound is undefined there");
}

std::uint64_t f_count(std::uint64_t Q, unsigned l, bool identity_target) {
  require_Q(Q);
  __extension__ typedef __int128 i128;
  const i128 limit = static_cast<i128>(1) << 125;
  i128 power = 1;
  for (unsigned i = 0; i < l; ++i) {
    power *= static_cast<i128>(Q);
    if (power > limit) throw Error(ErrorCode::capacity, "f_count overflows at l = " + std::to_string(l));
  }
  const i128 sign = (l % 2 == 0) ? 1 : -1;
  const i128 num = identity_target ? power + static_cast<i128>(Q) * sign : power - sign;
  const i128 value = num / (static_cast<i128>(Q) + 1);
  if (value > static_cast<i128>(std::numeric_limits<std::uint64_t>::max()))
    throw Error(ErrorCode::capacity, "f_count does not fit in 64 bits at l = " + std::to_string(l));
  return static_cast<std::uint64_t>(value);
}

double gamma_l(std::uint64_t Q, double J0, double J1, unsigned l, bool identity_target) {
  require_Q(Q);
  const double q = static_cast<double>(Q);
  const double up = std::pow(J0 + q * J1, static_cast<double>(l));
  const double down = std::pow(J0 - J1, static_cast<double>(l));
  return identity_target ? (up + q * down) / (q + 1.0) : (up - down) / (q + 1.0);
}

double gamma_l_binomial(std::uint64_t Q, double J0, double J1, unsigned l, bool identity_target) {
  require_Q(Q);
  const double q = static_cast<double>(Q);
  // f_j by the transfer recursion: appending one element to a word.
  std::vector<double> f_id(l + 1), f_g(l + 1);
  f_id[0] = 1.0;
  f_g[0] = 0.0;
  for (unsigned j = 1; j <= l; ++j) {
    f_id[j] = q * f_g[j - 1];
    f_g[j] = f_id[j - 1] + (q - 1.0) * f_g[j - 1];
  }
  CompensatedSum sum;
  for (unsigned s = 0; s <= l; ++s) {
    const double f = identity_target ? f_id[l - s] : f_g[l - s];
    sum.add(binomial(l, s) * std::pow(J0, static_cast<double>(s)) *
            std::pow(J1, static_cast<double>(l - s)) * f);
  }
  return sum.value();
}

double big_gamma(const BoundParameters& p, bool identity_target) {
  require_Q(p.Q);
  if (p.M < 1) throw Error(ErrorCode::domain, "M must be at least 1");
  const double m = static_cast<double>(p.M);
  const double a = p.tau * p.J0 / m;
  const double b = p.tau * p.J1 / m;
  const double q = static_cast<double>(p.Q);
  if (identity_target) return std::expm1(a) + std::exp(a) * strong_ratio_minus_one(p.Q, b);
  return std::exp(a) * (std::expm1(q * b) - std::expm1(-b)) / (q + 1.0);
}

double phi_summand(std::uint64_t Q, double beta, double xi, long M, long u, long eta, long r) {
  const double c = binomial(eta, r) * binomial(u - 1, r - 1) * binomial(M - u, eta - r);
  if (c == 0.0) return 0.0;
  return std::pow(beta, static_cast<double>(eta - 1)) * std::pow(xi, static_cast<double>(u)) *
         std::pow(static_cast<double>(Q), static_cast<double>(r)) * c;
}

double phi_direct(std::uint64_t Q, double beta, double xi, std::uint64_t M) {
  require_Q(Q);
  if (M < 1) throw Error(ErrorCode::domain, "M must be at least 1");
  if (M > kPhiDirectMaxM)
    throw Error(ErrorCode::capacity, "direct phi sum limited to M <= " + std::to_string(kPhiDirectMaxM));
  const long m = static_cast<long>(M);
  CompensatedSum sum;
  for (long eta = 1; eta <= m; ++eta)
    for (long u = 1; u <= m; ++u)
      for (long r = 1; r <= std::min(eta, u); ++r) sum.add(phi_summand(Q, beta, xi, m, u, eta, r));
  return sum.value();
}

PhiClosed phi_closed(std::uint64_t Q, double beta, double xi, std::uint64_t M) {
  require_Q(Q);
  if (M < 1) throw Error(ErrorCode::domain, "M must be at least 1");
  if (!(beta >= 0.0) || !(xi >= 0.0) || !(xi < 1.0))
    throw Error(ErrorCode::domain, "phi needs beta >= 0 and 0 <= xi < 1");
  const double q = static_cast<double>(Q);
  PhiClosed out;
  const double opb = 1.0 + beta;
  if (xi == 0.0) {
    out.gamma_plus = opb;
    out.gamma_minus = 0.0;
    out.A_plus = beta > 0.0 ? opb / beta : kNaN;
    out.A_minus = 0.0;
    out.value = 0.0;
    out.degenerate = beta == 0.0;
    return out;
  }
  if (beta == 0.0) {
    // Only eta = 1 survives: phi = Q sum_{u=1}^M xi^u.
    out.degenerate = true;
    out.gamma_plus = 1.0;
    out.gamma_minus = xi;
    out.A_plus = kNaN;
    out.A_minus = kNaN;
    const double m = static_cast<double>(M);
    out.value = M <= kPhiDirectMaxM
                    ? phi_direct(Q, beta, xi, M)
                    : q * xi * (-std::expm1(m * std::log(xi))) / (1.0 - xi);
    return out;
  }

  const double u = opb - (1.0 + q * beta) * xi;
  const double d = std::hypot(u, 2.0 * beta * std::sqrt(q * xi));
  const double prod = q * beta * beta * xi;  // e_minus * delta_plus
  double e_minus;                            // (1 + beta) - gamma_-
  double delta_plus;                         // gamma_+ - (1 + beta)
  if (u >= 0.0) {
    e_minus = 0.5 * (u + d);
    delta_plus = prod / e_minus;
  } else {
    delta_plus = 0.5 * (d - u);
    e_minus = prod / delta_plus;
  }
  const double gp = opb + delta_plus;
  const double gm = (opb + q * beta) * xi / gp;
  const double shared = opb * beta / e_minus;
  const double c_plus = (q * xi / d) * ((gp + beta) - shared);
  out.gamma_plus = gp;
  out.gamma_minus = gm;
  out.A_plus = opb / beta + c_plus;
  out.A_minus = -(q * xi / d) * ((gm + beta) - shared);

  const double m = static_cast<double>(M);
  const double gp_pow = std::exp((m - 1.0) * std::log1p(beta + delta_plus));
  const double gm_pow = pow_int(gm, M - 1);
  const double lead = std::exp(m * std::log1p(beta)) / beta *
                      std::expm1((m - 1.0) * std::log1p(delta_plus / opb));
  out.value = lead + c_plus * gp_pow + out.A_minus * gm_pow;
  return out;
}

double sum_recurrence_residual(std::uint64_t Q, double beta, double xi, std::uint64_t M,
                               bool closed) {
  if (M < 3) throw Error(ErrorCode::domain, "the phi recurrence starts at M = 3");
  auto phi = [&](std::uint64_t m) {
    return closed ? phi_closed(Q, beta, xi, m).value : phi_direct(Q, beta, xi, m);
  };
  const double q = static_cast<double>(Q);
  const double s = 1.0 + beta + (1.0 + q * beta) * xi;
  const double p = (1.0 + beta + q * beta) * xi;
  const double t0 = phi(M);
  const double t1 = s * phi(M - 1);
  const double t2 = p * phi(M - 2);
  const double inh = q * beta * std::pow(1.0 + beta, static_cast<double>(M - 2)) * xi;
  const double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2), std::abs(inh)});
  if (scale == 0.0) return 0.0;
  return std::abs(t0 - t1 + t2 - inh) / scale;
}

double summand_recurrence_residual(std::uint64_t Q, double beta, double xi, long M, long u,
                                   long eta, long r) {
  const double q = static_cast<double>(Q);
  auto P = [&](long m, long uu, long e, long rr) { return phi_summand(Q, beta, xi, m, uu, e, rr); };
  const double terms[8] = {
      q * beta * xi * P(M - 2, u, eta, r),
      beta * xi * P(M - 2, u, eta, r + 1),
      xi * P(M - 2, u, eta + 1, r + 1),
      -q * beta * xi * P(M - 1, u, eta, r),
      -xi * P(M - 1, u, eta + 1, r + 1),
      -beta * P(M - 1, u + 1, eta, r + 1),
      -P(M - 1, u + 1, eta + 1, r + 1),
      P(M, u + 1, eta + 1, r + 1),
  };
  CompensatedSum sum;
  double scale = 0.0;
  for (double t : terms) {
    sum.add(t);
    scale = std::max(scale, std::abs(t));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum.value()) / scale;
}

double b1_coefficient(const BoundParameters& p) {
  validate(p);
  if (p.epsilon < kB1MinEpsilon) return kNaN;
  const double q = static_cast<double>(p.Q);
  const double tj1 = p.tau * p.J1;
  const double tjm = p.tau * p.Jm();
  return std::exp(p.tau * p.J0) * q * tj1 * tj1 / 4.0 +
         std::exp(tjm) * (q * tj1 / 2.0) * (1.0 + tjm) * p.xi() / p.one_minus_xi();
}

double strong_limit(std::uint64_t Q, double J0, double J1, double tau, std::uint64_t M) {
  require_Q(Q);
  if (M < 1) throw Error(ErrorCode::domain, "M must be at least 1");
  const double m = static_cast<double>(M);
  const double r = strong_ratio_minus_one(Q, tau * J1 / m);
  return std::exp(tau * J0) * std::expm1(m * std::log1p(r));
}

BoundReport theorem1_bound(const BoundParameters& p) {
  validate(p);
  BoundReport out;
  out.zeta = p.zeta();
  out.xi = p.xi();
  out.Gamma_identity = big_gamma(p, true);
  out.Gamma_g = big_gamma(p, false);
  out.j0_ge_j1 = p.J0 >= p.J1;
  out.beta = out.j0_ge_j1 ? out.Gamma_identity : out.Gamma_g;
  out.Gamma_plus = out.beta;
  out.Gamma_minus = out.j0_ge_j1 ? out.Gamma_g : out.Gamma_identity;

  const PhiClosed phi = phi_closed(p.Q, out.beta, out.xi, p.M);
  out.gamma_plus = phi.gamma_plus;
  out.gamma_minus = phi.gamma_minus;
  out.A_plus = phi.A_plus;
  out.A_minus = phi.A_minus;
  out.phi = phi.value;
  out.degenerate = phi.degenerate;

  // The -(Gamma_-/Gamma_1)[1+Gamma_+]^M term cancels the particular
  // solution -(1+beta)^M/beta inside Gamma_g A_+- gamma_+-^{M-1} on both
  // branches, leaving B = strong term + Gamma_g phi(M).
  out.strong_limit = strong_limit(p.Q, p.J0, p.J1, p.tau, p.M);
  out.strong_term = out.strong_limit;
  out.weak_term = out.Gamma_g * out.phi;
  out.full_bound = out.strong_term + out.weak_term;
  out.B1 = b1_coefficient(p);
  out.B1_available = !std::isnan(out.B1);
  return out;
}

std::vector<double> log_grid(int lo, int hi, int per_decade) {
  std::vector<double> out;
  for (int i = lo * per_decade; i <= hi * per_decade; ++i)
    out.push_back(std::round(std::pow(10.0, static_cast<double>(i) / per_decade)));
  return out;
}

namespace {

void classify_tail(TradeoffResult& r) {
  const std::size_t start = r.series.size() / 2;
  r.tail_decreasing = true;
  r.tail_nondecreasing = true;
  for (std::size_t i = start + 1; i < r.series.size(); ++i) {
    if (!(r.series[i].value < r.series[i - 1].value)) r.tail_decreasing = false;
    if (r.series[i].value < r.series[i - 1].value) r.tail_nondecreasing = false;
  }
}

}  // namespace

TradeoffResult tradeoff_tau(const BoundParameters& p, double a) {
  require_Q(p.Q);
  if (!(a > 0.0)) throw Error(ErrorCode::domain, "trade-off exponent a must be positive");
  if (!(p.J0 > 0.0)) throw Error(ErrorCode::domain, "tau = a log(M)/J0 needs J0 > 0");
  const double q = static_cast<double>(p.Q);
  const double lambda = p.J1 / p.J0;
  const bool ge = p.J0 >= p.J1;
  const double ratio = p.xi() / p.one_minus_xi();
  TradeoffResult out;
  out.cutoff = ge ? 1.0 : p.J0 / p.J1;
  out.convergent = a < out.cutoff;
  for (double m : log_grid(2, 12, 4)) {
    const double L = std::log(m);
    const double al = a * L;
    double v;
    if (ge) {
      v = (q * lambda * lambda * al * al / 4.0 +
           (q / 2.0) * (lambda * al + lambda * a * al * L) * ratio) /
          std::pow(m, 1.0 - a);
    } else {
      v = q * lambda * lambda * al * al / (4.0 * std::pow(m, 1.0 - a)) +
          (q / 2.0) * (lambda * al + lambda * lambda * al * al) * ratio /
              std::pow(m, 1.0 - lambda * a);
    }
    out.series.push_back({m, v});
  }
  classify_tail(out);
  return out;
}

TradeoffResult tradeoff_eps(const BoundParameters& p, double exponent) {
  require_Q(p.Q);
  TradeoffResult out;
  out.cutoff = -0.5;
  out.convergent = exponent > -0.5;
  for (double m : log_grid(2, 6, 4)) {
    BoundParameters point = p;
    point.M = static_cast<std::uint64_t>(m);
    point.epsilon = std::pow(m, exponent);
    out.series.push_back({m, b1_coefficient(point) / m});
  }
  classify_tail(out);
  return out;
}

double fixed_interval_bound(std::uint64_t Q, double J0, double J1, double delta_tau,
                            std::uint64_t M) {
  require_Q(Q);
  if (!(delta_tau > 0.0)) throw Error(ErrorCode::domain, "measurement interval must be positive");
  if (M < 1) throw Error(ErrorCode::domain, "M must be at least 1");
  const double m = static_cast<double>(M);
  const double r = strong_ratio_minus_one(Q, J1 * delta_tau);
  return std::exp(J0 * delta_tau * m) * std::expm1(m * std::log1p(r));
}

FixedIntervalReport fixed_interval_report(std::uint64_t Q, double J0, double J1,
                                          double delta_tau, std::uint64_t max_M) {
  FixedIntervalReport out;
  for (std::uint64_t m = 1; m <= max_M; ++m)
    out.values.push_back(fixed_interval_bound(Q, J0, J1, delta_tau, m));
  out.strictly_increasing = true;
  for (std::size_t i = 1; i < out.values.size(); ++i)
    if (!(out.values[i] > out.values[i - 1])) out.strictly_increasing = false;
  out.minimizer =
      static_cast<std::uint64_t>(std::min_element(out.values.begin(), out.values.end()) -
                                 out.values.begin()) + 1;
  const double x = J1 * delta_tau;
  out.expansion = static_cast<double>(Q) / 2.0 * x * x * (1.0 + J0 * delta_tau);
  out.protection = x < 1.0;
  return out;
}

double bath_moment_bound(unsigned n, double norm_B0, double norm_Balpha, double norm_Bbeta) {
  for (double v : {norm_B0, norm_Balpha, norm_Bbeta})
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::domain, "bath operator norms must be finite and nonnegative");
  return std::pow(2.0 * norm_B0, static_cast<double>(n)) * norm_Balpha * norm_Bbeta;
}

bool lorentzian_moment_diverges(unsigned n) noexcept { return n >= 1; }

double finite_bath_moment(unsigned n, const Matrix& B0, const Matrix& Balpha, const Matrix& Bbeta,
                          const Matrix& rho_bath) {
  Matrix x = Balpha;
  for (unsigned i = 0; i < n; ++i) x = commutator(B0, x);
  return std::abs((rho_bath * x * Bbeta).trace());
}

}  // namespace zeno
