#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "zeno/bounds.hpp"
#include "zeno/errors.hpp"

using namespace zeno;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

struct Frozen {
  std::uint64_t Q;
  double J0, J1, tau;
  std::uint64_t M;
  double eps;
  Protocol protocol;
  double B, A_plus, A_minus, gamma_plus, gamma_minus;
};

// Reference values computed independently at 40 digits.
const Frozen kFrozen[] = {
    {3, 0.1, 0.2, 1, 1, 1, Protocol::group, 0.42618229875843253227, 6.4297052774809460283,
     -0.56265370268464204755, 1.4249167813098270948, 0.62157335910231956968},
    {3, 0.1, 0.2, 1, 8, 0.5, Protocol::group, 0.38019897112905371045, 50.600071162788149055,
     -8.728999814391695421, 1.0344832238209195681, 0.8391936042886261289},
    {3, 0.2, 0.1, 1, 16, 2, Protocol::group, 0.0032353224115303495322, 80.354517917655720447,
     -0.016314709475100613475, 1.0126740698484296503, 0.07329344780039799889},
    {15, 0.3, 0.3, 2, 5, 1, Protocol::group, 4.3769958467098523742, 4.2540845047366766534,
     -0.038755928468129176592, 1.4146935856238817985, 0.14999405721349761787},
    {3, 0.1, 0.2, 1, 8, 1, Protocol::generators, 0.21497240383604339166, 45.167244435065554477,
     -3.7113534645752268738, 1.0299217276258294445, 0.69458101933332619089},
};

}  // namespace

TEST_CASE("full bound against frozen high-precision values") {
  for (const auto& f : kFrozen) {
    const auto r = theorem1_bound(make_bound_parameters(f.Q, f.J0, f.J1, f.tau, f.M, f.eps, f.protocol));
    CAPTURE(f.Q);
    CAPTURE(f.M);
    CHECK(close(r.full_bound, f.B, 1e-12));
    CHECK(close(r.A_plus, f.A_plus, 1e-12));
    CHECK(close(r.A_minus, f.A_minus, 1e-11));
    CHECK(close(r.gamma_plus, f.gamma_plus, 1e-13));
    CHECK(close(r.gamma_minus, f.gamma_minus, 1e-12));
  }
}

TEST_CASE("Gamma and strong limit frozen values") {
  const auto p = make_bound_parameters(1, 1.0, 1.0, 1.0, 10, 1.0, Protocol::group);
  CHECK(close(big_gamma(p, false), 0.1107013790800849169605, 1e-14));
  CHECK(close(strong_limit(3, 0.0, 0.1, 1.0, 1), 0.016092765420970452102, 1e-13));
}

TEST_CASE("phi small cases and frozen value") {
  CHECK(close(phi_direct(3, 0.05, 0.25, 1), 0.75, 1e-15));
  CHECK(close(phi_direct(3, 0.05, 0.25, 2), 1.040625, 1e-15));
  CHECK(close(phi_direct(3, 0.05, 0.25, 10), 2.29154054458948122896, 1e-14));
  CHECK(close(phi_closed(3, 0.05, 0.25, 10).value, 2.29154054458948122896, 1e-12));
  CHECK(phi_closed(3, 0.05, 0.0, 10).value == 0.0);
  CHECK_THROWS_AS(phi_direct(3, 0.05, 0.25, 21), Error);
}

TEST_CASE("phi closed form at beta = 0 uses the degenerate path") {
  const auto small = phi_closed(3, 0.0, 0.5, 6);
  CHECK(small.degenerate);
  CHECK(close(small.value, phi_direct(3, 0.0, 0.5, 6), 1e-14));
  const auto large = phi_closed(3, 0.0, 0.5, 40);
  CHECK(close(large.value, 3 * 0.5 * (1 - std::pow(0.5, 40)) / 0.5, 1e-14));
}

TEST_CASE("counting against brute force") {
  const auto code = StabilizerCode::build(std::vector<std::string>{"ZZI", "IZZ"});
  for (unsigned l = 0; l <= 4; ++l) {
    CHECK(f_count(3, l, true) == oracle::count_products(code, l, true));
    CHECK(f_count(3, l, false) == oracle::count_products(code, l, false));
  }
  CHECK(f_count(3, 0, true) == 1);
  CHECK(f_count(3, 1, true) == 0);
  CHECK(f_count(3, 2, true) == 3);
}

TEST_CASE("counting overflow is a capacity error") {
  try {
    f_count((std::uint64_t{1} << 40) - 1, 5, true);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::capacity);
  }
}

TEST_CASE("parameter validation") {
  const auto bad_q = make_bound_parameters(4, 0.1, 0.1, 1, 1, 1, Protocol::group);
  CHECK_THROWS_AS(validate(bad_q), Error);
  try {
    theorem1_bound(make_bound_parameters(3, 0.1, 0.1, 1, 1, 0.0, Protocol::group));
    FAIL("expected degenerate error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
  }
  try {
    theorem1_bound(make_bound_parameters(3, 0.1, 0.1, 1, 1, -1.0, Protocol::group));
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("B1 is unavailable for tiny epsilon") {
  const auto r = theorem1_bound(make_bound_parameters(3, 0.1, 0.2, 1, 4, 1e-8, Protocol::group));
  CHECK_FALSE(r.B1_available);
  CHECK(std::isnan(r.B1));
}

TEST_CASE("strong limit equals the eps = inf bound") {
  for (std::uint64_t M : {1, 2, 7, 100}) {
    const auto r = theorem1_bound(make_bound_parameters(3, 0.05, 0.2, 1, M, kInf, Protocol::group));
    CHECK(close(r.full_bound, strong_limit(3, 0.05, 0.2, 1, M), 1e-15));
  }
}

TEST_CASE("trade-off classifications") {
  const auto p1 = make_bound_parameters(3, 1.0, 1.0, 1, 1, 1.0, Protocol::group);
  CHECK(tradeoff_tau(p1, 0.5).convergent);
  CHECK(tradeoff_tau(p1, 0.5).tail_decreasing);
  CHECK_FALSE(tradeoff_tau(p1, 1.2).convergent);
  const auto p2 = make_bound_parameters(3, 2.0, 1.0, 1, 1, 1.0, Protocol::group);
  CHECK(tradeoff_eps(p2, -0.4).tail_decreasing);
  CHECK(tradeoff_eps(p2, -0.6).tail_nondecreasing);
  CHECK(log_grid(2, 3, 4).size() == 5);
}

TEST_CASE("fixed interval") {
  const auto r = fixed_interval_report(3, 1.0, 1.0, 0.05, 50);
  CHECK(r.strictly_increasing);
  CHECK(r.minimizer == 1);
  CHECK(r.protection);
  CHECK(close(fixed_interval_bound(3, 1.0, 1.0, 0.01, 1), 1.525264639289991e-4, 1e-12));
}

TEST_CASE("bath moments") {
  CHECK(bath_moment_bound(2, 0.5, 1.0, 2.0) == doctest::Approx(2.0));
  CHECK(lorentzian_moment_diverges(1));
  Matrix b0(2, 2), bx(2, 2), rho = Matrix::Identity(2, 2) / 2.0;
  b0 << 1, 0, 0, -1;
  bx << 0, 1, 1, 0;
  // ad_{Z}^2(X) = 4X, Tr(rho 4X X) = 4
  CHECK(finite_bath_moment(2, b0, bx, bx, rho) == doctest::Approx(4.0));
  CHECK(finite_bath_moment(2, b0, bx, bx, rho) <= bath_moment_bound(2, 1.0, 1.0, 1.0));
}
