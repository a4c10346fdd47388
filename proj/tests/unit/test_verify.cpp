#include "doctest.h"
#include "zeno/errors.hpp"
#include "zeno/verify.hpp"

using namespace zeno;

TEST_CASE("every suite passes") {
  for (const auto& suite : {"pauli", "stabilizer", "measurement", "bounds"}) {
    const auto r = run_verify(suite, VerifyOptions{});
    CAPTURE(r.report);
    CHECK(r.passed);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("reports are deterministic for a seed") {
  VerifyOptions o;
  o.seed = 7;
  CHECK(run_verify("all", o).report == run_verify("all", o).report);
}

TEST_CASE("perturbed zeta fails the eigen-action law") {
  VerifyOptions o;
  o.seed = 3;
  o.zeta_perturbation = 1e-3;
  const auto r = run_verify("measurement", o);
  CHECK_FALSE(r.passed);
  CHECK(r.report.find("FAIL measurement.eigen_action_law") != std::string::npos);
  CHECK(r.report.find("witness:") != std::string::npos);
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(run_verify("nope", VerifyOptions{}), Error); }

TEST_CASE("recurrence check covers the full grid") {
  const auto r = run_recurrence_check(1e-9);
  CHECK(r.passed);
  CHECK(r.report.find("points=405") != std::string::npos);
}
