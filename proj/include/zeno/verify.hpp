#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zeno {

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Test hook: added to the expected zeta in the eigen-action law so the
  /// measurement suite can be made to fail on purpose.
  double zeta_perturbation = 0.0;
};

struct VerifyResult {
  bool passed = true;
  std::size_t properties = 0;
  std::size_t failures = 0;
  std::string report;  // one line per property, deterministic given the seed
};

/// Names accepted by run_verify.
const std::vector<std::string>& verify_suites();

/// Runs one property suite ("pauli", "stabilizer", "measurement", "bounds")
/// or "all". Throws Error(domain) for an unknown suite.
VerifyResult run_verify(const std::string& suite, const VerifyOptions& options);

/// The phi oracle grid: closed vs direct phi and the sum recurrence over
/// Q in {1,3,7}, beta in {0.01,0.1,0.5}, xi in {0.1,0.5,0.9}, M in 1..15.
VerifyResult run_recurrence_check(double tolerance);

}  // namespace zeno
