#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zeno/bounds.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/stabilizer.hpp"

namespace zeno {

inline constexpr const char* kToolVersion = "1.0.0";

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<std::string> generators;
  std::size_t bath_dim = 1;
  Matrix bath_state;                 // empty = maximally mixed
  std::vector<HamiltonianTerm> terms;
  Matrix logical_state;              // density matrix on the 2^k logical space
  bool logical_pure = true;          // given as a vector
  std::vector<Protocol> protocols{Protocol::group};
  std::vector<double> taus;
  std::vector<std::uint64_t> Ms;
  std::vector<double> epsilons;      // > 0 or +inf
  double bound_tolerance = 1e-9;
  double validation_tolerance = kDefaultValidationTolerance;
  std::string csv_name = "sweep.csv";
  std::string json_name = "report.json";
  std::string hash;                  // FNV-1a of the canonical config text
};

/// Parses a JSON config. Throws SchemaError naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);
/// Throws Error(io) when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

std::string fnv1a_hex(const std::string& text);

struct SweepRow {
  Protocol variant = Protocol::group;
  std::uint64_t Q = 1;
  double tau = 0.0;
  std::uint64_t M = 1;
  double epsilon = 1.0;
  double J0 = 0.0;
  double J1 = 0.0;
  bool simulated = false;
  double D_sim = 0.0;            // NaN when not simulated
  double D_bound = 0.0;
  double D_strong_limit = 0.0;
  double B1_over_M = 0.0;        // NaN when B1 is unavailable
  bool bound_satisfied = true;
  bool in_hypothesis = true;
  std::vector<double> cycle_distances;
  StateDiagnostics worst_state;
  double channel_trace_residual = 0.0;
  BoundReport bound;
};

struct SweepReport {
  std::string name;
  std::string config_hash;
  std::string version = kToolVersion;
  std::vector<std::string> generators;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t Q = 0;
  std::size_t bath_dim = 1;
  std::vector<SweepRow> rows;

  std::size_t violations() const;        // in-hypothesis rows above the bound
  std::size_t out_of_hypothesis() const;
};

struct RunOptions {
  unsigned jobs = 1;
  bool simulate = true;      // false: bounds only
};

/// Validates the model (assumption violations throw) and evaluates every
/// point of taus x Ms x epsilons x protocols. Row order is independent of
/// the number of jobs.
SweepReport run_experiment(const ExperimentConfig& config, const RunOptions& options);

std::string report_csv(const SweepReport& report);
std::string report_json(const SweepReport& report);
std::string bound_report_json(const BoundParameters& params, const BoundReport& report);

/// Writes both files into `dir` (created if missing).
void write_report(const SweepReport& report, const ExperimentConfig& config,
                  const std::string& dir);

}  // namespace zeno
