#include "zeno/zeno.h"

#include <cmath>
#include <new>
#include <string>

#include "zeno/bounds.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"
#include "zeno/log.hpp"
#include "zeno/verify.hpp"

struct zeno_code {
  zeno::StabilizerCode code;
};

struct zeno_experiment {
  zeno::ExperimentConfig config;
};

struct zeno_report {
  zeno::SweepReport report;
};

struct zeno_string {
  std::string text;
};

namespace {

thread_local std::string g_last_error;

zeno_status fail(zeno_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
zeno_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return ZENO_OK;
  } catch (const zeno::Error& e) {
    return fail(static_cast<zeno_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ZENO_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(ZENO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ZENO_ERR_INTERNAL, "unknown exception");
  }
}

zeno_status null_argument(const char* name) {
  return fail(ZENO_ERR_INVALID_ARGUMENT, std::string("null argument: ") + name);
}

zeno::Protocol to_protocol(zeno_protocol p) {
  switch (p) {
    case ZENO_PROTOCOL_GROUP: return zeno::Protocol::group;
    case ZENO_PROTOCOL_GENERATORS: return zeno::Protocol::generators;
  }
  throw zeno::Error(zeno::ErrorCode::domain, "unknown protocol " + std::to_string(int(p)));
}

zeno_string* make_string(std::string text) { return new zeno_string{std::move(text)}; }

zeno::BoundParameters to_params(const zeno_bound_params& p) {
  auto params = zeno::make_bound_parameters(p.Q, p.J0, p.J1, p.tau, p.M, p.epsilon,
                                            to_protocol(p.protocol));
  zeno::validate(params);
  return params;
}

}  // namespace

extern "C" {

const char* zeno_last_error(void) { return g_last_error.c_str(); }

const char* zeno_status_name(zeno_status status) {
  switch (status) {
    case ZENO_OK: return "ok";
    case ZENO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case ZENO_ERR_INTERNAL: return "internal";
    default:
      if (status >= ZENO_ERR_PARSE && status <= ZENO_ERR_IO)
        return zeno::error_code_name(static_cast<zeno::ErrorCode>(static_cast<int>(status)));
      return "unknown";
  }
}

const char* zeno_version(void) { return zeno::kToolVersion; }

void zeno_set_log_level(zeno_log_level level) {
  zeno::set_log_threshold(static_cast<zeno::LogLevel>(static_cast<int>(level)));
}

const char* zeno_string_data(const zeno_string* s) { return s ? s->text.c_str() : ""; }
size_t zeno_string_size(const zeno_string* s) { return s ? s->text.size() : 0; }
void zeno_string_free(zeno_string* s) { delete s; }

zeno_status zeno_code_create(const char* const* generators, size_t count, zeno_code** out) {
  if (!out) return null_argument("out");
  if (!generators && count > 0) return null_argument("generators");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> labels;
    for (size_t i = 0; i < count; ++i) {
      if (!generators[i])
        throw zeno::Error(zeno::ErrorCode::parse, "generator " + std::to_string(i) + " is null");
      labels.emplace_back(generators[i]);
    }
    *out = new zeno_code{zeno::StabilizerCode::build(labels)};
  });
}

void zeno_code_free(zeno_code* code) { delete code; }

zeno_status zeno_code_info(const zeno_code* code, size_t* n, size_t* k, uint64_t* Q) {
  if (!code) return null_argument("code");
  if (n) *n = code->code.n();
  if (k) *k = code->code.k();
  if (Q) *Q = code->code.Q();
  return ZENO_OK;
}

zeno_status zeno_code_syndrome(const zeno_code* code, const char* pauli, uint32_t* syndrome) {
  if (!code) return null_argument("code");
  if (!pauli) return null_argument("pauli");
  if (!syndrome) return null_argument("syndrome");
  return guarded([&] {
    *syndrome = code->code.syndrome_of(zeno::PauliOperator::parse(pauli));
  });
}

zeno_status zeno_bound_evaluate(const zeno_bound_params* params, zeno_bound_result* result) {
  if (!params) return null_argument("params");
  if (!result) return null_argument("result");
  return guarded([&] {
    const auto b = zeno::theorem1_bound(to_params(*params));
    *result = zeno_bound_result{b.zeta,        b.xi,          b.Gamma_identity, b.Gamma_g,
                                b.beta,        b.Gamma_plus,  b.Gamma_minus,    b.gamma_plus,
                                b.gamma_minus, b.A_plus,      b.A_minus,        b.phi,
                                b.weak_term,   b.strong_term, b.full_bound,     b.B1,
                                b.strong_limit, b.B1_available ? 1 : 0, b.j0_ge_j1 ? 1 : 0,
                                b.degenerate ? 1 : 0};
  });
}

zeno_status zeno_bound_json(const zeno_bound_params* params, zeno_string** out) {
  if (!params) return null_argument("params");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const auto p = to_params(*params);
    *out = make_string(zeno::bound_report_json(p, zeno::theorem1_bound(p)));
  });
}

zeno_status zeno_experiment_load(const char* path, zeno_experiment** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new zeno_experiment{zeno::load_config(path)}; });
}

zeno_status zeno_experiment_parse(const char* json_text, zeno_experiment** out) {
  if (!json_text) return null_argument("json_text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new zeno_experiment{zeno::parse_config(json_text)}; });
}

void zeno_experiment_free(zeno_experiment* exp) { delete exp; }

zeno_status zeno_experiment_set_grid(zeno_experiment* exp, zeno_grid grid, const double* values,
                                     size_t count) {
  if (!exp) return null_argument("exp");
  if (!values && count > 0) return null_argument("values");
  return guarded([&] {
    const char* name = grid == ZENO_GRID_TAU ? "sweep.tau"
                       : grid == ZENO_GRID_M ? "sweep.M"
                                             : "sweep.epsilon";
    if (count == 0) throw zeno::SchemaError(name, "grid must be nonempty");
    auto& c = exp->config;
    switch (grid) {
      case ZENO_GRID_TAU: {
        std::vector<double> taus;
        for (size_t i = 0; i < count; ++i) {
          if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw zeno::SchemaError(name, "tau must be nonnegative and finite");
          taus.push_back(values[i]);
        }
        c.taus = std::move(taus);
        break;
      }
      case ZENO_GRID_M: {
        std::vector<std::uint64_t> Ms;
        for (size_t i = 0; i < count; ++i) {
          if (!(values[i] >= 1.0) || values[i] != std::floor(values[i]) || values[i] > 1e15)
            throw zeno::SchemaError(name, "M must be a positive integer");
          Ms.push_back(static_cast<std::uint64_t>(values[i]));
        }
        c.Ms = std::move(Ms);
        break;
      }
      case ZENO_GRID_EPSILON: {
        std::vector<double> eps;
        for (size_t i = 0; i < count; ++i) {
          if (!(values[i] > 0.0)) throw zeno::SchemaError(name, "epsilon must be > 0 or inf");
          eps.push_back(values[i]);
        }
        c.epsilons = std::move(eps);
        break;
      }
      default:
        throw zeno::Error(zeno::ErrorCode::domain, "unknown grid " + std::to_string(int(grid)));
    }
  });
}

zeno_status zeno_experiment_set_protocols(zeno_experiment* exp, const zeno_protocol* protocols,
                                          size_t count) {
  if (!exp) return null_argument("exp");
  if (!protocols && count > 0) return null_argument("protocols");
  return guarded([&] {
    if (count == 0) throw zeno::SchemaError("protocol", "at least one protocol is required");
    std::vector<zeno::Protocol> list;
    for (size_t i = 0; i < count; ++i) list.push_back(to_protocol(protocols[i]));
    exp->config.protocols = std::move(list);
  });
}

zeno_status zeno_experiment_set_bound_tolerance(zeno_experiment* exp, double tol) {
  if (!exp) return null_argument("exp");
  if (!std::isfinite(tol)) return fail(ZENO_ERR_DOMAIN, "tolerance must be finite");
  exp->config.bound_tolerance = tol;
  return ZENO_OK;
}

zeno_status zeno_experiment_run(const zeno_experiment* exp, unsigned jobs, int simulate,
                                zeno_report** out) {
  if (!exp) return null_argument("exp");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    zeno::RunOptions options;
    options.jobs = jobs == 0 ? 1 : jobs;
    options.simulate = simulate != 0;
    *out = new zeno_report{zeno::run_experiment(exp->config, options)};
  });
}

void zeno_report_free(zeno_report* report) { delete report; }

size_t zeno_report_rows(const zeno_report* report) {
  return report ? report->report.rows.size() : 0;
}

size_t zeno_report_violations(const zeno_report* report) {
  return report ? report->report.violations() : 0;
}

size_t zeno_report_out_of_hypothesis(const zeno_report* report) {
  return report ? report->report.out_of_hypothesis() : 0;
}

zeno_status zeno_report_json(const zeno_report* report, zeno_string** out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = make_string(zeno::report_json(report->report)); });
}

zeno_status zeno_report_csv(const zeno_report* report, zeno_string** out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = make_string(zeno::report_csv(report->report)); });
}

zeno_status zeno_report_write(const zeno_report* report, const zeno_experiment* exp,
                              const char* dir) {
  if (!report) return null_argument("report");
  if (!exp) return null_argument("exp");
  if (!dir) return null_argument("dir");
  return guarded([&] { zeno::write_report(report->report, exp->config, dir); });
}

zeno_status zeno_verify(const char* suite, uint64_t seed, double zeta_perturbation, int* passed,
                        zeno_string** report) {
  if (!suite) return null_argument("suite");
  if (!passed) return null_argument("passed");
  if (report) *report = nullptr;
  return guarded([&] {
    zeno::VerifyOptions options;
    options.seed = seed;
    options.zeta_perturbation = zeta_perturbation;
    auto result = zeno::run_verify(suite, options);
    *passed = result.passed ? 1 : 0;
    if (report) *report = make_string(std::move(result.report));
  });
}

zeno_status zeno_recurrence_check(double tolerance, int* passed, zeno_string** report) {
  if (!passed) return null_argument("passed");
  if (report) *report = nullptr;
  if (!(tolerance > 0.0)) return fail(ZENO_ERR_DOMAIN, "tolerance must be positive");
  return guarded([&] {
    auto result = zeno::run_recurrence_check(tolerance);
    *passed = result.passed ? 1 : 0;
    if (report) *report = make_string(std::move(result.report));
  });
}

}  // extern "C"
