#include "zeno/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "zeno/errors.hpp"
#include "zeno/log.hpp"

namespace zeno {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::string field_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const json& require_field(const json& obj, const std::string& key, const std::string& base) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(field_path(base, key), "required field is missing");
  return *it;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path, std::set<std::string> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(field_path(path, it.key()), "unknown field");
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::uint64_t read_positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw SchemaError(path, "expected a positive integer");
  const auto v = j.get<std::int64_t>();
  if (v < 1) throw SchemaError(path, "expected a positive integer");
  return static_cast<std::uint64_t>(v);
}

Complex read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {read_number(j, path), 0.0};
  if (j.is_array() && j.size() == 2)
    return {read_number(j[0], index_path(path, 0)), read_number(j[1], index_path(path, 1))};
  throw SchemaError(path, "expected a number or an [re, im] pair");
}

Matrix read_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rp = index_path(path, static_cast<std::size_t>(r));
    if (!row.is_array() || row.empty()) throw SchemaError(rp, "expected a nonempty row");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError(rp, "row length " + std::to_string(row.size()) + " differs from " +
                                std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = read_complex(row[static_cast<std::size_t>(c)], index_path(rp, static_cast<std::size_t>(c)));
  }
  return m;
}

template <typename F>
auto read_list(const json& j, const std::string& path, F item) {
  using T = decltype(item(j, path));
  std::vector<T> out;
  if (j.is_array()) {
    if (j.empty()) throw SchemaError(path, "grid must not be empty");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(item(j[i], index_path(path, i)));
  } else {
    out.push_back(item(j, path));
  }
  return out;
}

double read_epsilon(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
    throw SchemaError(path, "expected a positive number or \"inf\"");
  }
  const double v = read_number(j, path);
  if (!(v > 0.0)) throw SchemaError(path, "measurement strength must be positive (or \"inf\")");
  return v;
}

Protocol read_protocol(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "group") return Protocol::group;
    if (s == "generators") return Protocol::generators;
  }
  throw SchemaError(path, "expected \"group\" or \"generators\"");
}

bool is_density(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const auto d = diagnose_state(m);
  return d.valid(tol, tol, tol);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

json bound_to_json(const BoundReport& b) {
  return json{{"zeta", number_or_null(b.zeta)},
              {"xi", number_or_null(b.xi)},
              {"Gamma_identity", number_or_null(b.Gamma_identity)},
              {"Gamma_g", number_or_null(b.Gamma_g)},
              {"beta", number_or_null(b.beta)},
              {"Gamma_plus", number_or_null(b.Gamma_plus)},
              {"Gamma_minus", number_or_null(b.Gamma_minus)},
              {"gamma_plus", number_or_null(b.gamma_plus)},
              {"gamma_minus", number_or_null(b.gamma_minus)},
              {"A_plus", number_or_null(b.A_plus)},
              {"A_minus", number_or_null(b.A_minus)},
              {"phi", number_or_null(b.phi)},
              {"weak_term", number_or_null(b.weak_term)},
              {"strong_term", number_or_null(b.strong_term)},
              {"B", number_or_null(b.full_bound)},
              {"B1", number_or_null(b.B1)},
              {"B1_available", b.B1_available},
              {"strong_limit", number_or_null(b.strong_limit)},
              {"branch", b.j0_ge_j1 ? "J0>=J1" : "J0<J1"},
              {"degenerate", b.degenerate}};
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "$");
  reject_unknown(root, "", {"name", "code", "bath", "hamiltonian", "initial_state", "protocol",
                            "sweep", "tolerances", "output"});
  ExperimentConfig cfg;
  cfg.hash = fnv1a_hex(root.dump());
  if (root.contains("name")) {
    if (!root["name"].is_string()) throw SchemaError("name", "expected a string");
    cfg.name = root["name"].get<std::string>();
  }

  // code
  const json& code = require_field(root, "code", "");
  require_object(code, "code");
  reject_unknown(code, "code", {"generators"});
  const json& gens = require_field(code, "generators", "code");
  if (!gens.is_array() || gens.empty())
    throw SchemaError("code.generators", "expected a nonempty array of Pauli labels");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = index_path("code.generators", i);
    if (!gens[i].is_string()) throw SchemaError(p, "expected a Pauli label string");
    try {
      PauliOperator::parse(gens[i].get<std::string>());
    } catch (const Error& e) {
      throw SchemaError(p, e.what());
    }
    cfg.generators.push_back(gens[i].get<std::string>());
  }
  std::size_t n = 0;
  std::size_t k = 0;
  try {
    const auto built = StabilizerCode::build(cfg.generators);
    n = built.n();
    k = built.k();
  } catch (const Error& e) {
    throw SchemaError("code.generators", e.what());
  }

  // tolerances first: they are used by the state checks below
  if (root.contains("tolerances")) {
    const json& tol = root["tolerances"];
    require_object(tol, "tolerances");
    reject_unknown(tol, "tolerances", {"bound", "validation"});
    if (tol.contains("bound")) cfg.bound_tolerance = read_number(tol["bound"], "tolerances.bound");
    if (tol.contains("validation"))
      cfg.validation_tolerance = read_number(tol["validation"], "tolerances.validation");
    if (!(cfg.bound_tolerance >= 0.0)) throw SchemaError("tolerances.bound", "must be nonnegative");
    if (!(cfg.validation_tolerance > 0.0))
      throw SchemaError("tolerances.validation", "must be positive");
  }

  // bath
  if (root.contains("bath")) {
    const json& bath = root["bath"];
    require_object(bath, "bath");
    reject_unknown(bath, "bath", {"dim", "state"});
    cfg.bath_dim = read_positive_int(require_field(bath, "dim", "bath"), "bath.dim");
    if (bath.contains("state")) {
      cfg.bath_state = read_matrix(bath["state"], "bath.state");
      if (cfg.bath_state.rows() != static_cast<Eigen::Index>(cfg.bath_dim) ||
          cfg.bath_state.cols() != static_cast<Eigen::Index>(cfg.bath_dim))
        throw SchemaError("bath.state", "must be " + std::to_string(cfg.bath_dim) + "x" +
                                            std::to_string(cfg.bath_dim));
      if (!is_density(cfg.bath_state, cfg.validation_tolerance))
        throw SchemaError("bath.state", "not a density matrix");
    }
  }
  if ((std::size_t{1} << std::min<std::size_t>(n, 20)) * cfg.bath_dim > kMaxJointDim || n > 12)
    throw SchemaError("bath.dim", "joint dimension exceeds " + std::to_string(kMaxJointDim));

  // hamiltonian
  const json& ham = require_field(root, "hamiltonian", "");
  require_object(ham, "hamiltonian");
  reject_unknown(ham, "hamiltonian", {"terms"});
  const json& terms = require_field(ham, "terms", "hamiltonian");
  if (!terms.is_array()) throw SchemaError("hamiltonian.terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = index_path("hamiltonian.terms", i);
    const json& t = terms[i];
    require_object(t, tp);
    reject_unknown(t, tp, {"system", "bath", "coefficient", "profile"});
    HamiltonianTerm term;
    const json& sys = require_field(t, "system", tp);
    if (!sys.is_string()) throw SchemaError(tp + ".system", "expected a Pauli label string");
    try {
      term.system = PauliOperator::parse(sys.get<std::string>());
    } catch (const Error& e) {
      throw SchemaError(tp + ".system", e.what());
    }
    if (term.system.num_qubits() != n)
      throw SchemaError(tp + ".system", "acts on " + std::to_string(term.system.num_qubits()) +
                                            " qubits, the code has " + std::to_string(n));
    if (!term.system.is_hermitian())
      throw SchemaError(tp + ".system", "system factor must have phase +1 or -1");
    const auto bd = static_cast<Eigen::Index>(cfg.bath_dim);
    if (t.contains("bath")) {
      term.bath = read_matrix(t["bath"], tp + ".bath");
      if (term.bath.rows() != bd || term.bath.cols() != bd)
        throw SchemaError(tp + ".bath", "must be " + std::to_string(bd) + "x" + std::to_string(bd));
      if (hermiticity_residual(term.bath) > cfg.validation_tolerance)
        throw SchemaError(tp + ".bath", "bath operator is not Hermitian");
    } else {
      term.bath = Matrix::Identity(bd, bd);
    }
    if (t.contains("coefficient")) term.bath *= read_number(t["coefficient"], tp + ".coefficient");
    if (t.contains("profile")) {
      const json& prof = t["profile"];
      if (!prof.is_array()) throw SchemaError(tp + ".profile", "expected an array of segments");
      for (std::size_t s = 0; s < prof.size(); ++s) {
        const std::string sp = index_path(tp + ".profile", s);
        require_object(prof[s], sp);
        reject_unknown(prof[s], sp, {"t0", "t1", "scale"});
        ProfileSegment seg;
        seg.t0 = read_number(require_field(prof[s], "t0", sp), sp + ".t0");
        seg.t1 = read_number(require_field(prof[s], "t1", sp), sp + ".t1");
        if (prof[s].contains("scale")) seg.scale = read_number(prof[s]["scale"], sp + ".scale");
        if (!(seg.t1 > seg.t0)) throw SchemaError(sp, "t1 must exceed t0");
        term.profile.push_back(seg);
      }
    }
    cfg.terms.push_back(std::move(term));
  }

  // initial state
  const auto kdim = static_cast<Eigen::Index>(std::size_t{1} << k);
  if (root.contains("initial_state")) {
    const json& init = root["initial_state"];
    require_object(init, "initial_state");
    reject_unknown(init, "initial_state", {"logical", "logical_density"});
    if (init.contains("logical") == init.contains("logical_density"))
      throw SchemaError("initial_state", "give exactly one of logical or logical_density");
    if (init.contains("logical")) {
      const json& v = init["logical"];
      if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != kdim)
        throw SchemaError("initial_state.logical",
                          "expected " + std::to_string(kdim) + " amplitudes");
      Vector psi(kdim);
      for (Eigen::Index i = 0; i < kdim; ++i)
        psi(i) = read_complex(v[static_cast<std::size_t>(i)],
                              index_path("initial_state.logical", static_cast<std::size_t>(i)));
      if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw SchemaError("initial_state.logical", "state vector is not normalized");
      cfg.logical_state = psi * psi.adjoint();
      cfg.logical_pure = true;
    } else {
      cfg.logical_state = read_matrix(init["logical_density"], "initial_state.logical_density");
      if (cfg.logical_state.rows() != kdim || cfg.logical_state.cols() != kdim)
        throw SchemaError("initial_state.logical_density",
                          "must be " + std::to_string(kdim) + "x" + std::to_string(kdim));
      if (!is_density(cfg.logical_state, cfg.validation_tolerance))
        throw SchemaError("initial_state.logical_density", "not a density matrix");
      const double purity = (cfg.logical_state * cfg.logical_state).trace().real();
      cfg.logical_pure = std::abs(purity - 1.0) <= 1e-10;
    }
  } else {
    cfg.logical_state = Matrix::Zero(kdim, kdim);
    cfg.logical_state(0, 0) = 1.0;
  }

  if (root.contains("protocol")) {
    const json& p = root["protocol"];
    cfg.protocols = read_list(p, "protocol", read_protocol);
  }

  const json& sweep = require_field(root, "sweep", "");
  require_object(sweep, "sweep");
  reject_unknown(sweep, "sweep", {"tau", "M", "epsilon"});
  cfg.taus = read_list(require_field(sweep, "tau", "sweep"), "sweep.tau",
                       [](const json& j, const std::string& path) {
                         const double v = read_number(j, path);
                         if (!(v >= 0.0)) throw SchemaError(path, "tau must be nonnegative");
                         return v;
                       });
  cfg.Ms = read_list(require_field(sweep, "M", "sweep"), "sweep.M", read_positive_int);
  cfg.epsilons = read_list(require_field(sweep, "epsilon", "sweep"), "sweep.epsilon", read_epsilon);

  if (root.contains("output")) {
    const json& out = root["output"];
    require_object(out, "output");
    reject_unknown(out, "output", {"csv", "json"});
    if (out.contains("csv")) {
      if (!out["csv"].is_string()) throw SchemaError("output.csv", "expected a file name");
      cfg.csv_name = out["csv"].get<std::string>();
    }
    if (out.contains("json")) {
      if (!out["json"].is_string()) throw SchemaError("output.json", "expected a file name");
      cfg.json_name = out["json"].get<std::string>();
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::size_t SweepReport::violations() const {
  std::size_t count = 0;
  for (const auto& r : rows)
    if (r.in_hypothesis && !r.bound_satisfied) ++count;
  return count;
}

std::size_t SweepReport::out_of_hypothesis() const {
  std::size_t count = 0;
  for (const auto& r : rows)
    if (!r.in_hypothesis) ++count;
  return count;
}

SweepReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const StabilizerCode code = StabilizerCode::build(config.generators);
  const HamiltonianSpec h(code.n(), config.bath_dim, config.terms, config.validation_tolerance);

  std::vector<HamiltonianDecomposition> decomps;
  for (double tau : config.taus)
    decomps.push_back(decompose_hamiltonian(code, h, tau, config.validation_tolerance));

  const auto bd = static_cast<Eigen::Index>(config.bath_dim);
  const Matrix bath_state = config.bath_state.size() == 0
                                ? Matrix(Matrix::Identity(bd, bd) / static_cast<double>(bd))
                                : config.bath_state;
  const Matrix rho0 = kron(encode_logical_state(code, config.logical_state), bath_state);

  SweepReport report;
  report.name = config.name;
  report.config_hash = config.hash;
  report.generators = config.generators;
  report.n = code.n();
  report.k = code.k();
  report.Q = code.Q();
  report.bath_dim = config.bath_dim;

  for (std::size_t ti = 0; ti < config.taus.size(); ++ti)
    for (Protocol variant : config.protocols)
      for (double eps : config.epsilons)
        for (std::uint64_t M : config.Ms) {
          SweepRow row;
          row.variant = variant;
          row.Q = code.Q();
          row.tau = config.taus[ti];
          row.M = M;
          row.epsilon = eps;
          row.J0 = decomps[ti].J0;
          row.J1 = decomps[ti].J1;
          row.in_hypothesis = config.logical_pure;
          report.rows.push_back(std::move(row));
        }

  // Channel sanity per (variant, eps), shared by all rows.
  auto channel_residual = [&](Protocol variant, double eps) {
    const QuantumChannel ch = variant == Protocol::group ? weak_measure_group(code, eps)
                                                         : weak_measure_generators(code, eps);
    return ch.trace_preservation_residual(config.bath_dim);
  };

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= report.rows.size()) return;
      try {
        SweepRow& row = report.rows[i];
        const auto params =
            make_bound_parameters(row.Q, row.J0, row.J1, row.tau, row.M, row.epsilon, row.variant);
        row.bound = theorem1_bound(params);
        row.D_bound = row.bound.full_bound;
        row.D_strong_limit = row.bound.strong_limit;
        row.B1_over_M = row.bound.B1 / static_cast<double>(row.M);
        if (options.simulate) {
          const auto result = run_protocol(code, h, rho0, row.tau, row.M, row.epsilon, row.variant,
                                           config.validation_tolerance);
          row.simulated = true;
          row.D_sim = result.distance;
          row.cycle_distances = result.cycle_distances;
          row.worst_state = result.worst;
          row.channel_trace_residual = channel_residual(row.variant, row.epsilon);
          row.bound_satisfied = row.D_sim <= row.D_bound + config.bound_tolerance;
          if (!row.bound_satisfied)
            log_warn("bound exceeded at M=" + std::to_string(row.M) + ": D_sim=" +
                     format_double(row.D_sim) + " B=" + format_double(row.D_bound));
        } else {
          row.D_sim = std::numeric_limits<double>::quiet_NaN();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        next.store(report.rows.size());
        return;
      }
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, 64));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  log_info("evaluated " + std::to_string(report.rows.size()) + " sweep points");
  return report;
}

std::string report_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "variant,Q,tau,M,epsilon,D_sim,D_bound,D_strong_limit,B1_over_M,bound_satisfied,"
        "in_hypothesis\n";
  for (const auto& r : report.rows) {
    os << protocol_name(r.variant) << ',' << r.Q << ',' << format_double(r.tau) << ',' << r.M
       << ',' << format_double(r.epsilon) << ',' << format_double(r.D_sim) << ','
       << format_double(r.D_bound) << ',' << format_double(r.D_strong_limit) << ','
       << format_double(r.B1_over_M) << ',' << (r.bound_satisfied ? "true" : "false") << ','
       << (r.in_hypothesis ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string report_json(const SweepReport& report) {
  json rows = json::array();
  double worst_ratio = 0.0;
  for (const auto& r : report.rows) {
    json row{{"variant", protocol_name(r.variant)},
             {"Q", r.Q},
             {"tau", number_or_null(r.tau)},
             {"M", r.M},
             {"epsilon", number_or_null(r.epsilon)},
             {"J0", number_or_null(r.J0)},
             {"J1", number_or_null(r.J1)},
             {"D_sim", number_or_null(r.D_sim)},
             {"D_bound", number_or_null(r.D_bound)},
             {"D_strong_limit", number_or_null(r.D_strong_limit)},
             {"B1_over_M", number_or_null(r.B1_over_M)},
             {"bound_satisfied", r.bound_satisfied},
             {"in_hypothesis", r.in_hypothesis},
             {"bound", bound_to_json(r.bound)}};
    if (r.simulated) {
      row["cycle_distances"] = r.cycle_distances;
      row["diagnostics"] = json{{"max_hermiticity", r.worst_state.hermiticity},
                                {"max_trace_error", r.worst_state.trace_error},
                                {"min_eigenvalue", r.worst_state.min_eigenvalue},
                                {"channel_trace_residual", r.channel_trace_residual}};
      if (r.D_bound > 0.0) worst_ratio = std::max(worst_ratio, r.D_sim / r.D_bound);
    }
    rows.push_back(std::move(row));
  }
  json doc{{"tool", "zeno_bench"},
           {"version", report.version},
           {"config_hash", report.config_hash},
           {"name", report.name},
           {"code",
            {{"generators", report.generators},
             {"n", report.n},
             {"k", report.k},
             {"Q", report.Q},
             {"bath_dim", report.bath_dim}}},
           {"rows", std::move(rows)},
           {"summary",
            {{"rows", report.rows.size()},
             {"violations", report.violations()},
             {"out_of_hypothesis", report.out_of_hypothesis()},
             {"all_satisfied", report.violations() == 0},
             {"max_D_sim_over_bound", worst_ratio}}}};
  return doc.dump(2) + "\n";
}

std::string bound_report_json(const BoundParameters& params, const BoundReport& report) {
  json doc{{"parameters",
            {{"Q", params.Q},
             {"q_effective", params.q_effective},
             {"J0", params.J0},
             {"J1", params.J1},
             {"Jm", params.Jm()},
             {"tau", params.tau},
             {"M", params.M},
             {"epsilon", number_or_null(params.epsilon)}}},
           {"bound", bound_to_json(report)}};
  return doc.dump(2) + "\n";
}

void write_report(const SweepReport& report, const ExperimentConfig& config,
                  const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + dir + ": " + ec.message());
  const auto write = [&](const std::string& name, const std::string& text) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out << text;
  };
  write(config.csv_name, report_csv(report));
  write(config.json_name, report_json(report));
}

}  // namespace zeno
