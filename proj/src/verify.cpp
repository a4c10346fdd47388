#include "zeno/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "zeno/bounds.hpp"
#include "zeno/errors.hpp"
#include "zeno/measurement.hpp"
#include "zeno/stabilizer.hpp"

namespace zeno {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Tracks the worst value of one property and its witness.
struct Worst {
  double value = 0.0;
  std::string witness;
  void update(double v, const std::string& w) {
    if (std::isnan(v) || v > value) {
      value = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
      witness = w;
    }
  }
};

class Recorder {
 public:
  explicit Recorder(VerifyResult& out) : out_(out) {}

  void check(const std::string& name, const Worst& w, double tol) {
    const bool ok = w.value <= tol;
    line(ok, name, "worst=" + sci(w.value) + " tol=" + sci(tol), w.witness);
  }
  void check(const std::string& name, bool ok, const std::string& witness) {
    line(ok, name, "", witness);
  }

 private:
  void line(bool ok, const std::string& name, const std::string& detail, const std::string& w) {
    ++out_.properties;
    std::ostringstream os;
    os << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) os << ' ' << detail;
    if (!ok && !w.empty()) os << " witness: " << w;
    os << '\n';
    out_.report += os.str();
    if (!ok) {
      ++out_.failures;
      out_.passed = false;
    }
  }
  VerifyResult& out_;
};

using Rng = std::mt19937_64;

Matrix random_matrix(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Matrix random_hermitian(Eigen::Index d, Rng& rng) {
  const Matrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

Matrix random_density(Eigen::Index d, Rng& rng) {
  const Matrix m = random_matrix(d, rng);
  Matrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

PauliOperator random_pauli(std::size_t n, Rng& rng, bool hermitian_only = false) {
  static const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> pick(0, 3);
  std::string label(n, 'I');
  for (auto& c : label) c = letters[pick(rng)];
  int k = pick(rng);
  if (hermitian_only) k &= 2;
  return PauliOperator::parse(label, static_cast<Phase>(k));
}

const std::vector<std::vector<std::string>>& test_codes() {
  static const std::vector<std::vector<std::string>> codes{
      {"ZZI", "IZZ"}, {"ZZ", "XX"}, {"XXX"}, {"ZZII", "IZZI", "IIZZ"}};
  return codes;
}

void pauli_suite(Recorder& rec, Rng& rng) {
  Worst square, homo, assoc, comm, herm;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    const auto p = random_pauli(n, rng);
    const auto q = random_pauli(n, rng);
    const auto r = random_pauli(n, rng);
    const std::string w = p.to_string() + "," + q.to_string() + "," + r.to_string();

    const auto pp = p * p;
    square.update(pp.is_identity_up_to_phase() && pp.is_hermitian() ? 0.0 : 1.0, p.to_string());

    const Matrix mp = to_matrix(p), mq = to_matrix(q), mr = to_matrix(r);
    homo.update(max_abs(mp * mq - to_matrix(p * q)), w);
    assoc.update(max_abs(to_matrix((p * q) * r) - to_matrix(p * (q * r))), w);

    const bool matrix_commute = max_abs(commutator(mp, mq)) < 1e-12;
    comm.update(matrix_commute == commutes(p, q) ? 0.0 : 1.0, w);

    if (p.is_hermitian()) herm.update(max_abs(mp - mp.adjoint()), p.to_string());
  }
  rec.check("pauli.square_is_plus_minus_identity", square, 0.0);
  rec.check("pauli.matrix_homomorphism", homo, 1e-12);
  rec.check("pauli.associativity", assoc, 1e-12);
  rec.check("pauli.commutes_matches_matrix", comm, 0.0);
  rec.check("pauli.hermitian_structure", herm, 0.0);
}

void stabilizer_suite(Recorder& rec, Rng& rng) {
  Worst complete, ortho, idem, hs, graded, bracket, sigma_sym;
  bool balanced = true;
  std::string balance_witness;
  for (const auto& gens : test_codes()) {
    const auto code = StabilizerCode::build(gens);
    for (std::size_t bath : {1, 2}) {
      const auto d = static_cast<Eigen::Index>((std::size_t{1} << code.n()) * bath);
      const std::string tag = gens.front() + "... bath=" + std::to_string(bath);
      for (int trial = 0; trial < 3; ++trial) {
        const Matrix a = random_hermitian(d, rng);
        const Matrix b = random_hermitian(d, rng);
        std::vector<Matrix> ag, bg;
        Matrix sum = Matrix::Zero(d, d);
        for (std::size_t g = 0; g < code.group_size(); ++g) {
          ag.push_back(apply_isotypical_projector(code, static_cast<GroupLabel>(g), a));
          bg.push_back(apply_isotypical_projector(code, static_cast<GroupLabel>(g), b));
          sum += ag.back();
        }
        complete.update(max_abs(sum - a), tag);
        for (std::size_t g = 0; g < code.group_size(); ++g) {
          idem.update(max_abs(apply_isotypical_projector(code, static_cast<GroupLabel>(g), ag[g]) - ag[g]),
                      tag + " g=" + std::to_string(g));
          for (std::size_t h = 0; h < code.group_size(); ++h) {
            const std::string w = tag + " g=" + std::to_string(g) + " h=" + std::to_string(h);
            if (g != h) {
              ortho.update(max_abs(apply_isotypical_projector(code, static_cast<GroupLabel>(g), ag[h])), w);
              hs.update(std::abs((ag[g].adjoint() * bg[h]).trace()), w);
            }
            const auto gh = static_cast<GroupLabel>(g ^ h);
            const Matrix prod = ag[g] * bg[h];
            graded.update(max_abs(apply_isotypical_projector(code, gh, prod) - prod), w);
            const Matrix lie = Complex(0.0, 1.0) * commutator(ag[g], bg[h]);
            bracket.update(max_abs(apply_isotypical_projector(code, gh, lie) - lie), w);
          }
        }
      }
    }
    for (std::size_t g = 0; g < code.group_size(); ++g) {
      std::size_t ones = 0;
      for (std::size_t s = 0; s < code.group_size(); ++s) {
        const auto& eg = code.element(static_cast<GroupLabel>(g));
        const auto& es = code.element(static_cast<GroupLabel>(s));
        sigma_sym.update(code.sigma(eg, es) == code.sigma(es, eg) ? 0.0 : 1.0,
                         eg.to_string() + "," + es.to_string());
        ones += static_cast<std::size_t>(code.sigma(eg, es));
      }
      const std::size_t expect = g == 0 ? 0 : code.group_size() / 2;
      if (ones != expect) {
        balanced = false;
        balance_witness = code.element(static_cast<GroupLabel>(g)).to_string();
      }
    }
  }
  rec.check("stabilizer.projector_completeness", complete, 1e-10);
  rec.check("stabilizer.projector_idempotence", idem, 1e-10);
  rec.check("stabilizer.projector_orthogonality", ortho, 1e-10);
  rec.check("stabilizer.hilbert_schmidt_orthogonality", hs, 1e-10);
  rec.check("stabilizer.graded_product", graded, 1e-10);
  rec.check("stabilizer.graded_lie_bracket", bracket, 1e-10);
  rec.check("stabilizer.sigma_symmetry", sigma_sym, 0.0);
  rec.check("stabilizer.sigma_balanced", balanced, balance_witness);

  const auto code = StabilizerCode::build(std::vector<std::string>{"ZZI", "IZZ"});
  const auto dims = verify_isotypical_dimensions(code, 2);
  std::ostringstream w;
  w << "a=" << dims.a.front() << " (expected " << dims.expected_a << ") b=" << dims.b.front()
    << " (expected " << dims.expected_b << ")";
  rec.check("stabilizer.isotypical_dimensions", dims.consistent, w.str());
}

void measurement_suite(Recorder& rec, Rng& rng, double zeta_perturbation) {
  Worst eigen, convex, povm, group_damp, gen_damp, perm, trace, hermit, positive;
  const double eps_values[] = {0.3, 1.0, std::log(2.0 + std::sqrt(3.0)), 2.5};
  for (const auto& gens : test_codes()) {
    const auto code = StabilizerCode::build(gens);
    for (std::size_t bath : {1, 2}) {
      const auto d = static_cast<Eigen::Index>((std::size_t{1} << code.n()) * bath);
      for (double eps : eps_values) {
        const std::string tag = gens.front() + "... bath=" + std::to_string(bath) + " eps=" + sci(eps);
        const double zeta = zeta_of(eps) + zeta_perturbation;
        const Matrix a = random_hermitian(d, rng);
        const auto group = weak_measure_group(code, eps);
        const auto generators = weak_measure_generators(code, eps);
        for (std::size_t g = 0; g < code.group_size(); ++g) {
          const auto gl = static_cast<GroupLabel>(g);
          const Matrix ag = apply_isotypical_projector(code, gl, a);
          for (std::size_t s = 1; s < code.group_size(); ++s) {
            const auto& S = code.element(static_cast<GroupLabel>(s));
            const double factor = sigma_labels(gl, static_cast<GroupLabel>(s)) ? zeta : 1.0;
            eigen.update(max_abs(weak_measure_single(S, eps).apply(ag) - factor * ag),
                         tag + " S=" + S.to_string() + " g=" + std::to_string(g));
          }
          const double fg = g == 0 ? 1.0 : std::pow(zeta_of(eps), code.q());
          group_damp.update(max_abs(group.apply(ag) - fg * ag), tag + " g=" + std::to_string(g));
          const double fgen = std::pow(zeta_of(eps), static_cast<double>(__builtin_popcount(gl)));
          gen_damp.update(max_abs(generators.apply(ag) - fgen * ag), tag + " g=" + std::to_string(g));
        }

        // permutation of the group product
        auto stages = group.stages();
        std::reverse(stages.begin(), stages.end());
        std::shuffle(stages.begin(), stages.end(), rng);
        const QuantumChannel shuffled(ChannelVariant::group, eps, stages);
        perm.update(max_abs(shuffled.apply(a) - group.apply(a)), tag);

        const Matrix out = group.apply(a);
        trace.update(std::abs(out.trace() - a.trace()), tag);
        hermit.update(hermiticity_residual(out), tag);
        const Matrix rho = random_density(d, rng);
        positive.update(std::max(0.0, -min_eigenvalue(generators.apply(rho))), tag);

        if (d <= 8) {
          const auto& S = code.generators().front();
          const Matrix single = weak_measure_single(S, eps).superoperator(bath);
          const Matrix proj = weak_measure_single(S, std::numeric_limits<double>::infinity()).superoperator(bath);
          const Matrix id = Matrix::Identity(single.rows(), single.cols());
          convex.update(max_abs(single - ((1.0 - zeta_of(eps)) * proj + zeta_of(eps) * id)), tag);
          povm.update(max_abs(single - three_term_povm(S, eps).superoperator(bath)), tag);
        }
      }
    }
  }
  rec.check("measurement.eigen_action_law", eigen, 1e-11);
  rec.check("measurement.group_damping", group_damp, 1e-11);
  rec.check("measurement.generator_damping", gen_damp, 1e-11);
  rec.check("measurement.convex_form", convex, 1e-12);
  rec.check("measurement.three_term_povm_equivalence", povm, 1e-12);
  rec.check("measurement.order_independence", perm, 1e-12);
  rec.check("measurement.trace_preservation", trace, 1e-11);
  rec.check("measurement.hermiticity_preservation", hermit, 1e-12);
  rec.check("measurement.positivity", positive, 1e-10);

  bool monotone = true;
  std::string mw;
  double prev = 2.0;
  for (double eps = 0.05; eps < 10.0; eps += 0.05) {
    const double f = std::pow(zeta_of(eps), 2.0);
    if (!(f < prev)) {
      monotone = false;
      mw = "eps=" + sci(eps);
    }
    prev = f;
  }
  rec.check("measurement.monotone_damping", monotone, mw);
}

// Brute-force count of ordered l-tuples of non-identity elements whose
// product is the identity / a fixed non-identity element, using the group
// multiplication of the Pauli operators themselves.
void count_tuples(const StabilizerCode& code, unsigned l, std::uint64_t& to_identity,
                  std::uint64_t& to_g) {
  const std::size_t size = code.group_size();
  std::vector<std::vector<std::size_t>> table(size, std::vector<std::size_t>(size));
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      table[a][b] = code.label_of(code.element(static_cast<GroupLabel>(a)) *
                                  code.element(static_cast<GroupLabel>(b)));
  std::vector<std::uint64_t> ways(size, 0);
  ways[0] = 1;
  for (unsigned step = 0; step < l; ++step) {
    std::vector<std::uint64_t> next(size, 0);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t s = 1; s < size; ++s) next[table[a][s]] += ways[a];
    ways = std::move(next);
  }
  to_identity = ways[0];
  to_g = ways[size - 1];
}

void bounds_suite(Recorder& rec, Rng& rng) {
  Worst oracle, recurrence, summand, vieta_sum, vieta_prod, gamma_bin, series, beta_zero;
  for (std::uint64_t Q : {1, 3, 7})
    for (double beta : {0.01, 0.1, 0.5})
      for (double xi : {0.1, 0.5, 0.9}) {
        for (std::uint64_t M = 1; M <= 15; ++M) {
          const std::string w = "Q=" + std::to_string(Q) + " beta=" + sci(beta) + " xi=" + sci(xi) +
                                " M=" + std::to_string(M);
          const double direct = phi_direct(Q, beta, xi, M);
          const auto closed = phi_closed(Q, beta, xi, M);
          oracle.update(std::abs(closed.value - direct) / std::abs(direct), w);
          if (M >= 3) recurrence.update(sum_recurrence_residual(Q, beta, xi, M, false), w);
        }
        const auto c = phi_closed(Q, beta, xi, 5);
        const double q = static_cast<double>(Q);
        vieta_sum.update(std::abs(c.gamma_plus + c.gamma_minus - (1.0 + beta + (1.0 + q * beta) * xi)), "");
        vieta_prod.update(std::abs(c.gamma_plus * c.gamma_minus - (1.0 + beta + q * beta) * xi), "");
      }
  std::uniform_int_distribution<long> pick(1, 12);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  int accepted = 0;
  while (accepted < 200) {
    const long M = pick(rng) + 2, u = pick(rng), eta = pick(rng), r = pick(rng);
    if (r > eta || r > u || eta - r > M - 2 - u) continue;
    const std::uint64_t Q = (std::uint64_t{1} << (1 + accepted % 3)) - 1;
    const double beta = unit(rng), xi = unit(rng);
    summand.update(summand_recurrence_residual(Q, beta, xi, M, u, eta, r),
                   "M=" + std::to_string(M) + " u=" + std::to_string(u) + " eta=" +
                       std::to_string(eta) + " r=" + std::to_string(r));
    ++accepted;
  }
  rec.check("bounds.phi_closed_matches_direct", oracle, 1e-9);
  rec.check("bounds.sum_recurrence", recurrence, 1e-9);
  rec.check("bounds.summand_recurrence", summand, 1e-10);
  rec.check("bounds.vieta_sum", vieta_sum, 1e-12);
  rec.check("bounds.vieta_product", vieta_prod, 1e-12);

  for (double xi : {0.1, 0.5}) {
    const auto c = phi_closed(3, 1e-9, xi, 4);
    beta_zero.update(std::max(std::abs(c.gamma_plus - 1.0), std::abs(c.gamma_minus - xi)),
                     "xi=" + sci(xi));
  }
  rec.check("bounds.beta_zero_roots", beta_zero, 1e-8);

  bool counts_ok = true;
  std::string cw;
  for (const auto& gens : {std::vector<std::string>{"ZZI", "IZZ"},
                           std::vector<std::string>{"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}}) {
    const auto code = StabilizerCode::build(gens);
    for (unsigned l = 0; l <= 5; ++l) {
      std::uint64_t id = 0, g = 0;
      count_tuples(code, l, id, g);
      if (id != f_count(code.Q(), l, true) || g != f_count(code.Q(), l, false)) {
        counts_ok = false;
        cw = "Q=" + std::to_string(code.Q()) + " l=" + std::to_string(l);
      }
    }
  }
  rec.check("bounds.f_count_enumeration", counts_ok, cw);

  for (std::uint64_t Q : {1, 3, 15})
    for (unsigned l = 0; l <= 8; ++l)
      for (bool target : {true, false}) {
        const double a = gamma_l(Q, 0.7, 1.3, l, target);
        const double b = gamma_l_binomial(Q, 0.7, 1.3, l, target);
        gamma_bin.update(std::abs(a - b) / std::max(1.0, std::abs(a)),
                         "Q=" + std::to_string(Q) + " l=" + std::to_string(l));
      }
  rec.check("bounds.gamma_l_binomial", gamma_bin, 1e-12);

  for (double x : {1e-2, 1e-3, 1e-4}) {
    const auto p = make_bound_parameters(3, 0.4, 0.9, x, 1, 1.0, Protocol::group);
    const double expansion = x * 0.4 + x * x * (0.16 + 3 * 0.81) / 2.0;
    series.update(std::abs(big_gamma(p, true) - expansion) / (x * x * x), "tau/M=" + sci(x));
  }
  rec.check("bounds.gamma_identity_series", series, 10.0);

  bool mono = true, order = true, strong = true;
  std::string mw, ow, sw;
  for (double j0 : {0.05, 0.2})
    for (double j1 : {0.1, 0.3})
      for (std::uint64_t M : {1, 4, 32}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double eps : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
          const auto grp = theorem1_bound(make_bound_parameters(3, j0, j1, 1.0, M, eps, Protocol::group));
          const auto gen = theorem1_bound(make_bound_parameters(3, j0, j1, 1.0, M, eps, Protocol::generators));
          const std::string w = "J0=" + sci(j0) + " J1=" + sci(j1) + " M=" + std::to_string(M) + " eps=" + sci(eps);
          if (grp.full_bound > prev) {
            mono = false;
            mw = w;
          }
          if (gen.full_bound < grp.full_bound) {
            order = false;
            ow = w;
          }
          prev = grp.full_bound;
        }
        const auto inf = theorem1_bound(make_bound_parameters(
            3, j0, j1, 1.0, M, std::numeric_limits<double>::infinity(), Protocol::group));
        if (inf.full_bound != strong_limit(3, j0, j1, 1.0, M)) {
          strong = false;
          sw = "J0=" + sci(j0) + " J1=" + sci(j1) + " M=" + std::to_string(M);
        }
      }
  rec.check("bounds.monotone_in_epsilon", mono, mw);
  rec.check("bounds.generators_not_below_group", order, ow);
  rec.check("bounds.strong_limit_consistency", strong, sw);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"pauli", "stabilizer", "measurement", "bounds", "all"};
  return names;
}

VerifyResult run_verify(const std::string& suite, const VerifyOptions& options) {
  if (std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
    throw Error(ErrorCode::domain, "unknown verify suite '" + suite + "'");
  VerifyResult out;
  out.report = "verify suite=" + suite + " seed=" + std::to_string(options.seed) + "\n";
  Recorder rec(out);
  // One generator per suite so a suite's draws do not depend on which
  // other suites ran.
  auto seeded = [&](std::uint64_t salt) { return Rng(options.seed * 0x9e3779b97f4a7c15ULL + salt); };
  const bool all = suite == "all";
  if (all || suite == "pauli") {
    Rng rng = seeded(1);
    pauli_suite(rec, rng);
  }
  if (all || suite == "stabilizer") {
    Rng rng = seeded(2);
    stabilizer_suite(rec, rng);
  }
  if (all || suite == "measurement") {
    Rng rng = seeded(3);
    measurement_suite(rec, rng, options.zeta_perturbation);
  }
  if (all || suite == "bounds") {
    Rng rng = seeded(4);
    bounds_suite(rec, rng);
  }
  out.report += std::string("RESULT ") + (out.passed ? "pass" : "fail") + " (" +
                std::to_string(out.properties - out.failures) + "/" +
                std::to_string(out.properties) + " properties)\n";
  return out;
}

VerifyResult run_recurrence_check(double tolerance) {
  VerifyResult out;
  std::ostringstream os;
  os << "Q,beta,xi,M,phi_direct,phi_closed,rel_error,recurrence_residual\n";
  double worst_err = 0.0, worst_rec = 0.0;
  std::size_t points = 0;
  for (std::uint64_t Q : {1, 3, 7})
    for (double beta : {0.01, 0.1, 0.5})
      for (double xi : {0.1, 0.5, 0.9})
        for (std::uint64_t M = 1; M <= 15; ++M) {
          const double direct = phi_direct(Q, beta, xi, M);
          const double closed = phi_closed(Q, beta, xi, M).value;
          const double err = std::abs(closed - direct) / std::abs(direct);
          const double rec = M >= 3 ? sum_recurrence_residual(Q, beta, xi, M, false) : 0.0;
          worst_err = std::max(worst_err, err);
          worst_rec = std::max(worst_rec, rec);
          char buf[160];
          std::snprintf(buf, sizeof buf, "%llu,%g,%g,%llu,%.17g,%.17g,%.3e,%.3e\n",
                        static_cast<unsigned long long>(Q), beta, xi,
                        static_cast<unsigned long long>(M), direct, closed, err, rec);
          os << buf;
          ++points;
        }
  out.properties = 2;
  out.passed = worst_err < tolerance && worst_rec < tolerance;
  out.failures = (worst_err < tolerance ? 0 : 1) + (worst_rec < tolerance ? 0 : 1);
  os << "# points=" << points << " max_rel_error=" << sci(worst_err)
     << " max_recurrence_residual=" << sci(worst_rec) << " tol=" << sci(tolerance) << " -> "
     << (out.passed ? "pass" : "fail") << "\n";
  out.report = os.str();
  return out;
}

}  // namespace zeno
