#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "capamp/capamp.hpp"

namespace capamp::cli {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

class Recorder {
 public:
  explicit Recorder(VerificationReport& r) : report_(r) {}

  void check(std::string id, double expected, double actual, double tol, Relation rel) {
    bool pass = false;
    switch (rel) {
      case Relation::Abs: pass = std::abs(actual - expected) <= tol; break;
      case Relation::Le: pass = actual <= expected + tol; break;
      case Relation::Ge: pass = actual >= expected - tol; break;
      case Relation::Lt: pass = actual < expected; break;
      case Relation::Gt: pass = actual > expected; break;
    }
    report_.checks.push_back({std::move(id), expected, actual, tol, rel, pass});
    report_.pass = report_.pass && pass;
  }

  void truth(std::string id, bool value) {
    check(std::move(id), 1.0, value ? 1.0 : 0.0, 0.0, Relation::Abs);
  }

 private:
  VerificationReport& report_;
};

ComplexMatrix random_density(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  const ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

const std::vector<double> kPbitQ{0.3, 0.5, 0.75};
const std::vector<double> kFive{0.1, 0.3, 0.5, 0.7, 0.9};

void lemmas(Recorder& rec, const VerifyOptions& o) {
  for (double q : kPbitQ) {
    for (int d : {2, 3}) {
      const std::string tag = "q=" + fmt(q) + ",d=" + fmt(d);
      const DensityOperator g = gamma_qd(q, d);
      rec.check("ac01/" + tag + "/full", 1.0, coherent_info_state(g, {0}, {1, 2, 3}), o.tol,
                Relation::Abs);
      rec.check("ac01/" + tag + "/key", 1.0 - binary_entropy(q), coherent_info_state(g, {0}, {1}),
                o.tol, Relation::Abs);
    }
  }

  std::mt19937_64 rng(o.seed);
  for (double q : kPbitQ) {
    for (int d : {2, 3}) {
      const std::string tag = "q=" + fmt(q) + ",d=" + fmt(d);
      const Channel ch = private_channel(q, d);
      const ComplexMatrix target =
          permute_subsystems(gamma_qd(q, d).matrix(), {2, 2, d, d}, {0, 2, 1, 3});
      rec.check("ac02/" + tag + "/choi", 0.0, 0.5 * trace_norm(choi(ch).matrix() - target), 1e-10,
                Relation::Le);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const ComplexMatrix x = random_density(2 * d, rng);
        worst = std::max(worst, trace_norm(apply_map(ch, x) - private_channel_action(q, d, x)));
      }
      rec.check("ac02/" + tag + "/action", 0.0, worst, o.tol, Relation::Le);
    }
  }

  for (int d : {2, 3}) {
    const std::string tag = "d=" + fmt(d);
    const Channel ch = private_channel(private_channel_special_q(d), d);
    rec.check("ac03/" + tag + "/ansatz", 1.0 / d, q1_ansatz_value(ch), o.tol, Relation::Abs);
    OptimizerConfig cfg;
    cfg.restarts = 100;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    const OptimizerResult r = q1_optimize(ch, cfg);
    double top = r.restart_values.front();
    for (double v : r.restart_values) top = std::max(top, v);
    rec.check("ac03/" + tag + "/restarts-max", 1.0 / d, top, 1e-6, Relation::Le);
    rec.check("ac03/" + tag + "/restarts-reach", 1.0 / d, top, 1e-6, Relation::Ge);
  }

  for (int d : {2, 3}) {
    rec.check("ac04/d=" + fmt(d), 2.0 / d, multi_copy_ansatz_value(2, d, o.dimension_cap), o.tol,
              Relation::Abs);
  }
}

void amplification(Recorder& rec, const VerifyOptions& o) {
  for (int d = 2; d <= 5; ++d) {
    const SymAsym p = sym_asym_projectors(d);
    const DensityOperator s1(p.sym / dim_sym(d), {d, d});
    const DensityOperator s2(p.asym / dim_asym(d), {d, d});
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      rec.check("ac05/q=" + fmt(q) + ",d=" + fmt(d), transposition_bound_closed(q, d),
                transposition_bound_general(q, s1, s2, d), 1e-10, Relation::Abs);
    }
    rec.check("ac05/special,d=" + fmt(d), std::log2(1.0 + 1.0 / d),
              transposition_bound_closed(private_channel_special_q(d), d), 1e-10, Relation::Abs);
  }

  for (int d : {2, 3}) {
    for (double lambda : kFive) {
      const SymAsymOutputs j = j_sym_asym(erasure_channel(lambda, d), d);
      for (double q : kFive) {
        rec.check("ac06/d=" + fmt(d) + ",lambda=" + fmt(lambda) + ",q=" + fmt(q),
                  erasure_holevo_closed(q, lambda), holevo({{q, 1.0 - q}, {j.sym, j.asym}}), o.tol,
                  Relation::Abs);
      }
    }
  }

  for (int d : {2, 3, 5}) {
    for (double p : kFive) {
      const SymAsymOutputs j = j_sym_asym(depolarizing_channel(p, d), d);
      for (double q : kFive) {
        rec.check("ac07/d=" + fmt(d) + ",p=" + fmt(p) + ",q=" + fmt(q),
                  depolarizing_holevo_closed(q, p, d), holevo({{q, 1.0 - q}, {j.sym, j.asym}}),
                  o.tol, Relation::Abs);
      }
    }
  }

  const SweepGrid g = sweep(MarginKind::Erasure, 2, kDefaultResolution, o.threads);
  double negative = 0.0;
  for (double m : g.margins) negative += m < 0.0 ? 1.0 : 0.0;
  rec.check("ac08/negative-cells", 0.0, negative, 0.0, Relation::Gt);
  rec.check("ac08/margin(lambda=0.5,q=0.75)", -0.0094, erasure_margin(0.75, 2, 0.5), 1e-4,
            Relation::Abs);
  AmplificationSearch search;
  search.threads = o.threads;
  auto min_dim = [&](MarginKind kind, CaseFilter filter) {
    const std::optional<int> d = min_amplification_dimension(kind, filter, 16, kDefaultResolution, search);
    return d ? static_cast<double>(*d) : -1.0;
  };
  rec.check("ac08/min-dimension", 2.0, min_dim(MarginKind::Erasure, CaseFilter::Any), 0.0,
            Relation::Abs);
  rec.check("ac09/min-dimension-case2", 5.0, min_dim(MarginKind::Depolarizing, CaseFilter::Case2),
            0.0, Relation::Abs);
  rec.check("ac09/min-dimension-case1", 11.0, min_dim(MarginKind::Depolarizing, CaseFilter::Case1),
            0.0, Relation::Abs);
}

void gap(Recorder& rec, const VerifyOptions& o) {
  for (int d : {2, 3, 4}) {
    const std::string tag = "d=" + fmt(d);
    const Channel ch = private_channel(private_channel_special_q(d), d);
    const WitnessCheck w = verify_beta_witness(ch, private_channel_beta_witness(d));
    rec.truth("ac10/" + tag + "/feasible", w.feasible);
    rec.check("ac10/" + tag + "/trX", 2.0, w.value, o.tol, Relation::Abs);
    const ComplexMatrix shield = identity(d) / static_cast<double>(d);
    const Ensemble ens{{0.5, 0.5},
                       {DensityOperator(kron(outer(basis_vector(2, 0)), shield), {2, d}),
                        DensityOperator(kron(outer(basis_vector(2, 1)), shield), {2, d})}};
    rec.check("ac10/" + tag + "/private-info", 1.0, private_info(ens, ch), o.tol, Relation::Abs);
  }
  // n copies of the d = n^2 channel: Q = n/d, P = n log2 tr X.
  for (int n : {2, 3, 4}) {
    const int d = n * n;
    const std::string tag = "n=" + fmt(n);
    const double q = n * (1.0 / d);
    const double p = n * std::log2(private_channel_beta_witness(d).x.trace().real());
    rec.check("ac10/" + tag + "/Q", 1.0 / n, q, o.tol, Relation::Abs);
    rec.check("ac10/" + tag + "/P", static_cast<double>(n), p, o.tol, Relation::Abs);
    rec.check("ac10/" + tag + "/tradeoff", privacy_quantum_tradeoff(std::pow(2.0 * d, n), q), p,
              o.tol, Relation::Le);
  }
}

void superactivation(Recorder& rec, const VerifyOptions& o) {
  const DensityOperator z = zeta_state(1.0 / 3.0, 2, 1, 1, 1, o.dimension_cap);
  const IndexSet bob = zeta_bob_systems(1, 1, 1);
  rec.check("ac11/trace", 1.0, z.matrix().trace().real(), 1e-12, Relation::Abs);
  rec.check("ac11/ppt(q=1/3)", 0.0, ppt_min_eigenvalue(z, bob), 1e-10, Relation::Ge);
  rec.check("ac11/ppt(q=0.4)", -1e-6,
            ppt_min_eigenvalue(zeta_state(0.4, 2, 1, 1, 1, o.dimension_cap), bob), 0.0,
            Relation::Lt);

  {
    const Channel ch = tensor(private_channel(0.75, 2), erasure_channel(0.9, 2));
    const DensityOperator rho(kron(identity(2) / 2.0, outer(max_entangled(2))), ch.in_dims());
    ApproxPrivateParams params;
    params.c = 0.5;
    params.lambda = 0.9;
    const double bound = approx_private_lower_bound(params);
    const double value = coherent_info(ch, rho);
    rec.check("ac12/lower-bound", bound, value, o.tol, Relation::Ge);
    rec.check("ac12/equality", bound, value, o.tol, Relation::Abs);
  }

  for (double y : {0.1, 0.3, 0.5}) {
    rec.check("ac13/g(ginv(" + fmt(y) + "))", y, separation_g(separation_g_inverse(y, 2), 2), o.tol,
              Relation::Abs);
  }
  double violations = 0.0;
  for (double lambda : kFive) {
    for (double c : {0.0, 0.5, 0.9}) {
      for (double eps : {0.0, 0.01, 0.05}) {
        for (int d : {2, 3}) {
          ApproxPrivateParams p;
          p.epsilon = eps;
          p.c = c;
          p.lambda = lambda;
          p.d = d;
          if (separation_delta(p) > 0.0 && !(separation_lower_bound(p) > 0.0)) violations += 1.0;
        }
      }
    }
  }
  rec.check("ac13/positive-when-delta-positive", 0.0, violations, 0.0, Relation::Abs);

  for (double kappa : {0.05, 0.1, 0.3}) {
    for (int n = 2; n <= 6; ++n) {
      const double lambda = additivity_lambda(kappa, n);
      double worst = -1.0;
      for (int ell = 1; ell < n; ++ell) {
        worst = std::max(worst, flag_additivity_margin(kappa, lambda, n, ell));
      }
      rec.check("ac14/kappa=" + fmt(kappa) + ",n=" + fmt(n), 0.0, worst, 0.0, Relation::Le);
    }
  }

  ApproxPrivateParams p;
  p.kappa = 0.1;
  p.n = 3;
  p.lambda = additivity_lambda(p.kappa, p.n);
  rec.check("ac15/lambda", 0.999667, p.lambda, 5e-7, Relation::Abs);
  const int big_n = superactivation_N_threshold(p);
  rec.check("ac15/N", 354.0, big_n, 0.0, Relation::Abs);
  p.N = big_n;
  rec.check("ac15/holds-at-N", 0.0, activation_value(p), 0.0, Relation::Gt);
  p.N = big_n - 1;
  rec.check("ac15/fails-at-N-1", 0.0, activation_value(p), 0.0, Relation::Le);

  const SuperactivationPlan plan = superactivation_plan(0.0, 3, 0.0);
  rec.check("plan/activation-value", 0.0, plan.activation_value, 0.0, Relation::Gt);
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Abs: return "abs";
    case Relation::Le: return "le";
    case Relation::Ge: return "ge";
    case Relation::Lt: return "lt";
    case Relation::Gt: return "gt";
  }
  return "abs";
}

}  // namespace

VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts) {
  static const std::map<std::string, std::function<void(Recorder&, const VerifyOptions&)>> parts{
      {"lemmas", lemmas},
      {"amplification", amplification},
      {"gap", gap},
      {"superactivation", superactivation},
  };
  if (suite != "all" && !parts.count(suite)) throw DomainError("unknown suite '" + suite + "'");
  if (!(opts.tol >= 0.0)) throw DomainError("tolerance must be nonnegative");

  VerificationReport report;
  report.suite = suite;
  report.seed = opts.seed;
  report.tolerance = opts.tol;
  Recorder rec(report);
  const auto start = std::chrono::steady_clock::now();
  for (const char* name : {"lemmas", "amplification", "gap", "superactivation"}) {
    if (suite == "all" || suite == name) parts.at(name)(rec, opts);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"tolerance", c.tolerance},
                      {"relation", relation_name(c.relation)},
                      {"pass", c.pass}});
  }
  nlohmann::json j{{"suite", report.suite},
                   {"seed", report.seed},
                   {"tolerance", report.tolerance},
                   {"pass", report.pass},
                   {"checks", checks}};
  if (report.wall_seconds) j["wall_seconds"] = *report.wall_seconds;
  return j;
}

}  // namespace capamp::cli
