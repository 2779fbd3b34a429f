#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "capamp/capamp.hpp"
#include "verify.hpp"

namespace capamp::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int env_threads() {
  const char* v = std::getenv("CAPAMP_THREADS");
  if (!v || !*v) return 0;
  try {
    return std::max(0, std::stoi(v));
  } catch (const std::exception&) {
    throw UsageError(std::string("CAPAMP_THREADS is not an integer: ") + v);
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& kind) {
  if (!v) throw UsageError("bound " + kind + " requires " + flag);
  return *v;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Private-channel capacity amplification toolkit", "capamp"};
  app.require_subcommand(1);
  app.fallthrough();
  Index dimension_cap = kDefaultZetaCap;
  app.add_option("--dimension-cap", dimension_cap,
                 "Largest matrix dimension for zeta states and tensor channels")
      ->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
  std::string suite = "all";
  VerifyOptions vopts;
  std::string verify_out;
  bool timing = false;
  verify->add_option("--suite", suite, "Suite to run")->check(CLI::IsMember(suite_names()));
  verify->add_option("--tol", vopts.tol, "Tolerance for identity checks")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", vopts.seed, "Seed for random inputs and optimizer restarts");
  verify->add_option("--out", verify_out, "Write the report here instead of stdout");
  verify->add_flag("--timing", timing, "Include wall time in the report");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Write an amplification-margin grid as CSV");
  std::string sweep_kind;
  int sweep_d = 2;
  int resolution = kDefaultResolution;
  std::string sweep_out;
  sweep_cmd->add_option("kind", sweep_kind, "erasure or depol")
      ->required()
      ->check(CLI::IsMember({"erasure", "depol"}));
  sweep_cmd->add_option("--d", sweep_d, "Dimension")->required()->check(CLI::Range(2, 1 << 20));
  sweep_cmd->add_option("--resolution", resolution, "Cells per axis")->check(CLI::Range(2, 1 << 14));
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path (stdout if omitted)");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound or witness");
  std::string bound_kind;
  std::optional<double> bq, bp, blambda;
  std::optional<int> bd;
  bound->add_option("kind", bound_kind, "transposition, depol-upper, erasure or beta")
      ->required()
      ->check(CLI::IsMember({"transposition", "depol-upper", "erasure", "beta"}));
  bound->add_option("--q", bq, "Private channel parameter");
  bound->add_option("--d", bd, "Dimension");
  bound->add_option("--p", bp, "Depolarizing probability");
  bound->add_option("--lambda", blambda, "Erasure probability");

  // superactivate
  auto* super = app.add_subcommand("superactivate", "Plan a superactivation construction");
  double epsilon = 0.0;
  int copies = 1;
  double c_abs = 0.0;
  super->add_option("--epsilon", epsilon, "Trace distance to the pbit")->required();
  super->add_option("--n", copies, "Channel uses")->required()->check(CLI::PositiveNumber);
  super->add_option("--c", c_abs, "Key overlap magnitude")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const int threads = env_threads();
    if (verify->parsed()) {
      vopts.dimension_cap = dimension_cap;
      vopts.threads = threads;
      VerificationReport report = run_suite(suite, vopts);
      if (!timing) report.wall_seconds.reset();
      emit(to_json(report).dump(2) + "\n", verify_out, out);
      return report.pass ? kExitOk : kExitFailure;
    }
    if (sweep_cmd->parsed()) {
      const MarginKind kind = sweep_kind == "erasure" ? MarginKind::Erasure : MarginKind::Depolarizing;
      emit(to_csv(sweep(kind, sweep_d, resolution, threads)), sweep_out, out);
      return kExitOk;
    }
    if (bound->parsed()) {
      json j{{"kind", bound_kind}};
      if (bound_kind == "transposition") {
        const double q = need(bq, "--q", bound_kind);
        const int d = need(bd, "--d", bound_kind);
        j["q"] = q;
        j["d"] = d;
        j["value"] = transposition_bound_closed(q, d);
      } else if (bound_kind == "depol-upper") {
        const double p = need(bp, "--p", bound_kind);
        const int d = need(bd, "--d", bound_kind);
        j["p"] = p;
        j["d"] = d;
        j["case"] = p < depolarizing_case_boundary(d) ? 1 : 2;
        j["value"] = depolarizing_upper(p, d);
      } else if (bound_kind == "erasure") {
        const double lambda = need(blambda, "--lambda", bound_kind);
        const int d = need(bd, "--d", bound_kind);
        j["lambda"] = lambda;
        j["d"] = d;
        j["value"] = erasure_capacity(lambda, d);
      } else {
        const int d = need(bd, "--d", bound_kind);
        if (d < 2) throw DomainError("dimension must be at least 2");
        if (static_cast<Index>(4) * d * d > dimension_cap) {
          throw DimensionCap("witness dimension exceeds --dimension-cap");
        }
        const Channel ch = private_channel(private_channel_special_q(d), d);
        const WitnessCheck w = verify_beta_witness(ch, private_channel_beta_witness(d));
        j["d"] = d;
        j["q"] = private_channel_special_q(d);
        j["feasible"] = w.feasible;
        j["min_eigenvalue"] = w.min_eigenvalue;
        j["trX"] = w.value;
        j["P_upper"] = std::log2(w.value);
        out << j.dump(2) << "\n";
        return w.feasible ? kExitOk : kExitFailure;
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    if (super->parsed()) {
      const SuperactivationPlan plan = superactivation_plan(epsilon, copies, c_abs);
      ApproxPrivateParams p;
      p.epsilon = epsilon;
      p.c = c_abs;
      p.lambda = plan.lambda;
      p.kappa = plan.kappa;
      p.n = copies;
      json j{{"epsilon", epsilon},
             {"n", copies},
             {"c", c_abs},
             {"kappa", plan.kappa},
             {"lambda", plan.lambda},
             {"N", plan.N},
             {"certificates",
              {{"eq79_margins", plan.flag_margins}, {"eq80_value", plan.activation_value}}}};
      out << j.dump(2) << "\n";
      return plan.activation_value > 0.0 ? kExitOk : kExitFailure;
    }
  } catch (const InfeasibleParams& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace capamp::cli
