#pragma once

// Amplification margins, parameter sweeps, and the bounds used for
// approximate private channels and superactivation.

#include <optional>
#include <string>
#include <vector>

#include "capamp/density_operator.hpp"
#include "capamp/matcore.hpp"
#include "capamp/states.hpp"

namespace capamp {

// (1 - lambda) h(q): Holevo quantity of the erasure-assisted sym/asym pair.
double erasure_holevo_closed(double q, double lambda);
// h((1-p)q + p/2 (1+1/d)) - q h(1 - p/2 (1-1/d)) - (1-q) h(p/2 (1+1/d)).
double depolarizing_holevo_closed(double q, double p, int d);

// LHS - RHS of the erasure amplification test:
// transposition_bound_closed(q,d) + erasure_capacity(lambda,d) - (1 - lambda h(q)).
// Negative means certified amplification.
double erasure_margin(double q, int d, double lambda);

struct DepolMargin {
  double margin;
  int case_label;  // 1 if p < d/(2(d+1)), else 2
};
DepolMargin depol_margin(double q, int d, double p);

enum class MarginKind { Erasure, Depolarizing };
enum class CaseFilter { Any, Case1, Case2 };

struct SweepGrid {
  MarginKind kind = MarginKind::Erasure;
  int d = 2;
  std::string axis1;  // "lambda" or "p"
  std::string axis2;  // "q"
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  // margins[i * axis2_values.size() + j] at (axis1_values[i], axis2_values[j]).
  std::vector<double> margins;
  // Same layout; empty for erasure sweeps.
  std::vector<int> cases;

  std::size_t rows() const { return axis1_values.size(); }
  std::size_t cols() const { return axis2_values.size(); }
  double margin(std::size_t i, std::size_t j) const { return margins[i * cols() + j]; }
  friend bool operator==(const SweepGrid&, const SweepGrid&) = default;
};

inline constexpr int kDefaultResolution = 200;

// Cell centers (k + 1/2)/resolution on both axes of (0,1)^2. Rows run over
// lambda (erasure) or p (depolarizing), columns over q. threads = 0 uses the
// hardware concurrency; the result does not depend on it.
SweepGrid sweep(MarginKind kind, int d, int resolution = kDefaultResolution, int threads = 0);

// CSV with header "lambda,q,margin" or "p,q,margin,case", one row per cell,
// axis1-major, 17 significant digits.
std::string to_csv(const SweepGrid& grid);
// Inverse of to_csv. Throws InvalidSpec on malformed input.
SweepGrid parse_csv(const std::string& text, int d);

// Most negative margin of a sweep restricted to a case filter, with the cell.
struct GridMinimum {
  double margin;
  double axis1;
  double axis2;
};
std::optional<GridMinimum> grid_minimum(const SweepGrid& grid, CaseFilter filter);

struct AmplificationSearch {
  // When true, every cell grid that stays nonnegative is followed by a local
  // zoom around its lowest cells (and, for case 1, along the case boundary
  // approached from below) before the dimension is rejected.
  bool refine = true;
  int threads = 0;
};

// Smallest d in [2, d_max] with a negative margin in the filtered region.
std::optional<int> min_amplification_dimension(MarginKind kind, CaseFilter filter, int d_max,
                                               int resolution = kDefaultResolution,
                                               const AmplificationSearch& search = {});

// Lowest margin found by the local zoom for one d (see AmplificationSearch).
GridMinimum refined_minimum(MarginKind kind, CaseFilter filter, int d, int resolution);

// Trace distances are unhalved: epsilon bounds ||zeta - gamma||_1.
struct ApproxPrivateParams {
  double epsilon = 0.0;
  Complex c = 0.0;  // key overlap of the approximating pbit
  int d = 2;        // shield dimension
  double lambda = 0.5;
  double kappa = 0.1;
  int N = 1;  // shield copies
  int n = 1;  // channel uses
};

// 1 - lambda h((1+|c|)/2) - 4 eps - 2 h(eps).
double approx_private_lower_bound(const ApproxPrivateParams& params);
// Same quantity, the gap used by the separation bound.
double separation_delta(const ApproxPrivateParams& params);
// g(x) = 8x log2(2d(d+1)) + 4 h(x) on [0, 1/2].
double separation_g(double x, int d);
// Bisection to 1e-12 on [0, 1/2]; values above g(1/2) give 1/2.
double separation_g_inverse(double y, int d);
// min{g^{-1}(Delta), 1/2}, or 0 when Delta <= 0.
double separation_lower_bound(const ApproxPrivateParams& params);
// 1 - lambda^N h((1+|c|)/2) - 4 eps - 2 h(eps).
double n_copy_lower_bound(const ApproxPrivateParams& params);

// Smallest integer N with
// N > [log2(1 - 2h(eps) - 4eps - kappa/(1-kappa)) - log2 h((1+|c|)/2)] / log2 lambda,
// and N >= 1. Throws InfeasibleParams if the logarithms are undefined or
// lambda is outside (0,1).
int superactivation_N_threshold(const ApproxPrivateParams& params);
// Same ratio evaluated with natural logarithms (the base cancels).
int superactivation_N_threshold_natural_log(const ApproxPrivateParams& params);

// (1 + kappa^n)^(-1/n).
double additivity_lambda(double kappa, int n);
// 1 - lambda^(n-l) - kappa^l lambda^(n-l), l in [1, n-1].
double flag_additivity_margin(double kappa, double lambda, int n, int ell);

// (1 - kappa) n_copy_lower_bound - kappa: the certified one-shot value of the
// flagged construction.
double activation_value(const ApproxPrivateParams& params);

struct SuperactivationPlan {
  double kappa;
  double lambda;
  int N;
  std::vector<double> flag_margins;  // l = 1 .. n-1
  double activation_value;
};

// kappa is the largest multiple of 1e-4 in (0, 1/2) with
// 1 - 2h(eps) - 4eps - kappa/(1-kappa) > 0. Throws InfeasibleParams.
SuperactivationPlan superactivation_plan(double epsilon, int n, Complex c);

// ||zeta - gamma||_1 for a candidate pbit; both on [2, 2, dA, dB].
double approximation_epsilon(const DensityOperator& zeta, const PbitSpec& candidate);

}  // namespace capamp
