#include "capamp/thresholds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "capamp/bounds.hpp"
#include "capamp/errors.hpp"

namespace capamp {

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

void require_d(int d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
}

template <class Fn>
void parallel_for(int count, int threads, Fn fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double margin_at(MarginKind kind, int d, double a1, double q, int* case_label) {
  if (kind == MarginKind::Erasure) {
    if (case_label) *case_label = 0;
    return erasure_margin(q, d, a1);
  }
  const DepolMargin m = depol_margin(q, d, a1);
  if (case_label) *case_label = m.case_label;
  return m.margin;
}

bool passes(CaseFilter filter, int case_label) {
  switch (filter) {
    case CaseFilter::Case1: return case_label == 1;
    case CaseFilter::Case2: return case_label == 2;
    case CaseFilter::Any: break;
  }
  return true;
}

// Admissible axis1 interval for a filter.
std::pair<double, double> axis1_range(MarginKind kind, CaseFilter filter, int d) {
  constexpr double kEdge = 1e-9;
  if (kind == MarginKind::Depolarizing) {
    const double boundary = depolarizing_case_boundary(d);
    if (filter == CaseFilter::Case1) return {kEdge, boundary * (1.0 - 1e-12)};
    if (filter == CaseFilter::Case2) return {boundary, 1.0 - kEdge};
  }
  return {kEdge, 1.0 - kEdge};
}

}  // namespace

double erasure_holevo_closed(double q, double lambda) {
  require_probability(q, "q");
  require_probability(lambda, "lambda");
  return (1.0 - lambda) * binary_entropy(q);
}

double depolarizing_holevo_closed(double q, double p, int d) {
  require_probability(q, "q");
  require_probability(p, "p");
  require_d(d);
  const double plus = 0.5 * p * (1.0 + 1.0 / d);
  const double minus = 0.5 * p * (1.0 - 1.0 / d);
  return binary_entropy((1.0 - p) * q + plus) - q * binary_entropy(1.0 - minus) -
         (1.0 - q) * binary_entropy(plus);
}

double erasure_margin(double q, int d, double lambda) {
  require_probability(q, "q");
  require_probability(lambda, "lambda");
  require_d(d);
  return transposition_bound_closed(q, d) + erasure_capacity(lambda, d) -
         (1.0 - lambda * binary_entropy(q));
}

DepolMargin depol_margin(double q, int d, double p) {
  require_probability(q, "q");
  require_probability(p, "p");
  require_d(d);
  const int label = p < depolarizing_case_boundary(d) ? 1 : 2;
  const double lhs = transposition_bound_closed(q, d) + (label == 1 ? depolarizing_upper(p, d) : 0.0);
  const double rhs = 1.0 - binary_entropy(q) + depolarizing_holevo_closed(q, p, d);
  return {lhs - rhs, label};
}

SweepGrid sweep(MarginKind kind, int d, int resolution, int threads) {
  require_d(d);
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  SweepGrid g;
  g.kind = kind;
  g.d = d;
  g.axis1 = kind == MarginKind::Erasure ? "lambda" : "p";
  g.axis2 = "q";
  for (int k = 0; k < resolution; ++k) {
    const double x = (k + 0.5) / resolution;
    g.axis1_values.push_back(x);
    g.axis2_values.push_back(x);
  }
  const std::size_t n = static_cast<std::size_t>(resolution);
  g.margins.assign(n * n, 0.0);
  if (kind == MarginKind::Depolarizing) g.cases.assign(n * n, 0);
  parallel_for(resolution, threads, [&](int i) {
    for (std::size_t j = 0; j < n; ++j) {
      int label = 0;
      g.margins[i * n + j] = margin_at(kind, d, g.axis1_values[i], g.axis2_values[j], &label);
      if (!g.cases.empty()) g.cases[i * n + j] = label;
    }
  });
  return g;
}

std::optional<GridMinimum> grid_minimum(const SweepGrid& grid, CaseFilter filter) {
  std::optional<GridMinimum> best;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      const std::size_t k = i * grid.cols() + j;
      const int label = grid.cases.empty() ? 0 : grid.cases[k];
      if (!passes(filter, label)) continue;
      if (!best || grid.margins[k] < best->margin) {
        best = GridMinimum{grid.margins[k], grid.axis1_values[i], grid.axis2_values[j]};
      }
    }
  }
  return best;
}

GridMinimum refined_minimum(MarginKind kind, CaseFilter filter, int d, int resolution) {
  require_d(d);
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  constexpr int kSeeds = 4;
  constexpr int kSub = 21;
  constexpr int kLevels = 12;
  const auto [lo1, hi1] = axis1_range(kind, filter, d);
  const double step = 1.0 / resolution;

  // Seeds: the lowest admissible cells of a coarse scan, plus the point on
  // the upper edge of the axis1 range for each column (the depolarizing
  // bound jumps at the case boundary, so the infimum can sit on that edge).
  std::vector<GridMinimum> seeds;
  for (int i = 0; i < resolution; ++i) {
    const double a1 = std::clamp((i + 0.5) * step, lo1, hi1);
    for (int j = 0; j < resolution; ++j) {
      const double a2 = (j + 0.5) * step;
      seeds.push_back({margin_at(kind, d, a1, a2, nullptr), a1, a2});
    }
  }
  std::vector<GridMinimum> edge;
  for (int j = 0; j < resolution; ++j) {
    const double a2 = (j + 0.5) * step;
    edge.push_back({margin_at(kind, d, hi1, a2, nullptr), hi1, a2});
  }
  auto lower = [](const GridMinimum& a, const GridMinimum& b) { return a.margin < b.margin; };
  std::partial_sort(seeds.begin(), seeds.begin() + kSeeds, seeds.end(), lower);
  seeds.resize(kSeeds);
  std::partial_sort(edge.begin(), edge.begin() + kSeeds, edge.end(), lower);
  seeds.insert(seeds.end(), edge.begin(), edge.begin() + kSeeds);

  GridMinimum best = seeds.front();
  for (GridMinimum cur : seeds) {
    double half = step;
    for (int level = 0; level < kLevels; ++level) {
      const double x0 = std::max(lo1, cur.axis1 - half);
      const double x1 = std::min(hi1, cur.axis1 + half);
      const double y0 = std::max(1e-9, cur.axis2 - half);
      const double y1 = std::min(1.0 - 1e-9, cur.axis2 + half);
      for (int a = 0; a < kSub; ++a) {
        const double x = x0 + (x1 - x0) * a / (kSub - 1);
        for (int b = 0; b < kSub; ++b) {
          const double y = y0 + (y1 - y0) * b / (kSub - 1);
          const double m = margin_at(kind, d, x, y, nullptr);
          if (m < cur.margin) cur = {m, x, y};
        }
      }
      half /= 4.0;
    }
    if (cur.margin < best.margin) best = cur;
  }
  return best;
}

std::optional<int> min_amplification_dimension(MarginKind kind, CaseFilter filter, int d_max,
                                               int resolution, const AmplificationSearch& search) {
  if (d_max < 2) throw DomainError("d_max must be at least 2");
  for (int d = 2; d <= d_max; ++d) {
    const SweepGrid g = sweep(kind, d, resolution, search.threads);
    const std::optional<GridMinimum> m = grid_minimum(g, filter);
    if (m && m->margin < 0.0) return d;
    if (search.refine && refined_minimum(kind, filter, d, resolution).margin < 0.0) return d;
  }
  return std::nullopt;
}

namespace {

void validate(const ApproxPrivateParams& p) {
  if (!(p.epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (!(std::abs(p.c) <= 1.0 + 1e-12)) throw DomainError("|c| must be at most 1");
  require_probability(p.lambda, "lambda");
  require_probability(p.kappa, "kappa");
  require_d(p.d);
  if (p.N < 1 || p.n < 1) throw DomainError("copy counts must be positive");
}

double h_epsilon(double eps) { return eps <= 1.0 ? binary_entropy(eps) : 0.0; }

double overlap_entropy(Complex c) {
  return binary_entropy(std::clamp((1.0 + std::abs(c)) / 2.0, 0.0, 1.0));
}

double feasibility_numerator(double eps, double kappa) {
  return 1.0 - 2.0 * h_epsilon(eps) - 4.0 * eps - kappa / (1.0 - kappa);
}

int threshold(const ApproxPrivateParams& p, double (*lg)(double)) {
  validate(p);
  if (!(p.lambda > 0.0 && p.lambda < 1.0)) throw InfeasibleParams("lambda must lie in (0,1)");
  if (!(p.kappa < 1.0)) throw InfeasibleParams("kappa must be below 1");
  const double a = feasibility_numerator(p.epsilon, p.kappa);
  const double hc = overlap_entropy(p.c);
  if (!(a > 0.0)) throw InfeasibleParams("1 - 2h(eps) - 4 eps - kappa/(1-kappa) is not positive");
  if (!(hc > 0.0)) throw InfeasibleParams("h((1+|c|)/2) vanishes");
  const double x = (lg(a) - lg(hc)) / lg(p.lambda);
  if (!std::isfinite(x)) throw InfeasibleParams("threshold is not finite");
  if (x < 1.0) return 1;
  if (x > 2e9) throw InfeasibleParams("threshold exceeds the integer range");
  return static_cast<int>(std::floor(x)) + 1;
}

double lg2(double x) { return std::log2(x); }
double lge(double x) { return std::log(x); }

}  // namespace

double approx_private_lower_bound(const ApproxPrivateParams& params) {
  validate(params);
  return 1.0 - params.lambda * overlap_entropy(params.c) - 4.0 * params.epsilon -
         2.0 * h_epsilon(params.epsilon);
}

double separation_delta(const ApproxPrivateParams& params) {
  return approx_private_lower_bound(params);
}

double separation_g(double x, int d) {
  require_d(d);
  if (!(x >= 0.0 && x <= 0.5)) throw DomainError("x must lie in [0, 1/2]");
  return 8.0 * x * std::log2(2.0 * d * (d + 1.0)) + 4.0 * binary_entropy(x);
}

double separation_g_inverse(double y, int d) {
  require_d(d);
  if (y <= 0.0) return 0.0;
  if (y >= separation_g(0.5, d)) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (separation_g(mid, d) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double separation_lower_bound(const ApproxPrivateParams& params) {
  const double delta = separation_delta(params);
  if (delta <= 0.0) return 0.0;
  return std::min(separation_g_inverse(delta, params.d), 0.5);
}

double n_copy_lower_bound(const ApproxPrivateParams& params) {
  validate(params);
  return 1.0 - std::pow(params.lambda, params.N) * overlap_entropy(params.c) -
         4.0 * params.epsilon - 2.0 * h_epsilon(params.epsilon);
}

int superactivation_N_threshold(const ApproxPrivateParams& params) { return threshold(params, lg2); }

int superactivation_N_threshold_natural_log(const ApproxPrivateParams& params) {
  return threshold(params, lge);
}

double additivity_lambda(double kappa, int n) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("kappa must lie in (0,1)");
  if (n < 1) throw DomainError("n must be positive");
  return std::pow(1.0 + std::pow(kappa, n), -1.0 / n);
}

double flag_additivity_margin(double kappa, double lambda, int n, int ell) {
  require_probability(kappa, "kappa");
  require_probability(lambda, "lambda");
  if (n < 2 || ell < 1 || ell > n - 1) throw DomainError("need 1 <= ell <= n-1");
  const double tail = std::pow(lambda, n - ell);
  return 1.0 - tail - std::pow(kappa, ell) * tail;
}

double activation_value(const ApproxPrivateParams& params) {
  return (1.0 - params.kappa) * n_copy_lower_bound(params) - params.kappa;
}

SuperactivationPlan superactivation_plan(double epsilon, int n, Complex c) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (n < 1) throw DomainError("n must be positive");
  if (!(std::abs(c) <= 1.0 + 1e-12)) throw DomainError("|c| must be at most 1");
  if (!(feasibility_numerator(epsilon, 0.0) > 0.0)) {
    throw InfeasibleParams("1 - 2h(eps) - 4 eps is not positive");
  }
  int k = 4999;
  while (k > 0 && !(feasibility_numerator(epsilon, k * 1e-4) > 0.0)) --k;
  if (k == 0) throw InfeasibleParams("no kappa on the 1e-4 grid is feasible");

  SuperactivationPlan plan;
  plan.kappa = k * 1e-4;
  plan.lambda = additivity_lambda(plan.kappa, n);
  ApproxPrivateParams p;
  p.epsilon = epsilon;
  p.c = c;
  p.lambda = plan.lambda;
  p.kappa = plan.kappa;
  p.n = n;
  plan.N = superactivation_N_threshold(p);
  p.N = plan.N;
  for (int ell = 1; ell < n; ++ell) {
    plan.flag_margins.push_back(flag_additivity_margin(plan.kappa, plan.lambda, n, ell));
  }
  plan.activation_value = activation_value(p);
  return plan;
}

double approximation_epsilon(const DensityOperator& zeta, const PbitSpec& candidate) {
  const DensityOperator gamma = pbit_from_spec(candidate);
  if (zeta.dims() != gamma.dims()) {
    throw DimensionMismatch("candidate pbit and state have different factor dimensions");
  }
  return trace_norm(zeta.matrix() - gamma.matrix());
}

}  // namespace capamp
