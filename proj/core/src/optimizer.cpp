#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "capamp/capacity.hpp"
#include "capamp/errors.hpp"

namespace capamp {

namespace {

constexpr double kLogFloor = 1e-14;
constexpr double kArmijo = 1e-4;

ComplexMatrix log2_psd(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return std::log2(std::max(x, kLogFloor)); });
}

struct Point {
  ComplexMatrix g;  // rho = g g^dagger / tr
  double value;
};

ComplexMatrix state_of(const ComplexMatrix& g) {
  const ComplexMatrix gg = g * g.adjoint();
  return gg / gg.trace().real();
}

double objective(const Channel& ch, const ComplexMatrix& g) {
  return coherent_info_unchecked(ch, state_of(g));
}

// Gradient of I_c(g g^dagger / t) with respect to g (real and imaginary parts
// packed as a complex matrix).
ComplexMatrix gradient(const Channel& ch, const ComplexMatrix& g) {
  const double t = (g * g.adjoint()).trace().real();
  const ComplexMatrix rho = state_of(g);
  ComplexMatrix h = -apply_adjoint(ch, log2_psd(apply_map(ch, rho)));
  h += apply_complementary_adjoint(ch, log2_psd(apply_complementary(ch, rho)));
  h = 0.5 * (h + h.adjoint()).eval();
  const Complex mean = (h * rho).trace();
  h -= mean * identity(h.rows());
  return (2.0 / t) * h * g;
}

Point ascend(const Channel& ch, ComplexMatrix g, const OptimizerConfig& cfg) {
  double value = objective(ch, g);
  double step = 1.0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const ComplexMatrix grad = gradient(ch, g);
    const double slope = grad.squaredNorm();
    if (!(slope > 0.0) || !std::isfinite(slope)) break;
    step = std::min(step * 4.0, 1e6);
    bool moved = false;
    while (step > 1e-14) {
      const ComplexMatrix trial = g + step * grad;
      const double v = objective(ch, trial);
      if (std::isfinite(v) && v >= value + kArmijo * step * slope) {
        const double gain = v - value;
        g = trial / trial.norm();
        value = v;
        moved = true;
        if (gain < cfg.step_tolerance) it = cfg.max_iterations;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {g, value};
}

// Re-runs the ascent restricted to the top-k eigenvectors for every k and
// keeps the best. Maximizers on the boundary of the state space are reached
// far more accurately this way than by the full-rank ascent alone.
Point polish(const Channel& ch, const Point& start, const OptimizerConfig& cfg) {
  Point best = start;
  const EigenDecomposition e = eig_hermitian(state_of(start.g));
  const Index n = e.values.size();
  for (Index k = 1; k <= n; ++k) {
    if (e.values(k - 1) <= 0.0) break;
    ComplexMatrix g = e.vectors.leftCols(k);
    for (Index c = 0; c < k; ++c) g.col(c) *= std::sqrt(e.values(c));
    const Point p = ascend(ch, g, cfg);
    if (p.value > best.value) best = p;
  }
  return best;
}

ComplexMatrix random_factor(Index n, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

ComplexMatrix factor_of(const DensityOperator& rho) {
  const EigenDecomposition e = eig_hermitian(rho.matrix());
  ComplexMatrix g = e.vectors;
  for (Index c = 0; c < g.cols(); ++c) g.col(c) *= std::sqrt(std::max(0.0, e.values(c)));
  return g;
}

}  // namespace

OptimizerResult q1_optimize(const Channel& ch, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iterations < 1 || !(cfg.step_tolerance > 0.0)) {
    throw DomainError("optimizer configuration must be positive");
  }
  const Index n = ch.in_dim();
  if (n > cfg.dimension_cap) {
    throw DimensionCap("input dimension " + std::to_string(n) + " exceeds optimizer cap " +
                       std::to_string(cfg.dimension_cap));
  }

  const int total = cfg.restarts + static_cast<int>(cfg.initial_states.size());
  std::vector<std::optional<Point>> results(total);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < total; i = next++) {
      ComplexMatrix g;
      if (i < cfg.restarts) {
        g = random_factor(n, cfg.seed, i);
      } else {
        const DensityOperator& init = cfg.initial_states[i - cfg.restarts];
        if (init.dim() != n) throw DimensionMismatch("initial state does not match channel input");
        g = factor_of(init);
      }
      results[i] = polish(ch, ascend(ch, g, cfg), cfg);
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          worker();
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

  std::vector<double> restart_values;
  int best = 0;
  for (int i = 0; i < total; ++i) {
    if (i < cfg.restarts) restart_values.push_back(results[i]->value);
    if (results[i]->value > results[best]->value) best = i;
  }
  return {results[best]->value, DensityOperator(state_of(results[best]->g), ch.in_dims()),
          std::move(restart_values)};
}

}  // namespace capamp
