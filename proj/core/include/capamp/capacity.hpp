#pragma once

// Entropic functionals of channels: coherent, Holevo and private information,
// a seeded local optimizer for the one-shot quantum capacity, and the
// amplification lower bound.

#include <cstdint>
#include <vector>

#include "capamp/channels.hpp"
#include "capamp/density_operator.hpp"

namespace capamp {

struct Ensemble {
  std::vector<double> probs;
  std::vector<DensityOperator> states;
};

// Throws DomainError / DimensionMismatch if the ensemble is malformed.
void validate(const Ensemble& ens);

// S(N(rho)) - S(N^c(rho)). Channels with branch metadata are evaluated branch
// by branch.
double coherent_info(const Channel& ch, const DensityOperator& rho);
// Same, for a matrix already known to be a state (no validation).
double coherent_info_unchecked(const Channel& ch, const ComplexMatrix& rho);

// I(A>B) = S(B) - S(AB) of rho, where A and B are disjoint subsystem lists;
// anything else is traced out first.
double coherent_info_state(const DensityOperator& rho, const IndexSet& a_systems,
                           const IndexSet& b_systems);

// Best of a few structured inputs: the maximally mixed state, I/k ⊗ |0><0|
// for a two-factor input [k, m], and I/k ⊗ |Psi_d><Psi_d| for [k, d, d].
DensityOperator q1_ansatz_state(const Channel& ch);
double q1_ansatz_value(const Channel& ch);

struct OptimizerConfig {
  int restarts = 20;
  int max_iterations = 400;
  std::uint64_t seed = 0;
  double step_tolerance = 1e-12;
  Index dimension_cap = 16;
  // 0 picks the hardware concurrency.
  int threads = 0;
  // Evaluated and polished in addition to the random restarts.
  std::vector<DensityOperator> initial_states;
};

struct OptimizerResult {
  double value;
  DensityOperator state;
  // Final value of each random restart, in restart order.
  std::vector<double> restart_values;
};

// Best local maximum of the coherent information over seeded restarts. The
// value is a lower bound on Q^(1); results depend only on the configuration.
// Throws DimensionCap if the input dimension exceeds cfg.dimension_cap.
OptimizerResult q1_optimize(const Channel& ch, const OptimizerConfig& cfg);

// S(sum p rho) - sum p S(rho).
double holevo(const Ensemble& ens);

struct SymAsymOutputs {
  DensityOperator sym;
  DensityOperator asym;
};
// (M ⊗ id)(P_sym)/d_sym and (M ⊗ id)(P_asym)/d_asym.
SymAsymOutputs j_sym_asym(const Channel& m, int d);

// 1 - h(q) + holevo({q, J_sym}, {1-q, J_asym}).
double amplification_lower_bound(const Channel& m, double q, int d);

// I(X;B) - I(X;E) for the cq input sum p_x |x><x| ⊗ rho_x.
double private_info(const Ensemble& ens, const Channel& ch);

inline constexpr Index kDefaultEvaluationCap = 64;

// Coherent information of the n-fold private channel at q = (d+1)/(2d),
// evaluated at (I/2 ⊗ |0><0|)^{⊗n}.
double multi_copy_ansatz_value(int n, int d, Index cap = kDefaultEvaluationCap);

}  // namespace capamp
