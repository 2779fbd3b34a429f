#pragma once

// Private states, pbits and the PPT approximation family.
//
// Four-party states are laid out as a0 b0 A0 B0 (key of Alice, key of Bob,
// shield of Alice, shield of Bob).

#include <vector>

#include "capamp/density_operator.hpp"
#include "capamp/matcore.hpp"

namespace capamp {

// (1/sqrt(d)) sum_i |i>|i>.
ComplexVector max_entangled(int d);

// Swap operator on C^d ⊗ C^d.
ComplexMatrix swap_operator(int d);

struct SymAsym {
  ComplexMatrix sym;   // (I + F)/2
  ComplexMatrix asym;  // (I - F)/2
  ComplexMatrix swap;  // F
};
SymAsym sym_asym_projectors(int d);

inline int dim_sym(int d) { return d * (d + 1) / 2; }
inline int dim_asym(int d) { return d * (d - 1) / 2; }

// q |psi+><psi+| ⊗ P_sym/d_sym + (1-q) |psi-><psi-| ⊗ P_asym/d_asym on
// dims [2, 2, d, d].
DensityOperator gamma_qd(double q, int d);

struct PbitSpec {
  int key_dim = 2;
  DensityOperator sigma;                 // shield state on A0 B0
  std::vector<ComplexMatrix> unitaries;  // one per key value
};

// (1/d0) sum_{k,l} |k><l| ⊗ |k><l| ⊗ U_k sigma U_l^dagger on [d0, d0, dA, dB].
// sigma's dims must have two factors (dA, dB); a single factor is split as
// a square. Throws InvalidSpec.
DensityOperator pbit_from_spec(const PbitSpec& spec);

// Standard form of gamma_qd: diagonal sigma in the eigenbasis of the swap,
// U_0 = U, U_1 = U diag(I, -I).
PbitSpec gamma_qd_spec(double q, int d);

// tr(U_0 sigma U_1^dagger).
Complex key_overlap(const PbitSpec& spec);
// 2 tr(<00| gamma |11>) for a state on [2, 2, ...]; equals the key overlap
// of a pbit written in standard form.
Complex key_overlap(const DensityOperator& gamma);

struct CcqState {
  std::vector<std::vector<double>> probs;                 // d0 x d0
  std::vector<std::vector<DensityOperator>> eve_states;   // d0 x d0
};

// Purifies gamma (dims [d0, d0, dA, dB]), measures the key in the computational
// basis and traces the shield. Zero-probability outcomes get a maximally
// mixed Eve state.
CcqState key_ccq(const DensityOperator& gamma, int d0);

bool is_secure(const CcqState& ccq, double tolerance);
bool is_perfect_pdit(const CcqState& ccq, double tolerance);

inline constexpr Index kDefaultZetaCap = 4096;

// Normalized state on a0 b0 followed by r*N*m shield pairs (A, B), each of
// dimension d. Pair k*r*N + i*r + j belongs to shield copy i (0 <= i < N).
// Throws DimensionCap if 4 d^(2 r m N) exceeds `cap`.
DensityOperator zeta_state(double q, int d, int r, int m, int N,
                           Index cap = kDefaultZetaCap);

// Subsystem indices of Bob's registers (b0 and every B factor) in zeta_state.
IndexSet zeta_bob_systems(int r, int m, int N);
// Subsystem indices (A then B factor per pair) of shield copy `copy`.
IndexSet zeta_copy_systems(int r, int m, int N, int copy);
// Reorders zeta_state(.., N = 1) into [2, 2, D, D] with all A factors grouped
// before all B factors, D = d^(r m).
DensityOperator zeta_key_shield_form(const DensityOperator& zeta, int d, int r, int m);

// Smallest eigenvalue of rho^{T_S}, unclamped.
double ppt_min_eigenvalue(const DensityOperator& rho, const IndexSet& transposed);

}  // namespace capamp
