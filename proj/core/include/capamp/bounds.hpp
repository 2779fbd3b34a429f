#pragma once

// Closed-form capacity upper bounds and verifiers for explicit SDP witnesses.

#include "capamp/channels.hpp"
#include "capamp/density_operator.hpp"

namespace capamp {

// log2((d^2-1)(r0+|r1|) + |r0+d r1| + |r1+d r0|) with
// r0 = q/(d(d+1)) + (1-q)/(d(d-1)), r1 = q/(d(d+1)) - (1-q)/(d(d-1)).
double transposition_bound_closed(double q, int d);

// log2(d || tr_B0(|(q s1 + (1-q) s2)^{T_B0}| + |(q s1 - (1-q) s2)^{T_B0}|) ||_op)
// for orthogonal shield states s1, s2 on [d, d]. Throws NotOrthogonal.
double transposition_bound_general(double q, const DensityOperator& sigma1,
                                   const DensityOperator& sigma2, int d);

// Operators on the channel's Choi space (input factors, then output factors).
struct TranspositionWitness {
  ComplexMatrix y;
  ComplexMatrix z;
};

struct BetaWitness {
  ComplexMatrix r;  // on input ⊗ output
  ComplexMatrix x;  // on output
};

struct WitnessCheck {
  bool feasible;
  double value;
  // Smallest eigenvalue over all PSD conditions that were checked.
  double min_eigenvalue;
};

inline constexpr double kWitnessTolerance = 1e-8;

// Feasible iff Y, Z >= 0 and [[Y, -J^{T_B}], [-J^{T_B}, Z]] >= 0 within
// -1e-8 * dim, J the unnormalized Choi operator. value = (||tr_B Y|| +
// ||tr_B Z||)/2 upper-bounds the diamond norm of T o N.
WitnessCheck verify_transposition_witness(const Channel& ch, const TranspositionWitness& w);

// Y = Z built from |(q s1 ± (1-q) s2)^{T_B0}| for private_channel(q, d).
TranspositionWitness private_channel_transposition_witness(double q, int d);

// Upper bound on Q of the qudit depolarizing channel:
// log2 d + eta(1/2) - eta(1/2 - (d^2-1)p/d^2) - (d^2-1) eta(p/d^2) for
// p < d/(2(d+1)), else 0, with eta(x) = -x log2 x.
double depolarizing_upper(double p, int d);
inline double depolarizing_case_boundary(int d) { return d / (2.0 * (d + 1.0)); }

// max{(1 - 2 lambda) log2 d, 0}.
double erasure_capacity(double lambda, int d);

// Feasible iff -R <= J^{T_B} <= R and -I ⊗ X <= R^{T_B} <= I ⊗ X within
// -1e-8 * dim; value = tr X, whose log2 upper-bounds the classical capacity.
WitnessCheck verify_beta_witness(const Channel& ch, const BetaWitness& w);

// R = (1/d) P0 ⊗ I + w P1 ⊗ |Psi+><Psi+| on a0 b0 A0 B0 (reordered to the
// Choi space of the private channel), X = I/d, with P0 the projector onto
// span{|00>, |11>} of the key and P1 = I - P0. For the q = (d+1)/(2d)
// private channel the first condition needs w >= 1 and the second w <= 1.
BetaWitness private_channel_beta_witness(int d, double off_block_weight = 1.0);

// (log2 dA + Q)/2.
double privacy_quantum_tradeoff(double d_a, double quantum_capacity);

// d_in ||J_a - J_b||_1 with normalized Choi operators (unhalved trace norm).
double diamond_upper_via_choi(const Channel& a, const Channel& b);

}  // namespace capamp
