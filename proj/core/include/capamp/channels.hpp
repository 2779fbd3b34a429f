#pragma once

// Quantum channels in Kraus form, with conversions to and from Choi operators
// and the channel families used throughout the library.
//
// Choi convention: J = sum_{ij} |i><j| ⊗ N(|i><j|) / d_in, reference first.
// unnormalized_choi is d_in * J.

#include <vector>

#include "capamp/density_operator.hpp"
#include "capamp/matcore.hpp"

namespace capamp {

struct FlagBranch;

class Channel {
 public:
  // Throws NotAChannel unless the Kraus set is nonempty, has matching shapes and
  // is trace preserving within 1e-9.
  Channel(SubsystemDims in_dims, SubsystemDims out_dims, std::vector<ComplexMatrix> kraus);

  const SubsystemDims& in_dims() const { return in_dims_; }
  const SubsystemDims& out_dims() const { return out_dims_; }
  Index in_dim() const { return in_dims_.total(); }
  Index out_dim() const { return out_dims_.total(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  // Branch decomposition N = sum_i p_i N_i with mutually orthogonal outputs and
  // environments. Empty for channels without such structure.
  const std::vector<FlagBranch>& branches() const { return branches_; }
  bool has_branches() const { return !branches_.empty(); }
  Channel with_branches(std::vector<FlagBranch> branches) const;

  // Input/output block sizes of a direct sum; empty otherwise.
  const std::vector<Index>& in_blocks() const { return in_blocks_; }
  const std::vector<Index>& out_blocks() const { return out_blocks_; }

  // Same channel on regrouped tensor factors (products must agree).
  Channel relabeled(SubsystemDims in_dims, SubsystemDims out_dims) const;

 private:
  friend Channel direct_sum(const Channel& a, const Channel& b);

  SubsystemDims in_dims_;
  SubsystemDims out_dims_;
  std::vector<ComplexMatrix> kraus_;
  std::vector<FlagBranch> branches_;
  std::vector<Index> in_blocks_;
  std::vector<Index> out_blocks_;
};

struct FlagBranch {
  double probability;
  Channel channel;
};

// Probabilistic mixture of channels with identical in/out dimensions.
struct FlaggedChannel {
  std::vector<FlagBranch> branches;
};

// Throws DimensionMismatch unless rho matches the input dimension.
DensityOperator apply(const Channel& ch, const DensityOperator& rho);
// Unvalidated action on an arbitrary operator.
ComplexMatrix apply_map(const Channel& ch, const ComplexMatrix& x);
// Action of the adjoint map.
ComplexMatrix apply_adjoint(const Channel& ch, const ComplexMatrix& y);

DensityOperator choi(const Channel& ch);
ComplexMatrix unnormalized_choi(const Channel& ch);
// d_in tr_in[J (x^T ⊗ I)] for a normalized Choi operator J.
ComplexMatrix apply_choi(const ComplexMatrix& j, Index d_in, const ComplexMatrix& x);

// Kraus decomposition of a normalized Choi operator. Throws NotAChannel if
// tr_out J differs from I/d_in. Kraus operators with Frobenius norm below
// 1e-12 are dropped.
Channel channel_from_choi(const DensityOperator& j, Index d_in);

// Environment indexed by Kraus operators: N^c(x)_{kl} = tr(K_k x K_l^dagger).
Channel complementary(const Channel& ch);
// N^c applied to x without materializing the complementary Kraus set.
ComplexMatrix apply_complementary(const Channel& ch, const ComplexMatrix& x);
ComplexMatrix apply_complementary_adjoint(const Channel& ch, const ComplexMatrix& y);

Channel identity_channel(const SubsystemDims& dims);
// n2 after n1.
Channel compose(const Channel& n2, const Channel& n1);

// Channel whose Choi operator is gamma_qd(q, d), input and output dims [2, d].
Channel private_channel(double q, int d);
// Block-matrix action of the private channel on a 2d x 2d operator.
ComplexMatrix private_channel_action(double q, int d, const ComplexMatrix& x);
// Kraus set K_ij = (|0j><0i| + |1i><1j|)/sqrt(d), the q = (d+1)/(2d) member.
Channel private_channel_kraus_form(int d);
inline double private_channel_special_q(int d) { return (d + 1.0) / (2.0 * d); }

// (1-lambda) rho ⊕ lambda tr(rho) |e><e| on C^{d+1}, |e> the last basis vector.
Channel erasure_channel(double lambda, int d);
// Branches (1-lambda, id_d) and (lambda, replacement by sigma).
FlaggedChannel erasure_channel_flagged(double lambda, int d);
FlaggedChannel erasure_channel_flagged(double lambda, int d, const DensityOperator& sigma);

// (1-p) rho + p I/d, p in [0,1].
Channel depolarizing_channel(double p, int d);
// x -> tr(x) sigma.
Channel replacement_channel(const DensityOperator& sigma, Index d_in);

Channel tensor(const Channel& a, const Channel& b);
// Block-diagonal action; off-diagonal blocks are annihilated.
Channel direct_sum(const Channel& a, const Channel& b);
// sum_i p_i |i><i| ⊗ N_i with an explicit flag register first in the output.
Channel flagged(const FlaggedChannel& fc);

}  // namespace capamp
