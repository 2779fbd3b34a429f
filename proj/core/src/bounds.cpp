#include "capamp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "capamp/errors.hpp"
#include "capamp/states.hpp"

namespace capamp {

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

void require_d(int d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
}

double eta(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

IndexSet output_systems(const Channel& ch) {
  IndexSet out;
  const int a = static_cast<int>(ch.in_dims().size());
  for (int k = 0; k < static_cast<int>(ch.out_dims().size()); ++k) out.push_back(a + k);
  return out;
}

double psd_floor(Index dim) { return -kWitnessTolerance * static_cast<double>(dim); }

// Shield operators (q s1 ± (1-q) s2)^{T_B0} for the sym/asym pair.
std::pair<ComplexMatrix, ComplexMatrix> shield_parts(double q, const ComplexMatrix& s1,
                                                     const ComplexMatrix& s2, int d) {
  const SubsystemDims dims{d, d};
  return {partial_transpose(q * s1 + (1.0 - q) * s2, dims, {1}),
          partial_transpose(q * s1 - (1.0 - q) * s2, dims, {1})};
}

// Rebuilds an a0 b0 A0 B0 operator on the private channel's Choi space
// a0 A0 b0 B0.
ComplexMatrix to_choi_order(const ComplexMatrix& m, int d) {
  return permute_subsystems(m, {2, 2, d, d}, {0, 2, 1, 3});
}

ComplexMatrix key_projector(std::initializer_list<int> basis) {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  for (int b : basis) p(b, b) = 1.0;
  return p;
}

}  // namespace

double transposition_bound_closed(double q, int d) {
  require_probability(q, "q");
  require_d(d);
  const double r0 = q / (d * (d + 1.0)) + (1.0 - q) / (d * (d - 1.0));
  const double r1 = q / (d * (d + 1.0)) - (1.0 - q) / (d * (d - 1.0));
  return std::log2((d * d - 1.0) * (r0 + std::abs(r1)) + std::abs(r0 + d * r1) +
                   std::abs(r1 + d * r0));
}

double transposition_bound_general(double q, const DensityOperator& sigma1,
                                   const DensityOperator& sigma2, int d) {
  require_probability(q, "q");
  require_d(d);
  const Index n = static_cast<Index>(d) * d;
  if (sigma1.dim() != n || sigma2.dim() != n) throw DimensionMismatch("shield states must live on C^d ⊗ C^d");
  if (q > 0.0 && q < 1.0 &&
      (sigma1.matrix() * sigma2.matrix()).cwiseAbs().maxCoeff() > 1e-9) {
    throw NotOrthogonal("shield states do not have orthogonal supports");
  }
  const auto [plus, minus] = shield_parts(q, sigma1.matrix(), sigma2.matrix(), d);
  const ComplexMatrix reduced =
      partial_trace(ComplexMatrix(hermitian_abs(plus) + hermitian_abs(minus)), {d, d}, {1});
  return std::log2(d * operator_norm(reduced));
}

WitnessCheck verify_transposition_witness(const Channel& ch, const TranspositionWitness& w) {
  const ComplexMatrix j = unnormalized_choi(ch);
  const Index n = j.rows();
  if (w.y.rows() != n || w.y.cols() != n || w.z.rows() != n || w.z.cols() != n) {
    throw DimensionMismatch("witness does not match the Choi space");
  }
  const SubsystemDims dims = concat(ch.in_dims(), ch.out_dims());
  const ComplexMatrix jt = partial_transpose(j, dims, output_systems(ch));
  ComplexMatrix block(2 * n, 2 * n);
  block << w.y, -jt, -jt, w.z;
  double lo = std::min(min_eigenvalue(w.y), min_eigenvalue(w.z));
  lo = std::min(lo, min_eigenvalue(block));
  const bool feasible = lo >= psd_floor(2 * n);
  const IndexSet b = output_systems(ch);
  const double value = 0.5 * (operator_norm(partial_trace(w.y, dims, b)) +
                              operator_norm(partial_trace(w.z, dims, b)));
  return {feasible, value, lo};
}

TranspositionWitness private_channel_transposition_witness(double q, int d) {
  require_probability(q, "q");
  require_d(d);
  const SymAsym p = sym_asym_projectors(d);
  const auto [plus, minus] = shield_parts(q, p.sym / dim_sym(d), p.asym / dim_asym(d), d);
  const ComplexMatrix y =
      static_cast<double>(d) * (kron(key_projector({0, 3}), hermitian_abs(plus)) +
                                kron(key_projector({1, 2}), hermitian_abs(minus)));
  const ComplexMatrix reordered = to_choi_order(y, d);
  return {reordered, reordered};
}

double depolarizing_upper(double p, int d) {
  require_probability(p, "p");
  require_d(d);
  if (p >= depolarizing_case_boundary(d)) return 0.0;
  const double dd = static_cast<double>(d) * d;
  return std::log2(static_cast<double>(d)) + eta(0.5) - eta(0.5 - (dd - 1.0) * p / dd) -
         (dd - 1.0) * eta(p / dd);
}

double erasure_capacity(double lambda, int d) {
  require_probability(lambda, "lambda");
  if (d < 1) throw DomainError("dimension must be positive");
  return std::max((1.0 - 2.0 * lambda) * std::log2(static_cast<double>(d)), 0.0);
}

WitnessCheck verify_beta_witness(const Channel& ch, const BetaWitness& w) {
  const ComplexMatrix j = unnormalized_choi(ch);
  const Index n = j.rows();
  const Index dout = ch.out_dim();
  if (w.r.rows() != n || w.r.cols() != n || w.x.rows() != dout || w.x.cols() != dout) {
    throw DimensionMismatch("witness does not match the channel");
  }
  const double herm = tol::kHermiticity * static_cast<double>(n);
  if (!is_hermitian(w.r, herm) || !is_hermitian(w.x, herm)) {
    return {false, w.x.trace().real(), -std::numeric_limits<double>::infinity()};
  }
  const SubsystemDims dims = concat(ch.in_dims(), ch.out_dims());
  const IndexSet b = output_systems(ch);
  const ComplexMatrix jt = partial_transpose(j, dims, b);
  const ComplexMatrix rt = partial_transpose(w.r, dims, b);
  const ComplexMatrix ix = kron(identity(ch.in_dim()), w.x);
  double lo = min_eigenvalue(w.r - jt);
  lo = std::min(lo, min_eigenvalue(w.r + jt));
  lo = std::min(lo, min_eigenvalue(ix - rt));
  lo = std::min(lo, min_eigenvalue(ix + rt));
  return {lo >= psd_floor(n), w.x.trace().real(), lo};
}

BetaWitness private_channel_beta_witness(int d, double off_block_weight) {
  require_d(d);
  const Index shield = static_cast<Index>(d) * d;
  const ComplexMatrix psi = outer(max_entangled(d));
  const ComplexMatrix r = kron(key_projector({0, 3}), identity(shield)) / static_cast<double>(d) +
                          off_block_weight * kron(key_projector({1, 2}), psi);
  return {to_choi_order(r, d), identity(2 * static_cast<Index>(d)) / static_cast<double>(d)};
}

double privacy_quantum_tradeoff(double d_a, double quantum_capacity) {
  if (!(d_a >= 1.0)) throw DomainError("input dimension must be at least 1");
  if (!(quantum_capacity >= 0.0)) throw DomainError("quantum capacity must be nonnegative");
  return 0.5 * (std::log2(d_a) + quantum_capacity);
}

double diamond_upper_via_choi(const Channel& a, const Channel& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw DimensionMismatch("channels must share input and output dimensions");
  }
  return static_cast<double>(a.in_dim()) *
         trace_norm(choi(a).matrix() - choi(b).matrix());
}

}  // namespace capamp
