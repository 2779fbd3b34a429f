#include "capamp/capacity.hpp"

#include <cmath>
#include <string>

#include "capamp/errors.hpp"
#include "capamp/states.hpp"

namespace capamp {

namespace {

double entropy_unchecked(const ComplexMatrix& m) {
  return shannon_entropy(eigenvalues_hermitian(m),
                         tol::kEigenClamp * static_cast<double>(std::max<Index>(1, m.rows())));
}

// Entropy of the complementary output without forming it at full size: with
// rho = G G^dagger, the environment state is the Gram matrix of {K_k G},
// whose nonzero spectrum is shared by sum_k vec(K_k G) vec(K_k G)^dagger.
double environment_entropy(const Channel& ch, const ComplexMatrix& rho) {
  const EigenDecomposition e = eig_hermitian(rho);
  Index rank = 0;
  while (rank < e.values.size() && e.values(rank) > tol::kRank) ++rank;
  if (rank == 0) return 0.0;
  ComplexMatrix g = e.vectors.leftCols(rank);
  for (Index k = 0; k < rank; ++k) g.col(k) *= std::sqrt(e.values(k));
  const std::vector<ComplexMatrix>& ks = ch.kraus();
  const Index r = static_cast<Index>(ks.size());
  const Index width = ch.out_dim() * rank;
  ComplexMatrix w(width, r);
  for (Index k = 0; k < r; ++k) {
    const ComplexMatrix b = ks[k] * g;
    w.col(k) = Eigen::Map<const ComplexVector>(b.data(), width);
  }
  const ComplexMatrix gram = (r <= width) ? ComplexMatrix(w.adjoint() * w)
                                          : ComplexMatrix(w * w.adjoint());
  return entropy_unchecked(gram);
}

void require_input(const Channel& ch, Index dim) {
  if (dim != ch.in_dim()) {
    throw DimensionMismatch("state has dimension " + std::to_string(dim) +
                            ", channel input is " + std::to_string(ch.in_dim()));
  }
}

}  // namespace

void validate(const Ensemble& ens) {
  if (ens.probs.size() != ens.states.size() || ens.probs.empty()) {
    throw DimensionMismatch("ensemble needs one probability per state");
  }
  double total = 0.0;
  for (double p : ens.probs) {
    if (p < 0.0) throw DomainError("negative ensemble probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("ensemble probabilities do not sum to one");
  for (const DensityOperator& s : ens.states) {
    if (s.dim() != ens.states.front().dim()) throw DimensionMismatch("ensemble states differ in dimension");
  }
}

double coherent_info_unchecked(const Channel& ch, const ComplexMatrix& rho) {
  if (ch.has_branches()) {
    double total = 0.0;
    for (const FlagBranch& b : ch.branches()) {
      if (b.probability > 0.0) total += b.probability * coherent_info_unchecked(b.channel, rho);
    }
    return total;
  }
  return entropy_unchecked(apply_map(ch, rho)) - environment_entropy(ch, rho);
}

double coherent_info(const Channel& ch, const DensityOperator& rho) {
  require_input(ch, rho.dim());
  return coherent_info_unchecked(ch, rho.matrix());
}

double coherent_info_state(const DensityOperator& rho, const IndexSet& a_systems,
                           const IndexSet& b_systems) {
  IndexSet ab = a_systems;
  ab.insert(ab.end(), b_systems.begin(), b_systems.end());
  const IndexSet drop = rho.dims().complement(ab);
  const ComplexMatrix rho_ab = partial_trace(rho.matrix(), rho.dims(), drop);
  const SubsystemDims dims_ab = rho.dims().without(drop);
  // Positions of A systems inside the reduced (sorted) factor list.
  const IndexSet kept = rho.dims().complement(drop);
  IndexSet a_local;
  for (int s : a_systems) {
    for (int k = 0; k < static_cast<int>(kept.size()); ++k) {
      if (kept[k] == s) a_local.push_back(k);
    }
  }
  const ComplexMatrix rho_b = partial_trace(rho_ab, dims_ab, a_local);
  return entropy_unchecked(rho_b) - entropy_unchecked(rho_ab);
}

DensityOperator q1_ansatz_state(const Channel& ch) {
  const SubsystemDims& in = ch.in_dims();
  std::vector<DensityOperator> candidates{DensityOperator::maximally_mixed(in)};
  if (in.size() == 2) {
    const int k = in[0];
    candidates.emplace_back(kron(identity(k) / static_cast<double>(k), outer(basis_vector(in[1], 0))),
                            in);
  }
  if (in.size() == 3 && in[1] == in[2]) {
    const int k = in[0];
    candidates.emplace_back(kron(identity(k) / static_cast<double>(k), outer(max_entangled(in[1]))),
                            in);
  }
  std::size_t best = 0;
  double value = coherent_info(ch, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = coherent_info(ch, candidates[i]);
    if (v > value) {
      value = v;
      best = i;
    }
  }
  return candidates[best];
}

double q1_ansatz_value(const Channel& ch) { return coherent_info(ch, q1_ansatz_state(ch)); }

double holevo(const Ensemble& ens) {
  validate(ens);
  const Index n = ens.states.front().dim();
  ComplexMatrix avg = ComplexMatrix::Zero(n, n);
  double inner = 0.0;
  for (std::size_t i = 0; i < ens.probs.size(); ++i) {
    avg += ens.probs[i] * ens.states[i].matrix();
    if (ens.probs[i] > 0.0) inner += ens.probs[i] * von_neumann_entropy(ens.states[i]);
  }
  return entropy_unchecked(avg) - inner;
}

SymAsymOutputs j_sym_asym(const Channel& m, int d) {
  if (m.in_dim() != d) throw DimensionMismatch("assisting channel input must have dimension d");
  const SymAsym p = sym_asym_projectors(d);
  const Channel ext = tensor(m, identity_channel({d}));
  const SubsystemDims out = ext.out_dims();
  return {DensityOperator(apply_map(ext, p.sym) / dim_sym(d), out),
          DensityOperator(apply_map(ext, p.asym) / dim_asym(d), out)};
}

double amplification_lower_bound(const Channel& m, double q, int d) {
  const SymAsymOutputs j = j_sym_asym(m, d);
  return 1.0 - binary_entropy(q) + holevo({{q, 1.0 - q}, {j.sym, j.asym}});
}

double private_info(const Ensemble& ens, const Channel& ch) {
  validate(ens);
  require_input(ch, ens.states.front().dim());
  std::vector<DensityOperator> bob, eve;
  const Index r = static_cast<Index>(ch.kraus().size());
  for (const DensityOperator& s : ens.states) {
    bob.push_back(apply(ch, s));
    eve.push_back(DensityOperator(apply_complementary(ch, s.matrix()), {static_cast<int>(r)}));
  }
  return holevo({ens.probs, bob}) - holevo({ens.probs, eve});
}

double multi_copy_ansatz_value(int n, int d, Index cap) {
  if (n < 1) throw DomainError("copy count must be positive");
  double total = 1.0;
  for (int k = 0; k < n; ++k) total *= 2.0 * d;
  if (total > static_cast<double>(cap)) {
    throw DimensionCap("n-copy input dimension " + std::to_string(static_cast<long long>(total)) +
                       " exceeds cap " + std::to_string(cap));
  }
  const Channel single = private_channel(private_channel_special_q(d), d);
  Channel ch = single;
  for (int k = 1; k < n; ++k) ch = tensor(ch, single);
  const ComplexMatrix one = kron(identity(2) / 2.0, outer(basis_vector(d, 0)));
  return coherent_info(ch, DensityOperator(kron_power(one, n), ch.in_dims()));
}

}  // namespace capamp
