#include "capamp/states.hpp"

#include <cmath>
#include <string>

#include "capamp/errors.hpp"

namespace capamp {

namespace {

void require_probability(double q, const char* what) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

// Columns: symmetric basis (|ii>, then (|ij>+|ji>)/sqrt2 for i<j), then the
// antisymmetric basis (|ij>-|ji>)/sqrt2.
ComplexMatrix swap_eigenbasis(int d) {
  const Index n = static_cast<Index>(d) * d;
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  Index col = 0;
  for (int i = 0; i < d; ++i) u(i * d + i, col++) = 1.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      u(i * d + j, col) = s;
      u(j * d + i, col) = s;
      ++col;
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      u(i * d + j, col) = s;
      u(j * d + i, col) = -s;
      ++col;
    }
  }
  return u;
}

bool is_unitary(const ComplexMatrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace

ComplexVector max_entangled(int d) {
  if (d < 1) throw DomainError("dimension must be positive");
  ComplexVector v = ComplexVector::Zero(static_cast<Index>(d) * d);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i) = w;
  return v;
}

ComplexMatrix swap_operator(int d) {
  if (d < 1) throw DomainError("dimension must be positive");
  const Index n = static_cast<Index>(d) * d;
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return f;
}

SymAsym sym_asym_projectors(int d) {
  if (d < 2) throw DomainError("sym_asym_projectors needs d >= 2");
  const ComplexMatrix f = swap_operator(d);
  const ComplexMatrix id = identity(f.rows());
  return {0.5 * (id + f), 0.5 * (id - f), f};
}

DensityOperator gamma_qd(double q, int d) {
  require_probability(q, "q");
  const SymAsym p = sym_asym_projectors(d);
  ComplexVector plus = ComplexVector::Zero(4), minus = ComplexVector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  plus(0) = s;
  plus(3) = s;
  minus(0) = s;
  minus(3) = -s;
  const ComplexMatrix g = q * kron(outer(plus), p.sym / dim_sym(d)) +
                          (1.0 - q) * kron(outer(minus), p.asym / dim_asym(d));
  return DensityOperator(g, {2, 2, d, d});
}

PbitSpec gamma_qd_spec(double q, int d) {
  require_probability(q, "q");
  if (d < 2) throw DomainError("gamma_qd_spec needs d >= 2");
  const int ns = dim_sym(d);
  const Index n = static_cast<Index>(d) * d;
  ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
  ComplexMatrix flip = identity(n);
  for (Index k = 0; k < n; ++k) {
    if (k < ns) {
      sigma(k, k) = q / ns;
    } else {
      sigma(k, k) = (1.0 - q) / dim_asym(d);
      flip(k, k) = -1.0;
    }
  }
  const ComplexMatrix u = swap_eigenbasis(d);
  return PbitSpec{2, DensityOperator(sigma, {d, d}), {u, u * flip}};
}

DensityOperator pbit_from_spec(const PbitSpec& spec) {
  const int d0 = spec.key_dim;
  if (d0 < 1) throw InvalidSpec("key dimension must be positive");
  if (static_cast<int>(spec.unitaries.size()) != d0) {
    throw InvalidSpec("need exactly one twisting unitary per key value");
  }
  const Index n = spec.sigma.dim();
  for (const ComplexMatrix& u : spec.unitaries) {
    if (u.rows() != n || !is_unitary(u, 1e-9)) {
      throw InvalidSpec("twisting operator is not a unitary on the shield");
    }
  }
  SubsystemDims shield = spec.sigma.dims();
  if (shield.size() == 1) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (static_cast<Index>(side) * side != n) {
      throw InvalidSpec("single-factor shield must have square dimension");
    }
    shield = SubsystemDims{side, side};
  } else if (shield.size() != 2) {
    throw InvalidSpec("shield must factor as A0 B0");
  }
  const Index key = static_cast<Index>(d0) * d0;
  ComplexMatrix g = ComplexMatrix::Zero(key * n, key * n);
  for (int k = 0; k < d0; ++k) {
    for (int l = 0; l < d0; ++l) {
      const Index row = (static_cast<Index>(k) * d0 + k) * n;
      const Index col = (static_cast<Index>(l) * d0 + l) * n;
      g.block(row, col, n, n) =
          spec.unitaries[k] * spec.sigma.matrix() * spec.unitaries[l].adjoint() /
          static_cast<double>(d0);
    }
  }
  return DensityOperator(g, concat(SubsystemDims{d0, d0}, shield));
}

Complex key_overlap(const PbitSpec& spec) {
  if (spec.unitaries.size() < 2) throw InvalidSpec("key overlap needs two unitaries");
  return (spec.unitaries[0] * spec.sigma.matrix() * spec.unitaries[1].adjoint()).trace();
}

Complex key_overlap(const DensityOperator& gamma) {
  const SubsystemDims& dims = gamma.dims();
  if (dims.size() < 2 || dims[0] != 2 || dims[1] != 2) {
    throw DimensionMismatch("key overlap needs a two-qubit key");
  }
  const Index n = gamma.dim() / 4;
  return 2.0 * gamma.matrix().block(0, 3 * n, n, n).trace();
}

CcqState key_ccq(const DensityOperator& gamma, int d0) {
  const SubsystemDims& dims = gamma.dims();
  if (dims.size() != 4 || dims[0] != d0 || dims[1] != d0) {
    throw DimensionMismatch("key_ccq expects dims [d0, d0, dA, dB]");
  }
  const Purification pur = purify(gamma);
  const int env = pur.dims[pur.dims.size() - 1];
  const Index shield = static_cast<Index>(dims[2]) * dims[3];
  CcqState out;
  out.probs.assign(d0, std::vector<double>(d0, 0.0));
  out.eve_states.resize(d0);
  const DensityOperator mixed = DensityOperator::maximally_mixed({env});
  for (int i = 0; i < d0; ++i) {
    for (int j = 0; j < d0; ++j) {
      const Index offset = (static_cast<Index>(i) * d0 + j) * shield * env;
      ComplexMatrix m(shield, env);
      for (Index s = 0; s < shield; ++s) {
        for (Index e = 0; e < env; ++e) m(s, e) = pur.state(offset + s * env + e);
      }
      const ComplexMatrix rho = m.transpose() * m.conjugate();
      const double p = rho.trace().real();
      out.probs[i][j] = p;
      if (p > tol::kRank) {
        out.eve_states[i].push_back(DensityOperator(rho / p, {env}));
      } else {
        out.probs[i][j] = 0.0;
        out.eve_states[i].push_back(mixed);
      }
    }
  }
  return out;
}

bool is_secure(const CcqState& ccq, double tolerance) {
  std::vector<const DensityOperator*> live;
  for (std::size_t i = 0; i < ccq.probs.size(); ++i) {
    for (std::size_t j = 0; j < ccq.probs[i].size(); ++j) {
      if (ccq.probs[i][j] > tolerance) live.push_back(&ccq.eve_states[i][j]);
    }
  }
  for (std::size_t a = 0; a < live.size(); ++a) {
    for (std::size_t b = a + 1; b < live.size(); ++b) {
      if (trace_norm(live[a]->matrix() - live[b]->matrix()) > tolerance) return false;
    }
  }
  return true;
}

bool is_perfect_pdit(const CcqState& ccq, double tolerance) {
  const std::size_t d0 = ccq.probs.size();
  for (std::size_t i = 0; i < d0; ++i) {
    for (std::size_t j = 0; j < d0; ++j) {
      const double p = ccq.probs[i][j];
      if (i == j && std::abs(p - 1.0 / static_cast<double>(d0)) > tolerance) return false;
      if (i != j && p > tolerance) return false;
    }
  }
  return is_secure(ccq, tolerance);
}

DensityOperator zeta_state(double q, int d, int r, int m, int N, Index cap) {
  if (!(q > 0.0 && q <= 0.5)) throw DomainError("zeta_state needs 0 < q <= 1/2");
  if (d < 2 || r < 1 || m < 1 || N < 1) throw DomainError("zeta_state parameters must be positive (d >= 2)");
  const int pairs = r * m * N;
  double total = 4.0;
  for (int k = 0; k < 2 * pairs; ++k) total *= d;
  if (total > static_cast<double>(cap)) {
    throw DimensionCap("zeta_state dimension " + std::to_string(static_cast<long long>(total)) +
                       " exceeds cap " + std::to_string(cap));
  }
  const SymAsym p = sym_asym_projectors(d);
  const ComplexMatrix sym = p.sym / dim_sym(d);
  const ComplexMatrix tau1 = kron_power(0.5 * (sym + p.asym / dim_asym(d)), r * N);
  const ComplexMatrix tau2 = kron_power(sym, r * N);
  const ComplexMatrix diag = kron_power(q * 0.5 * (tau1 + tau2), m);
  const ComplexMatrix off = kron_power(q * 0.5 * (tau1 - tau2), m);
  const ComplexMatrix mid = kron_power((0.5 - q) * tau2, m);
  const Index n = diag.rows();
  ComplexMatrix z = ComplexMatrix::Zero(4 * n, 4 * n);
  z.block(0, 0, n, n) = diag;
  z.block(3 * n, 3 * n, n, n) = diag;
  z.block(0, 3 * n, n, n) = off;
  z.block(3 * n, 0, n, n) = off;
  z.block(n, n, n, n) = mid;
  z.block(2 * n, 2 * n, n, n) = mid;
  z /= 2.0 * std::pow(q, m) + 2.0 * std::pow(0.5 - q, m);
  std::vector<int> factors{2, 2};
  for (int k = 0; k < pairs; ++k) {
    factors.push_back(d);
    factors.push_back(d);
  }
  return DensityOperator(z, SubsystemDims(factors));
}

IndexSet zeta_bob_systems(int r, int m, int N) {
  IndexSet out{1};
  for (int k = 0; k < r * m * N; ++k) out.push_back(3 + 2 * k);
  return out;
}

IndexSet zeta_copy_systems(int r, int m, int N, int copy) {
  if (copy < 0 || copy >= N) throw IndexOutOfRange("shield copy out of range");
  IndexSet out;
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < r; ++j) {
      const int pair = k * r * N + copy * r + j;
      out.push_back(2 + 2 * pair);
      out.push_back(3 + 2 * pair);
    }
  }
  return out;
}

DensityOperator zeta_key_shield_form(const DensityOperator& zeta, int d, int r, int m) {
  const int pairs = r * m;
  if (static_cast<int>(zeta.dims().size()) != 2 + 2 * pairs) {
    throw DimensionMismatch("zeta_key_shield_form expects a single shield copy");
  }
  IndexSet order{0, 1};
  for (int k = 0; k < pairs; ++k) order.push_back(2 + 2 * k);
  for (int k = 0; k < pairs; ++k) order.push_back(3 + 2 * k);
  const ComplexMatrix permuted = permute_subsystems(zeta.matrix(), zeta.dims(), order);
  int side = 1;
  for (int k = 0; k < pairs; ++k) side *= d;
  return DensityOperator(permuted, {2, 2, side, side});
}

double ppt_min_eigenvalue(const DensityOperator& rho, const IndexSet& transposed) {
  return min_eigenvalue(partial_transpose(rho.matrix(), rho.dims(), transposed));
}

}  // namespace capamp
