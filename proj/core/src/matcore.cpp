#include "capamp/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "capamp/errors.hpp"

namespace capamp {

namespace {

using ColMatrix = Eigen::MatrixXcd;

void check_systems(const SubsystemDims& dims, const IndexSet& systems) {
  std::vector<bool> seen(dims.size(), false);
  for (int s : systems) {
    if (s < 0 || static_cast<std::size_t>(s) >= dims.size()) {
      throw IndexOutOfRange("subsystem index " + std::to_string(s) +
                            " out of range for " + std::to_string(dims.size()) +
                            " factors");
    }
    if (seen[s]) throw IndexOutOfRange("subsystem index repeated");
    seen[s] = true;
  }
}

// Flat offsets of every multi-index over `systems` (first listed system most
// significant), measured in the full index space described by `dims`.
std::vector<Index> offsets(const SubsystemDims& dims, const IndexSet& systems) {
  std::vector<Index> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * dims[k + 1];
  }
  std::vector<Index> out{0};
  for (int s : systems) {
    std::vector<Index> next;
    next.reserve(out.size() * dims[s]);
    for (Index base : out) {
      for (int i = 0; i < dims[s]; ++i) next.push_back(base + i * strides[s]);
    }
    out = std::move(next);
  }
  return out;
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

SubsystemDims::SubsystemDims(std::initializer_list<int> factors)
    : SubsystemDims(std::vector<int>(factors)) {}

SubsystemDims::SubsystemDims(std::vector<int> factors) : factors_(std::move(factors)) {
  for (int f : factors_) {
    if (f < 1) throw DomainError("subsystem dimension must be positive");
  }
}

Index SubsystemDims::total() const {
  Index p = 1;
  for (int f : factors_) p *= f;
  return p;
}

SubsystemDims SubsystemDims::select(const IndexSet& systems) const {
  check_systems(*this, systems);
  std::vector<int> out;
  out.reserve(systems.size());
  for (int s : systems) out.push_back(factors_[s]);
  return SubsystemDims(std::move(out));
}

IndexSet SubsystemDims::complement(const IndexSet& systems) const {
  check_systems(*this, systems);
  IndexSet out;
  for (int k = 0; k < static_cast<int>(factors_.size()); ++k) {
    if (std::find(systems.begin(), systems.end(), k) == systems.end()) out.push_back(k);
  }
  return out;
}

SubsystemDims SubsystemDims::without(const IndexSet& systems) const {
  return select(complement(systems));
}

void SubsystemDims::check_annotates(Index dim) const {
  if (total() != dim) {
    throw DimensionMismatch("subsystem dimensions multiply to " +
                            std::to_string(total()) + ", matrix has dimension " +
                            std::to_string(dim));
  }
}

SubsystemDims concat(const SubsystemDims& a, const SubsystemDims& b) {
  std::vector<int> f = a.factors_;
  f.insert(f.end(), b.factors_.begin(), b.factors_.end());
  return SubsystemDims(std::move(f));
}

ComplexMatrix identity(Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int k) {
  if (k < 0) throw DomainError("kron_power: negative exponent");
  ComplexMatrix out = identity(1);
  for (int i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

ComplexMatrix outer(const ComplexVector& ket) { return ket * ket.adjoint(); }

ComplexVector basis_vector(Index d, Index i) {
  if (i < 0 || i >= d) throw IndexOutOfRange("basis_vector index out of range");
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            const IndexSet& traced) {
  check_square(m, "partial_trace");
  dims.check_annotates(m.rows());
  check_systems(dims, traced);
  if (traced.empty()) return m;
  const std::vector<Index> keep = offsets(dims, dims.complement(traced));
  const std::vector<Index> sum = offsets(dims, traced);
  const Index n = static_cast<Index>(keep.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      Complex acc = 0.0;
      for (Index t : sum) acc += m(keep[a] + t, keep[b] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemDims& dims,
                                const IndexSet& transposed) {
  check_square(m, "partial_transpose");
  dims.check_annotates(m.rows());
  check_systems(dims, transposed);
  if (transposed.empty()) return m;
  const std::vector<Index> keep = offsets(dims, dims.complement(transposed));
  const std::vector<Index> swap = offsets(dims, transposed);
  ComplexMatrix out(m.rows(), m.cols());
  for (Index a : keep) {
    for (Index b : keep) {
      for (Index s : swap) {
        for (Index t : swap) out(a + s, b + t) = m(a + t, b + s);
      }
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 const IndexSet& order) {
  check_square(m, "permute_subsystems");
  dims.check_annotates(m.rows());
  check_systems(dims, order);
  if (order.size() != dims.size()) throw IndexOutOfRange("permutation has wrong length");
  const std::vector<Index> src = offsets(dims, order);
  const Index n = m.rows();
  ComplexMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out(i, j) = m(src[i], src[j]);
  }
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const SubsystemDims& dims,
                                 const IndexSet& order) {
  dims.check_annotates(v.size());
  check_systems(dims, order);
  if (order.size() != dims.size()) throw IndexOutOfRange("permutation has wrong length");
  const std::vector<Index> src = offsets(dims, order);
  ComplexVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(src[i]);
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  check_square(m, "hermiticity_defect");
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tolerance;
}

namespace {

ColMatrix symmetrized(const ComplexMatrix& m) {
  check_square(m, "eig_hermitian");
  const double defect = hermiticity_defect(m);
  const double allowed = tol::kHermiticity * static_cast<double>(std::max<Index>(1, m.rows()));
  if (defect > allowed) {
    throw NotHermitian("matrix deviates from hermiticity by " + std::to_string(defect));
  }
  ColMatrix h = 0.5 * (m + m.adjoint());
  return h;
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& m) {
  const ColMatrix h = symmetrized(m);
  Eigen::SelfAdjointEigenSolver<ColMatrix> solver(h, Eigen::ComputeEigenvectors);
  const Index n = h.rows();
  EigenDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  // Eigen sorts ascending.
  for (Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

RealVector eigenvalues_hermitian(const ComplexMatrix& m) {
  const ColMatrix h = symmetrized(m);
  Eigen::SelfAdjointEigenSolver<ColMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

double min_eigenvalue(const ComplexMatrix& m) {
  const RealVector ev = eigenvalues_hermitian(m);
  return ev.size() == 0 ? 0.0 : ev(ev.size() - 1);
}

ComplexMatrix hermitian_abs(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return std::abs(x); });
}

double shannon_entropy(const RealVector& probabilities, double clamp) {
  double s = 0.0;
  for (Index k = 0; k < probabilities.size(); ++k) {
    const double p = probabilities(k);
    if (p < -clamp) {
      throw NotAState("negative weight " + std::to_string(p) + " in entropy");
    }
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double shannon_entropy(const std::vector<double>& probabilities) {
  return shannon_entropy(
      Eigen::Map<const RealVector>(probabilities.data(),
                                   static_cast<Index>(probabilities.size())),
      0.0);
}

double entropy(const ComplexMatrix& rho) {
  check_square(rho, "entropy");
  const double dim = static_cast<double>(rho.rows());
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace * std::max(1.0, dim)) {
    throw NotAState("trace " + std::to_string(tr) + " is not one");
  }
  return shannon_entropy(eigenvalues_hermitian(rho), tol::kEigenClamp * dim);
}

double binary_entropy(double x) {
  constexpr double slack = 1e-12;
  if (!(x >= -slack && x <= 1.0 + slack)) {
    throw DomainError("binary_entropy argument outside [0,1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && hermiticity_defect(m) <= 1e-14 * (1.0 + m.cwiseAbs().maxCoeff())) {
    return eigenvalues_hermitian(m).cwiseAbs().sum();
  }
  Eigen::BDCSVD<ColMatrix> svd{ColMatrix(m)};
  return svd.singularValues().sum();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<ColMatrix> svd{ColMatrix(m)};
  return svd.singularValues()(0);
}

}  // namespace capamp
