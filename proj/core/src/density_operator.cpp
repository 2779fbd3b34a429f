#include "capamp/density_operator.hpp"

#include <cmath>
#include <string>

#include "capamp/errors.hpp"

namespace capamp {

namespace {

ComplexMatrix validated(const ComplexMatrix& m, const SubsystemDims& dims) {
  if (m.rows() != m.cols()) throw NotAState("density operator must be square");
  if (m.rows() == 0) throw NotAState("density operator must be nonempty");
  dims.check_annotates(m.rows());
  if (!m.allFinite()) throw NotAState("density operator has non-finite entries");
  const double dim = static_cast<double>(m.rows());
  if (hermiticity_defect(m) > tol::kHermiticity * dim) {
    throw NotAState("density operator is not Hermitian");
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace * std::max(1.0, dim)) {
    throw NotAState("density operator trace is " + std::to_string(tr));
  }
  const double lo = min_eigenvalue(h);
  if (lo < -tol::kEigenClamp * dim) {
    throw NotAState("density operator has eigenvalue " + std::to_string(lo));
  }
  return h;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, SubsystemDims dims)
    : matrix_(validated(matrix, dims)), dims_(std::move(dims)) {}

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : DensityOperator(matrix, SubsystemDims{static_cast<int>(matrix.rows())}) {}

DensityOperator DensityOperator::maximally_mixed(const SubsystemDims& dims) {
  const Index n = dims.total();
  return DensityOperator(identity(n) / static_cast<double>(n), dims);
}

DensityOperator DensityOperator::pure(const ComplexVector& ket, const SubsystemDims& dims) {
  const double norm = ket.norm();
  if (norm == 0.0) throw NotAState("zero vector is not a state");
  const ComplexVector unit = ket / norm;
  return DensityOperator(outer(unit), dims);
}

DensityOperator DensityOperator::normalized(const ComplexMatrix& psd,
                                            const SubsystemDims& dims) {
  const double tr = psd.trace().real();
  if (!(tr > 0.0)) throw NotAState("cannot normalize an operator with trace <= 0");
  return DensityOperator(psd / tr, dims);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return shannon_entropy(eigenvalues_hermitian(rho.matrix()),
                         tol::kEigenClamp * static_cast<double>(rho.dim()));
}

DensityOperator partial_trace(const DensityOperator& rho, const IndexSet& traced) {
  return DensityOperator(partial_trace(rho.matrix(), rho.dims(), traced),
                         rho.dims().without(traced));
}

DensityOperator permute_subsystems(const DensityOperator& rho, const IndexSet& order) {
  return DensityOperator(permute_subsystems(rho.matrix(), rho.dims(), order),
                         rho.dims().select(order));
}

Purification purify(const DensityOperator& rho) {
  const EigenDecomposition e = eig_hermitian(rho.matrix());
  int rank = 0;
  for (Index k = 0; k < e.values.size(); ++k) {
    if (e.values(k) > tol::kRank) ++rank;
  }
  const Index n = rho.dim();
  ComplexVector psi = ComplexVector::Zero(n * rank);
  double kept = 0.0;
  for (int k = 0; k < rank; ++k) kept += e.values(k);
  for (int k = 0; k < rank; ++k) {
    const double w = std::sqrt(e.values(k) / kept);
    for (Index i = 0; i < n; ++i) psi(i * rank + k) = w * e.vectors(i, k);
  }
  return {psi, concat(rho.dims(), SubsystemDims{rank})};
}

}  // namespace capamp
