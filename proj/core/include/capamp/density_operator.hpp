#pragma once

#include "capamp/matcore.hpp"

namespace capamp {

// Hermitian, positive semidefinite, unit-trace matrix with its tensor
// factorization. Construction validates within the library tolerances and
// stores the symmetrized matrix (m + m^dagger)/2.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, SubsystemDims dims);
  // Single-factor convenience.
  explicit DensityOperator(ComplexMatrix matrix);

  static DensityOperator maximally_mixed(const SubsystemDims& dims);
  static DensityOperator pure(const ComplexVector& ket, const SubsystemDims& dims);
  // Normalizes a nonzero PSD matrix by its trace.
  static DensityOperator normalized(const ComplexMatrix& psd, const SubsystemDims& dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SubsystemDims& dims() const { return dims_; }
  Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  SubsystemDims dims_;
};

double von_neumann_entropy(const DensityOperator& rho);

DensityOperator partial_trace(const DensityOperator& rho, const IndexSet& traced);
DensityOperator permute_subsystems(const DensityOperator& rho, const IndexSet& order);

struct Purification {
  ComplexVector state;  // on H ⊗ H_E, environment last
  SubsystemDims dims;   // rho.dims() followed by {rank}
};

// |psi> = sum_k sqrt(lambda_k) |v_k> ⊗ |k>, with the environment dimension
// equal to the numerical rank of rho.
Purification purify(const DensityOperator& rho);

}  // namespace capamp
