#pragma once

// Dense complex linear algebra and entropy primitives.
//
// Every operator in the library is a ComplexMatrix: a row-major dense
// double-precision complex matrix. Tensor structure lives next to the matrix in
// a SubsystemDims, which lists the dimensions of the tensor factors in order
// (the first factor is the most significant one in the row/column index).
//
// All logarithms are base 2.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

namespace capamp {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Ordered list of subsystem indices (0-based) selecting tensor factors.
using IndexSet = std::vector<int>;

namespace tol {
// Max-entry deviation from hermiticity allowed per unit of dimension.
inline constexpr double kHermiticity = 1e-9;
// Eigenvalues in [-kEigenClamp * dim, 0] are treated as rounding noise.
inline constexpr double kEigenClamp = 1e-9;
inline constexpr double kTrace = 1e-9;
// Eigenvalues at or below this are dropped when a rank is needed.
inline constexpr double kRank = 1e-12;
}  // namespace tol

class SubsystemDims {
 public:
  SubsystemDims() = default;
  SubsystemDims(std::initializer_list<int> factors);
  explicit SubsystemDims(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  int operator[](std::size_t i) const { return factors_[i]; }

  // Product of all factors (1 for an empty list).
  Index total() const;

  // Factors at the given positions, in the given order.
  SubsystemDims select(const IndexSet& systems) const;
  // Factors not in `systems`, in their original order.
  SubsystemDims without(const IndexSet& systems) const;
  IndexSet complement(const IndexSet& systems) const;

  // Throws DimensionMismatch unless total() == dim.
  void check_annotates(Index dim) const;

  friend SubsystemDims concat(const SubsystemDims& a, const SubsystemDims& b);
  friend bool operator==(const SubsystemDims&, const SubsystemDims&) = default;

 private:
  std::vector<int> factors_;
};

SubsystemDims concat(const SubsystemDims& a, const SubsystemDims& b);

ComplexMatrix identity(Index d);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
// a^{⊗k}; k = 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, int k);

ComplexMatrix outer(const ComplexVector& ket);
ComplexVector basis_vector(Index d, Index i);

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            const IndexSet& traced);
ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                const SubsystemDims& dims,
                                const IndexSet& transposed);

// Reorders tensor factors: factor k of the result is factor order[k] of the
// input. `order` must be a permutation of 0..dims.size()-1.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const SubsystemDims& dims,
                                 const IndexSet& order);
ComplexVector permute_subsystems(const ComplexVector& v,
                                 const SubsystemDims& dims,
                                 const IndexSet& order);

// Largest |m_ij - conj(m_ji)|.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance);

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns are eigenvectors, same order as values
};

// Spectral decomposition of a Hermitian matrix. Inputs within the hermiticity
// tolerance are symmetrized first; anything further away throws NotHermitian.
EigenDecomposition eig_hermitian(const ComplexMatrix& m);
RealVector eigenvalues_hermitian(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

// f applied to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
  const EigenDecomposition e = eig_hermitian(m);
  ComplexMatrix scaled = e.vectors;
  for (Index k = 0; k < scaled.cols(); ++k) scaled.col(k) *= f(e.values(k));
  return scaled * e.vectors.adjoint();
}

// |M| = sqrt(M^2) for Hermitian M.
ComplexMatrix hermitian_abs(const ComplexMatrix& m);

// -sum p log2 p over a probability list, 0 log 0 = 0. Entries in
// [-clamp, 0] count as zero; anything more negative throws NotAState.
double shannon_entropy(const RealVector& probabilities, double clamp);
double shannon_entropy(const std::vector<double>& probabilities);

// Von Neumann entropy of a matrix that should be a state. Validates the trace
// and spectrum with the library tolerances.
double entropy(const ComplexMatrix& rho);

double binary_entropy(double x);

// Sum of singular values (unhalved).
double trace_norm(const ComplexMatrix& m);
// Largest singular value.
double operator_norm(const ComplexMatrix& m);

}  // namespace capamp
