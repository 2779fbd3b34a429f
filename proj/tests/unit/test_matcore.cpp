#include <gtest/gtest.h>

#include "capamp/capamp.hpp"
#include "oracles.hpp"
#include "random.hpp"

using namespace capamp;
using capamp::testing::Rng;

namespace {

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<int> random_dims(Rng& rng, int factors) {
  std::vector<int> dims;
  for (int k = 0; k < factors; ++k) dims.push_back(rng.integer(1, 3));
  return dims;
}

Index product(const std::vector<int>& dims) {
  Index n = 1;
  for (int d : dims) n *= d;
  return n;
}

}  // namespace

TEST(SubsystemDims, SelectWithoutComplement) {
  const SubsystemDims dims{2, 3, 4};
  EXPECT_EQ(dims.total(), 24);
  EXPECT_EQ(dims.select({2, 0}), (SubsystemDims{4, 2}));
  EXPECT_EQ(dims.without({1}), (SubsystemDims{2, 4}));
  EXPECT_EQ(dims.complement({0, 2}), (IndexSet{1}));
  EXPECT_EQ(concat(dims, SubsystemDims{5}), (SubsystemDims{2, 3, 4, 5}));
  EXPECT_EQ(SubsystemDims{}.total(), 1);
}

TEST(SubsystemDims, RejectsBadInput) {
  EXPECT_THROW(SubsystemDims({2, 0}), DomainError);
  const SubsystemDims dims{2, 3};
  EXPECT_THROW(dims.select({2}), IndexOutOfRange);
  EXPECT_THROW(dims.check_annotates(5), DimensionMismatch);
}

TEST(Kron, MatchesDefinition) {
  Rng rng(1);
  const ComplexMatrix a = rng.ginibre(2, 3), b = rng.ginibre(3, 2);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index r = 0; r < 3; ++r)
        for (Index s = 0; s < 2; ++s) EXPECT_EQ(k(i * 3 + r, j * 2 + s), a(i, j) * b(r, s));
  EXPECT_LT(max_abs(kron_power(a.topLeftCorner(2, 2), 0) - identity(1)), 1e-15);
  EXPECT_LT(max_abs(kron_power(b, 2) - kron(b, b)), 1e-13);
}

TEST(PartialTrace, MatchesElementwiseOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<int> dims = random_dims(rng, rng.integer(1, 4));
    const ComplexMatrix m = rng.ginibre(product(dims), product(dims));
    const int sys = rng.integer(0, static_cast<int>(dims.size()) - 1);
    const ComplexMatrix lib = partial_trace(m, SubsystemDims(dims), {sys});
    EXPECT_LT(max_abs(lib - oracle::trace_out(m, dims, sys)), 1e-12);
  }
}

TEST(PartialTrace, SeveralSystemsCompose) {
  Rng rng(12);
  const std::vector<int> dims{2, 3, 2};
  const ComplexMatrix m = rng.density(12);
  const ComplexMatrix both = partial_trace(m, SubsystemDims(dims), {0, 2});
  const ComplexMatrix step = oracle::trace_out(oracle::trace_out(m, dims, 2), {2, 3}, 0);
  EXPECT_LT(max_abs(both - step), 1e-13);
  EXPECT_NEAR(partial_trace(m, SubsystemDims(dims), {0, 1, 2})(0, 0).real(), 1.0, 1e-13);
}

TEST(PartialTranspose, MatchesOracleAndIsInvolution) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<int> dims = random_dims(rng, rng.integer(1, 3));
    const ComplexMatrix m = rng.ginibre(product(dims), product(dims));
    const int sys = rng.integer(0, static_cast<int>(dims.size()) - 1);
    const ComplexMatrix pt = partial_transpose(m, SubsystemDims(dims), {sys});
    EXPECT_LT(max_abs(pt - oracle::transpose_factor(m, dims, sys)), 1e-13);
    EXPECT_LT(max_abs(partial_transpose(pt, SubsystemDims(dims), {sys}) - m), 1e-13);
  }
}

TEST(PartialTranspose, AllFactorsIsFullTranspose) {
  Rng rng(14);
  const ComplexMatrix m = rng.ginibre(6, 6);
  EXPECT_LT(max_abs(partial_transpose(m, {2, 3}, {0, 1}) - m.transpose()), 1e-14);
}

TEST(Permute, SwapsKroneckerFactors) {
  Rng rng(15);
  const ComplexMatrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3), c = rng.ginibre(2, 2);
  const ComplexMatrix abc = kron(kron(a, b), c);
  EXPECT_LT(max_abs(permute_subsystems(abc, {2, 3, 2}, {2, 0, 1}) - kron(kron(c, a), b)), 1e-13);
  const ComplexVector u = rng.ket(2), v = rng.ket(3);
  EXPECT_LT((permute_subsystems(kron(u, v), {2, 3}, {1, 0}) - kron(v, u)).norm(), 1e-14);
  EXPECT_THROW(permute_subsystems(abc, {2, 3, 2}, {0, 0, 1}), IndexOutOfRange);
}

TEST(Eigen, DescendingAndReconstructs) {
  Rng rng(16);
  for (int n : {1, 2, 5, 9}) {
    const ComplexMatrix h = rng.hermitian(n);
    const EigenDecomposition e = eig_hermitian(h);
    for (Index k = 1; k < e.values.size(); ++k) EXPECT_GE(e.values(k - 1), e.values(k));
    const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT(max_abs(back - h), 1e-12);
    EXPECT_NEAR(min_eigenvalue(h), e.values(e.values.size() - 1), 1e-14);
  }
}

TEST(Eigen, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(m), NotHermitian);
  EXPECT_FALSE(is_hermitian(m, 1e-9));
}

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(entropy(identity(4) / 4.0), 2.0, 1e-14);
  EXPECT_NEAR(entropy(outer(basis_vector(3, 1))), 0.0, 1e-14);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_THROW(binary_entropy(1.5), DomainError);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.25, 0.25, 0.5}), 1.5, 1e-15);
}

TEST(Entropy, MatchesOracleAndIsUnitarilyInvariant) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(2, 6);
    const ComplexMatrix rho = rng.density(n, rng.integer(1, static_cast<int>(n)));
    const ComplexMatrix u = rng.unitary(n);
    const double s = entropy(rho);
    EXPECT_NEAR(s, oracle::entropy(rho), 1e-10);
    EXPECT_NEAR(s, entropy(u * rho * u.adjoint()), 1e-10);
    EXPECT_LE(s, std::log2(static_cast<double>(n)) + 1e-12);
  }
}

TEST(Entropy, RejectsNonStates) {
  EXPECT_THROW(entropy(identity(2)), NotAState);
  ComplexMatrix neg = identity(2) / 2.0;
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  EXPECT_THROW(entropy(neg), NotAState);
}

TEST(Norms, TraceAndOperator) {
  Rng rng(18);
  const ComplexMatrix u = rng.unitary(3);
  EXPECT_NEAR(trace_norm(u), 3.0, 1e-12);
  EXPECT_NEAR(operator_norm(u), 1.0, 1e-12);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = -2.0;
  d(1, 1) = 0.5;
  EXPECT_NEAR(trace_norm(d), 2.5, 1e-14);
  EXPECT_NEAR(operator_norm(d), 2.0, 1e-14);
  const ComplexMatrix g = rng.ginibre(3, 4);
  EXPECT_NEAR(trace_norm(g), trace_norm(g.adjoint()), 1e-12);
  EXPECT_NEAR(trace_norm(hermitian_abs(d)), 2.5, 1e-14);
}

TEST(DensityOperatorTest, ValidatesAndPurifies) {
  Rng rng(19);
  EXPECT_THROW(DensityOperator(identity(2), {2}), NotAState);
  EXPECT_THROW(DensityOperator(identity(2) / 2.0, {3}), DimensionMismatch);
  const DensityOperator rho(rng.density(6, 3), {2, 3});
  const Purification p = purify(rho);
  EXPECT_EQ(p.dims, (SubsystemDims{2, 3, 3}));
  EXPECT_NEAR(p.state.norm(), 1.0, 1e-12);
  const ComplexMatrix back = partial_trace(outer(p.state), p.dims, {2});
  EXPECT_LT(max_abs(back - rho.matrix()), 1e-10);
  EXPECT_NEAR(von_neumann_entropy(partial_trace(rho, {1})),
              oracle::entropy(oracle::trace_out(rho.matrix(), {2, 3}, 1)), 1e-10);
}
