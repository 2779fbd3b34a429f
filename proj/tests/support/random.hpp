#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <algorithm>
#include <random>

#include <Eigen/QR>

#include "capamp/capamp.hpp"

namespace capamp::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex gaussian() {
    std::normal_distribution<double> n;
    return {n(engine_), n(engine_)};
  }

  ComplexMatrix ginibre(Index rows, Index cols) {
    ComplexMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) g(i, j) = gaussian();
    }
    return g;
  }

  ComplexVector ket(Index n) {
    ComplexVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = gaussian();
    return v / v.norm();
  }

  // Full-rank mixed state unless rank is given.
  ComplexMatrix density(Index n, Index rank = 0) {
    const ComplexMatrix g = ginibre(n, rank > 0 ? rank : n);
    const ComplexMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

  ComplexMatrix hermitian(Index n) {
    const ComplexMatrix g = ginibre(n, n);
    return 0.5 * (g + g.adjoint());
  }

  ComplexMatrix unitary(Index n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(ginibre(n, n)));
    return ComplexMatrix(qr.householderQ());
  }

  // Channel with `kraus` operators from a random isometry (raised to the
  // smallest count that admits one).
  Channel channel(const SubsystemDims& in, const SubsystemDims& out, int kraus) {
    const Index din = in.total();
    const Index dout = out.total();
    kraus = std::max<int>(kraus, static_cast<int>((din + dout - 1) / dout));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(ginibre(dout * kraus, din)));
    const Eigen::MatrixXcd v = Eigen::MatrixXcd(qr.householderQ()).leftCols(din);
    std::vector<ComplexMatrix> ks;
    for (int k = 0; k < kraus; ++k) ks.emplace_back(v.middleRows(k * dout, dout));
    return Channel(in, out, ks);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace capamp::testing
