#include <gtest/gtest.h>

#include "capamp/capamp.hpp"
#include "oracles.hpp"
#include "random.hpp"

using namespace capamp;
using capamp::testing::Rng;

namespace {

Channel without_branches(const Channel& ch) { return Channel(ch.in_dims(), ch.out_dims(), ch.kraus()); }

}  // namespace

TEST(CoherentInfo, IdentityGivesEntropy) {
  Rng rng(51);
  const ComplexMatrix rho = rng.density(3);
  EXPECT_NEAR(coherent_info(identity_channel({3}), DensityOperator(rho)), oracle::entropy(rho), 1e-10);
}

TEST(CoherentInfo, ErasureAtMaximallyMixed) {
  for (int d : {2, 3}) {
    for (double lambda : {0.0, 0.2, 0.5, 0.8}) {
      const Channel e = erasure_channel(lambda, d);
      const DensityOperator mm = DensityOperator::maximally_mixed({d});
      const double expected = (1.0 - 2.0 * lambda) * std::log2(d);
      EXPECT_NEAR(coherent_info(e, mm), expected, 1e-9);
      EXPECT_NEAR(coherent_info(without_branches(e), mm), expected, 1e-9);
    }
  }
}

TEST(CoherentInfo, BranchPathMatchesFullComputation) {
  Rng rng(52);
  const Channel ch = tensor(private_channel(0.7, 2), erasure_channel(0.35, 2));
  for (int k = 0; k < 5; ++k) {
    const DensityOperator rho(rng.density(8), ch.in_dims());
    EXPECT_NEAR(coherent_info(ch, rho), coherent_info(without_branches(ch), rho), 1e-9);
  }
}

TEST(CoherentInfo, PrivateChannelOnKeyPlane) {
  const Channel ch = private_channel(private_channel_special_q(2), 2);
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 0.5;  // |00>
  rho(2, 2) = 0.5;  // |10>
  EXPECT_NEAR(coherent_info(ch, DensityOperator(rho, {2, 2})), 0.5, 1e-9);
  // Maximally mixed input sits at zero for d = 2.
  EXPECT_NEAR(coherent_info(ch, DensityOperator::maximally_mixed({2, 2})), 0.0, 1e-9);
}

TEST(CoherentInfo, DataProcessing) {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel n1 = rng.channel({2}, {3}, rng.integer(1, 3));
    const Channel n2 = rng.channel({3}, {2}, rng.integer(1, 3));
    const DensityOperator rho(rng.density(2));
    const double both = coherent_info(compose(n2, n1), rho);
    EXPECT_LE(both, coherent_info(n1, rho) + 1e-9);
    // Splitting N1's output along its Kraus branches only helps N2.
    double split = 0.0;
    for (const ComplexMatrix& k : n1.kraus()) {
      const ComplexMatrix part = k * rho.matrix() * k.adjoint();
      const double p = part.trace().real();
      if (p > 1e-12) split += p * coherent_info(n2, DensityOperator(part / p));
    }
    EXPECT_LE(both, split + 1e-9);
  }
}

TEST(CoherentInfo, PointwiseBottleneckCanFail) {
  // The composite may beat N2 evaluated at N1(rho) itself.
  Rng rng(53);
  bool found = false;
  for (int trial = 0; trial < 200 && !found; ++trial) {
    const Channel n1 = rng.channel({2}, {3}, rng.integer(1, 3));
    const Channel n2 = rng.channel({3}, {2}, rng.integer(1, 3));
    const DensityOperator rho(rng.density(2));
    const DensityOperator mid(apply_map(n1, rho.matrix()));
    found = coherent_info(compose(n2, n1), rho) > coherent_info(n2, mid) + 1e-6;
  }
  EXPECT_TRUE(found);
}

TEST(CoherentInfo, ReplacingASystemKeepsTheRest) {
  Rng rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho(rng.density(12), {2, 3, 2});
    const DensityOperator sigma(rng.density(2));
    const Channel keep_ab = identity_channel({6});
    const Channel ch = tensor(keep_ab, replacement_channel(sigma, 2)).relabeled({2, 3, 2}, {2, 3, 2});
    const DensityOperator out = apply(ch, rho);
    EXPECT_NEAR(coherent_info_state(out, {0}, {1, 2}), coherent_info_state(rho, {0}, {1}), 1e-9);
  }
}

TEST(CoherentInfo, InvariantUnderKrausMixing) {
  Rng rng(55);
  const Channel ch = rng.channel({3}, {2}, 3);
  const ComplexMatrix u = rng.unitary(3);
  std::vector<ComplexMatrix> mixed(3, ComplexMatrix::Zero(2, 3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) mixed[a] += u(a, b) * ch.kraus()[b];
  std::vector<ComplexMatrix> reversed(ch.kraus().rbegin(), ch.kraus().rend());
  const Channel m(ch.in_dims(), ch.out_dims(), mixed), r(ch.in_dims(), ch.out_dims(), reversed);
  for (int k = 0; k < 5; ++k) {
    const DensityOperator rho(rng.density(3));
    EXPECT_NEAR(coherent_info(ch, rho), coherent_info(m, rho), 1e-9);
    EXPECT_NEAR(coherent_info(ch, rho), coherent_info(r, rho), 1e-9);
  }
}

TEST(CoherentInfo, DimensionMismatch) {
  EXPECT_THROW(coherent_info(identity_channel({2}), DensityOperator::maximally_mixed({3})),
               DimensionMismatch);
}

TEST(Ansatz, ValuesForKnownChannels) {
  EXPECT_NEAR(q1_ansatz_value(identity_channel({3})), std::log2(3.0), 1e-9);
  for (int d : {2, 3, 4}) {
    EXPECT_NEAR(q1_ansatz_value(private_channel(private_channel_special_q(d), d)), 1.0 / d, 1e-9);
  }
  // Erasure-assisted pair: 1 - lambda h(q).
  for (double q : {0.6, 0.75}) {
    const Channel ch = tensor(private_channel(q, 2), erasure_channel(0.4, 2));
    EXPECT_NEAR(q1_ansatz_value(ch), 1.0 - 0.4 * oracle::h2(q), 1e-9);
  }
}

TEST(Optimizer, KnownMaxima) {
  OptimizerConfig cfg;
  cfg.restarts = 6;
  cfg.seed = 7;
  EXPECT_NEAR(q1_optimize(identity_channel({2}), cfg).value, 1.0, 1e-8);
  EXPECT_NEAR(q1_optimize(erasure_channel(0.5, 2), cfg).value, 0.0, 1e-6);
  const OptimizerResult r = q1_optimize(private_channel(0.75, 2), cfg);
  EXPECT_NEAR(r.value, 0.5, 1e-6);
  EXPECT_NEAR(coherent_info(private_channel(0.75, 2), r.state), r.value, 1e-9);
}

TEST(Optimizer, DeterministicAcrossThreadCounts) {
  OptimizerConfig a;
  a.restarts = 8;
  a.seed = 99;
  a.threads = 1;
  OptimizerConfig b = a;
  b.threads = 4;
  const Channel ch = private_channel(0.6, 2);
  const OptimizerResult ra = q1_optimize(ch, a), rb = q1_optimize(ch, b);
  EXPECT_EQ(ra.restart_values, rb.restart_values);
  EXPECT_EQ(ra.value, rb.value);
  OptimizerConfig c = a;
  c.seed = 100;
  EXPECT_NE(q1_optimize(ch, c).restart_values, ra.restart_values);
}

TEST(Optimizer, CapAndConfiguration) {
  OptimizerConfig cfg;
  cfg.dimension_cap = 4;
  EXPECT_THROW(q1_optimize(identity_channel({5}), cfg), DimensionCap);
  cfg.dimension_cap = 16;
  cfg.restarts = 0;
  EXPECT_THROW(q1_optimize(identity_channel({2}), cfg), DomainError);
}

TEST(Optimizer, NotBelowAmplificationBound) {
  for (double q : {0.6, 0.8}) {
    const Channel m = erasure_channel(0.3, 2);
    const Channel ch = tensor(private_channel(q, 2), m);
    OptimizerConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 3;
    cfg.initial_states = {q1_ansatz_state(ch)};
    EXPECT_LE(amplification_lower_bound(m, q, 2), q1_optimize(ch, cfg).value + 1e-6);
  }
}

TEST(Holevo, Properties) {
  Rng rng(56);
  const ComplexMatrix s = rng.density(3);
  EXPECT_NEAR(holevo({{0.3, 0.7}, {DensityOperator(s), DensityOperator(s)}}), 0.0, 1e-10);
  EXPECT_NEAR(holevo({{0.25, 0.25, 0.25, 0.25},
                      {DensityOperator(outer(basis_vector(4, 0))), DensityOperator(outer(basis_vector(4, 1))),
                       DensityOperator(outer(basis_vector(4, 2))), DensityOperator(outer(basis_vector(4, 3)))}}),
              2.0, 1e-10);
  for (int k = 0; k < 10; ++k) {
    const double p = rng.uniform();
    EXPECT_GE(holevo({{p, 1.0 - p}, {DensityOperator(rng.density(3)), DensityOperator(rng.density(3))}}),
              -1e-12);
  }
  EXPECT_THROW(holevo({{0.5, 0.6}, {DensityOperator(s), DensityOperator(s)}}), DomainError);
  EXPECT_THROW(holevo({{1.0}, {}}), DimensionMismatch);
}

TEST(SymAsym, IdentityAndErasure) {
  for (int d : {2, 3}) {
    const SymAsym p = sym_asym_projectors(d);
    const SymAsymOutputs id = j_sym_asym(identity_channel({d}), d);
    EXPECT_LT((id.sym.matrix() - p.sym / dim_sym(d)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(amplification_lower_bound(identity_channel({d}), 0.3, d), 1.0, 1e-9);
    for (double q : {0.2, 0.7}) {
      EXPECT_NEAR(amplification_lower_bound(erasure_channel(0.6, d), q, d), 1.0 - 0.6 * oracle::h2(q), 1e-9);
      EXPECT_NEAR(amplification_lower_bound(depolarizing_channel(0.3, d), q, d),
                  1.0 - oracle::h2(q) + oracle::depolarizing_chi(q, 0.3, d), 1e-9);
    }
  }
  EXPECT_THROW(j_sym_asym(identity_channel({3}), 2), DimensionMismatch);
}

TEST(PrivateInfo, Examples) {
  for (int d : {2, 3}) {
    const ComplexMatrix shield = identity(d) / static_cast<double>(d);
    const Ensemble ens{{0.5, 0.5},
                       {DensityOperator(kron(outer(basis_vector(2, 0)), shield), {2, d}),
                        DensityOperator(kron(outer(basis_vector(2, 1)), shield), {2, d})}};
    EXPECT_NEAR(private_info(ens, private_channel(private_channel_special_q(d), d)), 1.0, 1e-9);
  }
  const Ensemble single{{1.0}, {DensityOperator::maximally_mixed({2})}};
  EXPECT_NEAR(private_info(single, depolarizing_channel(0.1, 2)), 0.0, 1e-10);
  const Ensemble bits{{0.5, 0.5},
                      {DensityOperator(outer(basis_vector(2, 0))), DensityOperator(outer(basis_vector(2, 1)))}};
  EXPECT_NEAR(private_info(bits, identity_channel({2})), 1.0, 1e-10);
}

TEST(MultiCopy, Values) {
  EXPECT_NEAR(multi_copy_ansatz_value(1, 2), 0.5, 1e-9);
  EXPECT_NEAR(multi_copy_ansatz_value(2, 2), 1.0, 1e-9);
  EXPECT_NEAR(multi_copy_ansatz_value(2, 3), 2.0 / 3.0, 1e-9);
  EXPECT_THROW(multi_copy_ansatz_value(3, 3), DimensionCap);
  EXPECT_THROW(multi_copy_ansatz_value(0, 2), DomainError);
}
