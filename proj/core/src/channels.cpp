#include "capamp/channels.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "capamp/errors.hpp"
#include "capamp/states.hpp"

namespace capamp {

namespace {

constexpr double kTraceTolerance = 1e-9;
constexpr double kPrune = 1e-12;

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}

std::vector<ComplexMatrix> pruned(std::vector<ComplexMatrix> kraus) {
  std::vector<ComplexMatrix> out;
  out.reserve(kraus.size());
  for (ComplexMatrix& k : kraus) {
    if (k.norm() >= kPrune) out.push_back(std::move(k));
  }
  if (out.empty() && !kraus.empty()) out.push_back(std::move(kraus.front()));
  return out;
}

// Splits a flat dimension into factors if a prefix of `dims` multiplies to d.
std::pair<SubsystemDims, SubsystemDims> split_dims(const SubsystemDims& dims, Index d_in) {
  Index prod = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (prod == d_in) {
      std::vector<int> a(dims.factors().begin(), dims.factors().begin() + k);
      std::vector<int> b(dims.factors().begin() + k, dims.factors().end());
      return {SubsystemDims(a), SubsystemDims(b)};
    }
    prod *= dims[k];
  }
  const Index d_out = dims.total() / d_in;
  return {SubsystemDims{static_cast<int>(d_in)}, SubsystemDims{static_cast<int>(d_out)}};
}

std::vector<FlagBranch> as_branches(const Channel& c) {
  if (c.has_branches()) return c.branches();
  return {FlagBranch{1.0, c}};
}

}  // namespace

Channel::Channel(SubsystemDims in_dims, SubsystemDims out_dims,
                 std::vector<ComplexMatrix> kraus)
    : in_dims_(std::move(in_dims)), out_dims_(std::move(out_dims)), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw NotAChannel("Kraus list is empty");
  const Index din = in_dims_.total();
  const Index dout = out_dims_.total();
  ComplexMatrix sum = ComplexMatrix::Zero(din, din);
  for (const ComplexMatrix& k : kraus_) {
    if (k.rows() != dout || k.cols() != din) {
      throw NotAChannel("Kraus operator has shape " + std::to_string(k.rows()) + "x" +
                        std::to_string(k.cols()) + ", expected " + std::to_string(dout) +
                        "x" + std::to_string(din));
    }
    sum.noalias() += k.adjoint() * k;
  }
  const double defect = (sum - identity(din)).cwiseAbs().maxCoeff();
  if (defect > kTraceTolerance) {
    throw NotAChannel("Kraus set is not trace preserving (defect " + std::to_string(defect) + ")");
  }
}

Channel Channel::with_branches(std::vector<FlagBranch> branches) const {
  double total = 0.0;
  for (const FlagBranch& b : branches) {
    if (b.probability < 0.0) throw NotAChannel("negative branch probability");
    if (b.channel.in_dim() != in_dim()) throw DimensionMismatch("branch input dimension differs");
    total += b.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) throw NotAChannel("branch probabilities do not sum to one");
  Channel out = *this;
  out.branches_ = std::move(branches);
  return out;
}

Channel Channel::relabeled(SubsystemDims in_dims, SubsystemDims out_dims) const {
  if (in_dims.total() != in_dim() || out_dims.total() != out_dim()) {
    throw DimensionMismatch("relabeled dims must keep the total dimensions");
  }
  Channel out = *this;
  out.in_dims_ = std::move(in_dims);
  out.out_dims_ = std::move(out_dims);
  return out;
}

ComplexMatrix apply_map(const Channel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.in_dim() || x.cols() != ch.in_dim()) {
    throw DimensionMismatch("input has dimension " + std::to_string(x.rows()) +
                            ", channel expects " + std::to_string(ch.in_dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.out_dim(), ch.out_dim());
  for (const ComplexMatrix& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

ComplexMatrix apply_adjoint(const Channel& ch, const ComplexMatrix& y) {
  if (y.rows() != ch.out_dim() || y.cols() != ch.out_dim()) {
    throw DimensionMismatch("adjoint input does not match channel output");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.in_dim(), ch.in_dim());
  for (const ComplexMatrix& k : ch.kraus()) out.noalias() += k.adjoint() * y * k;
  return out;
}

DensityOperator apply(const Channel& ch, const DensityOperator& rho) {
  return DensityOperator(apply_map(ch, rho.matrix()), ch.out_dims());
}

ComplexMatrix unnormalized_choi(const Channel& ch) {
  const Index din = ch.in_dim();
  const Index dout = ch.out_dim();
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  ComplexVector v(din * dout);
  for (const ComplexMatrix& k : ch.kraus()) {
    for (Index i = 0; i < din; ++i) {
      for (Index b = 0; b < dout; ++b) v(i * dout + b) = k(b, i);
    }
    j.noalias() += v * v.adjoint();
  }
  return j;
}

DensityOperator choi(const Channel& ch) {
  return DensityOperator(unnormalized_choi(ch) / static_cast<double>(ch.in_dim()),
                         concat(ch.in_dims(), ch.out_dims()));
}

ComplexMatrix apply_choi(const ComplexMatrix& j, Index d_in, const ComplexMatrix& x) {
  if (j.rows() % d_in != 0 || x.rows() != d_in) {
    throw DimensionMismatch("apply_choi dimensions are inconsistent");
  }
  const Index d_out = j.rows() / d_in;
  ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
  // d_in sum_{ik} x_{ik} J_{(i,.),(k,.)}
  for (Index i = 0; i < d_in; ++i) {
    for (Index k = 0; k < d_in; ++k) {
      out += x(i, k) * j.block(i * d_out, k * d_out, d_out, d_out);
    }
  }
  return static_cast<double>(d_in) * out;
}

Channel channel_from_choi(const DensityOperator& j, Index d_in) {
  const Index n = j.dim();
  if (d_in < 1 || n % d_in != 0) throw DimensionMismatch("Choi dimension is not a multiple of d_in");
  const Index d_out = n / d_in;
  auto [in_dims, out_dims] = split_dims(j.dims(), d_in);
  const ComplexMatrix marginal = partial_trace(j.matrix(), {static_cast<int>(d_in), static_cast<int>(d_out)}, {1});
  const double defect =
      (marginal - identity(d_in) / static_cast<double>(d_in)).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    throw NotAChannel("Choi marginal differs from I/d_in by " + std::to_string(defect));
  }
  const EigenDecomposition e = eig_hermitian(j.matrix());
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < n; ++k) {
    const double lambda = e.values(k);
    if (lambda <= 0.0) continue;
    const double w = std::sqrt(static_cast<double>(d_in) * lambda);
    ComplexMatrix op(d_out, d_in);
    for (Index i = 0; i < d_in; ++i) {
      for (Index b = 0; b < d_out; ++b) op(b, i) = w * e.vectors(i * d_out + b, k);
    }
    if (op.norm() >= kPrune) kraus.push_back(std::move(op));
  }
  return Channel(in_dims, out_dims, std::move(kraus));
}

Channel complementary(const Channel& ch) {
  const Index r = static_cast<Index>(ch.kraus().size());
  std::vector<ComplexMatrix> env;
  env.reserve(ch.out_dim());
  for (Index b = 0; b < ch.out_dim(); ++b) {
    ComplexMatrix e(r, ch.in_dim());
    for (Index k = 0; k < r; ++k) e.row(k) = ch.kraus()[k].row(b);
    env.push_back(std::move(e));
  }
  return Channel(ch.in_dims(), SubsystemDims{static_cast<int>(r)}, pruned(std::move(env)));
}

ComplexMatrix apply_complementary(const Channel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.in_dim() || x.cols() != ch.in_dim()) {
    throw DimensionMismatch("input does not match channel");
  }
  const std::vector<ComplexMatrix>& ks = ch.kraus();
  const Index r = static_cast<Index>(ks.size());
  std::vector<ComplexMatrix> kx;
  kx.reserve(r);
  for (const ComplexMatrix& k : ks) kx.push_back(k * x);
  ComplexMatrix out(r, r);
  for (Index a = 0; a < r; ++a) {
    // tr(K_a x K_b^dagger)
    for (Index b = 0; b < r; ++b) out(a, b) = (kx[a].array() * ks[b].conjugate().array()).sum();
  }
  return out;
}

ComplexMatrix apply_complementary_adjoint(const Channel& ch, const ComplexMatrix& y) {
  const std::vector<ComplexMatrix>& ks = ch.kraus();
  const Index r = static_cast<Index>(ks.size());
  if (y.rows() != r || y.cols() != r) throw DimensionMismatch("adjoint input does not match environment");
  // sum_{ab} y_{ba} K_b^dagger K_a = sum_b K_b^dagger (sum_a y_{ba} K_a)
  ComplexMatrix out = ComplexMatrix::Zero(ch.in_dim(), ch.in_dim());
  ComplexMatrix mix(ch.out_dim(), ch.in_dim());
  for (Index b = 0; b < r; ++b) {
    mix.setZero();
    for (Index a = 0; a < r; ++a) {
      if (y(b, a) != Complex(0.0)) mix += y(b, a) * ks[a];
    }
    out.noalias() += ks[b].adjoint() * mix;
  }
  return out;
}

Channel identity_channel(const SubsystemDims& dims) {
  return Channel(dims, dims, {identity(dims.total())});
}

Channel compose(const Channel& n2, const Channel& n1) {
  if (n1.out_dim() != n2.in_dim()) throw DimensionMismatch("compose: output of first != input of second");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(n1.kraus().size() * n2.kraus().size());
  for (const ComplexMatrix& b : n2.kraus()) {
    for (const ComplexMatrix& a : n1.kraus()) kraus.push_back(b * a);
  }
  return Channel(n1.in_dims(), n2.out_dims(), pruned(std::move(kraus)));
}

Channel private_channel(double q, int d) {
  const DensityOperator gamma = gamma_qd(q, d);
  const DensityOperator j = permute_subsystems(gamma, {0, 2, 1, 3});
  return channel_from_choi(j, 2 * static_cast<Index>(d));
}

ComplexMatrix private_channel_action(double q, int d, const ComplexMatrix& x) {
  require_probability(q, "q");
  if (d < 2) throw DomainError("private channel needs d >= 2");
  if (x.rows() != 2 * d || x.cols() != 2 * d) throw DimensionMismatch("input must be 2d x 2d");
  const ComplexMatrix id = identity(d);
  ComplexMatrix out(2 * d, 2 * d);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const ComplexMatrix blk = x.block(a * d, b * d, d, d);
      const Complex tr = blk.trace();
      const ComplexMatrix sym = (blk.transpose() + tr * id) / (d + 1.0);
      const ComplexMatrix asym = (-blk.transpose() + tr * id) / (d - 1.0);
      const double sign = (a == b) ? 1.0 : -1.0;
      out.block(a * d, b * d, d, d) = q * sym + sign * (1.0 - q) * asym;
    }
  }
  return out;
}

Channel private_channel_kraus_form(int d) {
  if (d < 2) throw DomainError("private channel needs d >= 2");
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ComplexMatrix k = ComplexMatrix::Zero(2 * d, 2 * d);
      k(j, i) += w;
      k(d + i, d + j) += w;
      kraus.push_back(std::move(k));
    }
  }
  return Channel({2, d}, {2, d}, std::move(kraus));
}

Channel erasure_channel(double lambda, int d) {
  require_probability(lambda, "lambda");
  if (d < 1) throw DomainError("dimension must be positive");
  ComplexMatrix embed = ComplexMatrix::Zero(d + 1, d);
  embed.topRows(d) = identity(d);
  std::vector<ComplexMatrix> erase;
  for (int i = 0; i < d; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(d + 1, d);
    k(d, i) = 1.0;
    erase.push_back(std::move(k));
  }
  std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - lambda) * embed};
  for (const ComplexMatrix& k : erase) kraus.push_back(std::sqrt(lambda) * k);
  const Channel keep({d}, {d + 1}, {embed});
  const Channel lost({d}, {d + 1}, erase);
  return Channel({d}, {d + 1}, pruned(std::move(kraus)))
      .with_branches({{1.0 - lambda, keep}, {lambda, lost}});
}

FlaggedChannel erasure_channel_flagged(double lambda, int d) {
  return erasure_channel_flagged(lambda, d, DensityOperator::pure(basis_vector(d, 0), {d}));
}

FlaggedChannel erasure_channel_flagged(double lambda, int d, const DensityOperator& sigma) {
  require_probability(lambda, "lambda");
  if (sigma.dim() != d) throw DimensionMismatch("fixed erasure state must live on C^d");
  return {{{1.0 - lambda, identity_channel({d})}, {lambda, replacement_channel(sigma, d)}}};
}

Channel depolarizing_channel(double p, int d) {
  require_probability(p, "p");
  if (d < 1) throw DomainError("dimension must be positive");
  const double dd = static_cast<double>(d) * d;
  std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - p * (dd - 1.0) / dd) * identity(d)};
  const double w = std::sqrt(p / dd);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a == 0 && b == 0) continue;
      ComplexMatrix k = ComplexMatrix::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * b * j / d;
        k((j + a) % d, j) = w * std::polar(1.0, phase);
      }
      kraus.push_back(std::move(k));
    }
  }
  return Channel({d}, {d}, pruned(std::move(kraus)));
}

Channel replacement_channel(const DensityOperator& sigma, Index d_in) {
  if (d_in < 1) throw DomainError("input dimension must be positive");
  const EigenDecomposition e = eig_hermitian(sigma.matrix());
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < e.values.size(); ++k) {
    if (e.values(k) <= tol::kRank) continue;
    const ComplexVector v = std::sqrt(e.values(k)) * e.vectors.col(k);
    for (Index i = 0; i < d_in; ++i) {
      ComplexMatrix op = ComplexMatrix::Zero(sigma.dim(), d_in);
      op.col(i) = v;
      kraus.push_back(std::move(op));
    }
  }
  // Renormalize against the dropped tail so the map stays trace preserving.
  double kept = 0.0;
  for (Index k = 0; k < e.values.size(); ++k) {
    if (e.values(k) > tol::kRank) kept += e.values(k);
  }
  for (ComplexMatrix& op : kraus) op /= std::sqrt(kept);
  return Channel(SubsystemDims{static_cast<int>(d_in)}, sigma.dims(), std::move(kraus));
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const ComplexMatrix& x : a.kraus()) {
    for (const ComplexMatrix& y : b.kraus()) kraus.push_back(kron(x, y));
  }
  Channel out(concat(a.in_dims(), b.in_dims()), concat(a.out_dims(), b.out_dims()),
              std::move(kraus));
  if (!a.has_branches() && !b.has_branches()) return out;
  std::vector<FlagBranch> branches;
  for (const FlagBranch& x : as_branches(a)) {
    for (const FlagBranch& y : as_branches(b)) {
      branches.push_back({x.probability * y.probability, tensor(x.channel, y.channel)});
    }
  }
  return out.with_branches(std::move(branches));
}

Channel direct_sum(const Channel& a, const Channel& b) {
  const Index ia = a.in_dim(), ib = b.in_dim(), oa = a.out_dim(), ob = b.out_dim();
  std::vector<ComplexMatrix> kraus;
  for (const ComplexMatrix& k : a.kraus()) {
    ComplexMatrix e = ComplexMatrix::Zero(oa + ob, ia + ib);
    e.topLeftCorner(oa, ia) = k;
    kraus.push_back(std::move(e));
  }
  for (const ComplexMatrix& k : b.kraus()) {
    ComplexMatrix e = ComplexMatrix::Zero(oa + ob, ia + ib);
    e.bottomRightCorner(ob, ib) = k;
    kraus.push_back(std::move(e));
  }
  Channel out(SubsystemDims{static_cast<int>(ia + ib)}, SubsystemDims{static_cast<int>(oa + ob)},
              std::move(kraus));
  auto blocks = [](const std::vector<Index>& existing, Index whole) {
    return existing.empty() ? std::vector<Index>{whole} : existing;
  };
  out.in_blocks_ = blocks(a.in_blocks(), ia);
  for (Index x : blocks(b.in_blocks(), ib)) out.in_blocks_.push_back(x);
  out.out_blocks_ = blocks(a.out_blocks(), oa);
  for (Index x : blocks(b.out_blocks(), ob)) out.out_blocks_.push_back(x);
  return out;
}

Channel flagged(const FlaggedChannel& fc) {
  if (fc.branches.empty()) throw NotAChannel("flagged channel needs at least one branch");
  const Channel& first = fc.branches.front().channel;
  const int nf = static_cast<int>(fc.branches.size());
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < nf; ++i) {
    const FlagBranch& br = fc.branches[i];
    if (br.channel.in_dim() != first.in_dim() || br.channel.out_dim() != first.out_dim()) {
      throw DimensionMismatch("flagged branches must share input and output dimensions");
    }
    if (br.probability < 0.0) throw NotAChannel("negative branch probability");
    const ComplexVector flag = basis_vector(nf, i);
    for (const ComplexMatrix& k : br.channel.kraus()) {
      kraus.push_back(std::sqrt(br.probability) * kron(ComplexMatrix(flag), k));
    }
  }
  Channel out(first.in_dims(), concat(SubsystemDims{nf}, first.out_dims()), pruned(std::move(kraus)));
  return out.with_branches(fc.branches);
}

}  // namespace capamp
