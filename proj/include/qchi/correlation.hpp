#pragma once

// Purifications, bipartite states, and the kappa-quantum maximal
// correlation: the constrained bilinear maximum over local observables,
// realized as a largest singular value after whitening both sides with
// Mho^{-1/2} of the marginals. For kappa_{1/2} this equals the square root
// of the SDPI constant of the channel that produced the state.

#include <cmath>
#include <utility>
#include <vector>

#include "qchi/errors.hpp"
#include "qchi/kappa.hpp"
#include "qchi/linalg.hpp"
#include "qchi/metric_ops.hpp"
#include "qchi/states.hpp"

namespace qchi {

// Unit vector on H (x) H whose second-factor marginal is the purified state.
struct PurificationVec {
  Index dim = 0;
  CVector amps;

  CMatrix projector() const { return amps * amps.adjoint(); }
};

// |psi> = sum_j sqrt(s_j) |s_j, s_j> in sigma's eigenbasis. Both marginals
// equal sigma for this choice.
inline PurificationVec canonical_purification(const DensityMatrix& sigma) {
  const Index n = sigma.dim();
  const HermitianSpectrum& spec = sigma.spectrum();
  CVector psi = CVector::Zero(n * n);
  for (Index j = 0; j < n; ++j) {
    const double s = std::max(spec.eigenvalues(j), 0.0);
    if (s <= 0.0) continue;
    psi += std::sqrt(s) *
           kron(spec.eigenvectors.col(j), spec.eigenvectors.col(j));
  }
  return PurificationVec{n, std::move(psi)};
}

// Bipartite density matrix with cached marginals.
class BipartiteState {
 public:
  BipartiteState(Index dim1, Index dim2, DensityMatrix joint)
      : dim1_(dim1),
        dim2_(dim2),
        joint_(std::move(joint)),
        marginal1_(partial_trace_second(joint_.matrix(), dim1, dim2)),
        marginal2_(partial_trace_first(joint_.matrix(), dim1, dim2)) {
    if (joint_.dim() != dim1 * dim2)
      throw DimMismatch("bipartite state dimension is not dim1 * dim2");
  }

  Index dim1() const { return dim1_; }
  Index dim2() const { return dim2_; }
  const DensityMatrix& joint() const { return joint_; }
  const DensityMatrix& marginal_first() const { return marginal1_; }
  const DensityMatrix& marginal_second() const { return marginal2_; }

 private:
  Index dim1_, dim2_;
  DensityMatrix joint_;
  DensityMatrix marginal1_, marginal2_;
};

// (I (x) E)(|psi><psi|): the channel acts on the second factor, so the
// first marginal is untouched.
inline BipartiteState channel_output_bipartite(const QuantumChannel& ch,
                                               const PurificationVec& psi) {
  if (ch.dim_in() != psi.dim)
    throw DimMismatch("channel_output_bipartite: channel dim mismatch");
  const Index n1 = psi.dim;
  const Index n2 = ch.dim_out();
  const CMatrix eye1 = CMatrix::Identity(n1, n1);
  CMatrix out = CMatrix::Zero(n1 * n2, n1 * n2);
  for (const CMatrix& k : ch.kraus()) {
    const CVector w = kron(eye1, k) * psi.amps;
    out += w * w.adjoint();
  }
  return BipartiteState(n1, n2, DensityMatrix(0.5 * (out + out.adjoint().eval())));
}

struct MaxCorrResult {
  double mu = 0.0;
  // residuals of the four maximizer constraints:
  // |tr(rho1 F)|, |tr(rho2 G)|, | ||F|| - 1 |, | ||G|| - 1 |
  std::vector<double> constraint_residuals;
};

// mu_kappa(rho12) = max |tr(rho12 F (x) G^dag)| over F, G that are
// trace-orthogonal to the identity and unit-norm in the Mho weights of the
// marginals. Singular marginals are handled on their supports: directions
// outside carry zero weight and cannot contribute to the objective.
inline MaxCorrResult maximal_correlation(const BipartiteState& state,
                                         const KappaFunction& kappa) {
  const Index n1 = state.dim1();
  const Index n2 = state.dim2();
  const DensityMatrix& rho1 = state.marginal_first();
  const DensityMatrix& rho2 = state.marginal_second();
  const CMatrix& rho12 = state.joint().matrix();

  // bilinear form in column-stacked coordinates:
  // tr(rho12 F (x) G^dag) = vec(G)^dag M vec(F)
  CMatrix m(n2 * n2, n1 * n1);
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n1; ++b)
      for (Index c = 0; c < n2; ++c)
        for (Index d = 0; d < n2; ++d)
          m(d * n2 + c, b * n1 + a) = rho12(b * n2 + c, a * n2 + d);

  const CMatrix w1_neg = mho_power(rho1, kappa, -0.5).op.mat;
  const CMatrix w1_pos = mho_power(rho1, kappa, 0.5).op.mat;
  const CMatrix w2_neg = mho_power(rho2, kappa, -0.5).op.mat;
  const CMatrix w2_pos = mho_power(rho2, kappa, 0.5).op.mat;

  CVector q1 = w1_pos * vec(CMatrix::Identity(n1, n1));
  q1 /= q1.norm();
  CVector q2 = w2_pos * vec(CMatrix::Identity(n2, n2));
  q2 /= q2.norm();
  const CMatrix p1 =
      CMatrix::Identity(n1 * n1, n1 * n1) - q1 * q1.adjoint();
  const CMatrix p2 =
      CMatrix::Identity(n2 * n2, n2 * n2) - q2 * q2.adjoint();

  const CMatrix whitened = p2 * (w2_neg * m * w1_neg) * p1;
  Eigen::JacobiSVD<CMatrix> svd(
      whitened, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double mu = svd.singularValues()(0);

  MaxCorrResult result;
  result.mu = mu;
  if (mu > 1e-12) {
    // recover the maximizing observables and report their constraint
    // residuals as a self-check
    const CVector u = svd.matrixV().col(0);
    const CVector w = svd.matrixU().col(0);
    const CMatrix f = devec(CVector(w1_neg * (p1 * u).eval()), n1);
    const CMatrix g = devec(CVector(w2_neg * (p2 * w).eval()), n2);
    const double fnorm =
        std::sqrt(std::abs(hs_inner(f, mho_op(rho1, kappa).op.apply(f)).real()));
    const double gnorm =
        std::sqrt(std::abs(hs_inner(g, mho_op(rho2, kappa).op.apply(g)).real()));
    result.constraint_residuals = {
        std::abs((rho1.matrix() * f).trace()),
        std::abs((rho2.matrix() * g).trace()),
        std::abs(fnorm - 1.0), std::abs(gnorm - 1.0)};
  } else {
    result.constraint_residuals = {0.0, 0.0, 0.0, 0.0};
  }
  return result;
}

}  // namespace qchi
