#pragma once

// The sigma- and kappa-dependent superoperators behind the chi^2_kappa
// divergence: the weighting operator Gamma, the inverse-weighting operator
// Omega, its sigma-weighted counterpart Mho, the contraction operator
// Upsilon, the whitening operator K, and the Petz recovery map.
//
// Every operator here is assembled spectrally from sigma's eigenpairs:
// in the Kronecker eigenframe w_{jm} = conj(v_m) (x) v_j the operators are
// diagonal, with coefficients
//   Gamma:  sqrt(s_j s_m)
//   Omega:  kappa(s_j/s_m) / s_m
//   Mho:    s_j * kappa(s_j/s_m)
// Coefficients are formed scalar-wise, so fractional powers (needed for the
// Hermitization and whitening steps elsewhere) stay within the same frame
// and no dense matrix is ever inverted.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "qchi/errors.hpp"
#include "qchi/kappa.hpp"
#include "qchi/linalg.hpp"
#include "qchi/states.hpp"

namespace qchi {

enum class MetricKind { Gamma, Omega, Mho, Upsilon, KWhiten };

struct MetricOperator {
  MetricKind kind;
  SuperOperator op;
  Index support_dim = 0;  // eigenpairs of sigma entering the spectral sum
};

namespace detail {

// Columns kron(conj(v_m), v_j) for (j, m) in support x support; orthonormal
// because the v_j are.
inline CMatrix eigen_frame(const HermitianSpectrum& spec,
                           const std::vector<Index>& support) {
  const Index n = spec.eigenvectors.rows();
  const Index r = Index(support.size());
  CMatrix w(n * n, r * r);
  Index col = 0;
  for (Index m : support)
    for (Index j : support) {
      w.col(col++) = kron(spec.eigenvectors.col(m).conjugate(),
                          spec.eigenvectors.col(j));
    }
  return w;
}

// sum over support pairs of coeff(s_j, s_m) * P_j # P_m.
inline SuperOperator spectral_weight_op(
    const HermitianSpectrum& spec, const std::vector<Index>& support,
    const std::function<double(double, double)>& coeff) {
  const Index n = spec.eigenvectors.rows();
  const Index r = Index(support.size());
  const CMatrix w = eigen_frame(spec, support);
  RVector c(r * r);
  Index idx = 0;
  for (Index m : support)
    for (Index j : support)
      c(idx++) = coeff(spec.eigenvalues(j), spec.eigenvalues(m));
  return SuperOperator{n, w * c.asDiagonal() * w.adjoint()};
}

}  // namespace detail

// Gamma_sigma = sigma^{1/2} # sigma^{1/2}; acts on the support when sigma is
// singular. Completely positive.
inline MetricOperator gamma_op(const DensityMatrix& sigma) {
  const auto support = sigma.support();
  SuperOperator op = detail::spectral_weight_op(
      sigma.spectrum(), support,
      [](double sj, double sm) { return std::sqrt(sj * sm); });
  return MetricOperator{MetricKind::Gamma, std::move(op),
                        Index(support.size())};
}

// Gamma_sigma^p, same frame, coefficients (s_j s_m)^{p/2}.
inline MetricOperator gamma_power(const DensityMatrix& sigma, double p) {
  if (p < 0.0 && !sigma.full_rank())
    throw FullRankRequired("gamma_power: negative power needs full rank");
  const auto support = sigma.support();
  SuperOperator op = detail::spectral_weight_op(
      sigma.spectrum(), support,
      [p](double sj, double sm) { return std::pow(sj * sm, 0.5 * p); });
  return MetricOperator{MetricKind::Gamma, std::move(op),
                        Index(support.size())};
}

namespace detail {

inline MetricOperator omega_on_support(const DensityMatrix& sigma,
                                       const KappaFunction& kappa, double p) {
  const auto support = sigma.support();
  SuperOperator op = spectral_weight_op(
      sigma.spectrum(), support, [&kappa, p](double sj, double sm) {
        const double c = kappa(sj / sm) / sm;
        return p == 1.0 ? c : std::pow(c, p);
      });
  return MetricOperator{MetricKind::Omega, std::move(op),
                        Index(support.size())};
}

}  // namespace detail

// Omega_sigma^kappa, coefficients kappa(s_j/s_m)/s_m over sigma's
// eigenprojectors. Hermitian-preserving and strictly positive in the
// Hilbert-Schmidt sense; maps sigma to the identity.
inline MetricOperator omega_op(const DensityMatrix& sigma,
                               const KappaFunction& kappa) {
  if (!sigma.full_rank())
    throw FullRankRequired("omega_op requires a full-rank state");
  return detail::omega_on_support(sigma, kappa, 1.0);
}

// (Omega_sigma^kappa)^p via per-coefficient powers in the same frame.
inline MetricOperator omega_power(const DensityMatrix& sigma,
                                  const KappaFunction& kappa, double p) {
  if (!sigma.full_rank())
    throw FullRankRequired("omega_power requires a full-rank state");
  return detail::omega_on_support(sigma, kappa, p);
}

// Mho_sigma^kappa, coefficients s_j * kappa(s_j/s_m), restricted to the
// support when sigma is singular (zero eigenvalues never enter the sum).
// Maps the support identity to sigma; equals Gamma o Omega o Gamma on
// full-rank states.
inline MetricOperator mho_op(const DensityMatrix& sigma,
                             const KappaFunction& kappa) {
  const auto support = sigma.support();
  SuperOperator op = detail::spectral_weight_op(
      sigma.spectrum(), support, [&kappa](double sj, double sm) {
        return sj * kappa(sj / sm);
      });
  return MetricOperator{MetricKind::Mho, std::move(op), Index(support.size())};
}

// (Mho_sigma^kappa)^p on the support; negative powers are pseudo-inverses
// within the same frame.
inline MetricOperator mho_power(const DensityMatrix& sigma,
                                const KappaFunction& kappa, double p) {
  const auto support = sigma.support();
  SuperOperator op = detail::spectral_weight_op(
      sigma.spectrum(), support, [&kappa, p](double sj, double sm) {
        return std::pow(sj * kappa(sj / sm), p);
      });
  return MetricOperator{MetricKind::Mho, std::move(op), Index(support.size())};
}

namespace detail {

inline void require_square_channel(const QuantumChannel& ch,
                                   const DensityMatrix& sigma,
                                   const char* who) {
  if (ch.dim_in() != ch.dim_out())
    throw DimMismatch(std::string(who) + ": channel must be square");
  if (ch.dim_in() != sigma.dim())
    throw DimMismatch(std::string(who) + ": channel/state dimension mismatch");
}

}  // namespace detail

// Upsilon = Omega_sigma^{-1} o E^dag o Omega_{E(sigma)} o E. Fixes sigma,
// is self-adjoint under <.,.>_Omega, and has real spectrum in [0, 1].
inline MetricOperator upsilon_op(const QuantumChannel& ch,
                                 const DensityMatrix& sigma,
                                 const KappaFunction& kappa) {
  detail::require_square_channel(ch, sigma, "upsilon_op");
  if (!sigma.full_rank())
    throw FullRankRequired("upsilon_op: input state must be full rank");
  const DensityMatrix out = ch.apply(sigma);
  if (!out.full_rank())
    throw FullRankRequired("upsilon_op: channel output must be full rank");
  const SuperOperator e = ch.as_superoperator();
  const SuperOperator om_in_inv = omega_power(sigma, kappa, -1.0).op;
  const SuperOperator om_out = omega_op(out, kappa).op;
  SuperOperator op{sigma.dim(),
                   om_in_inv.mat * e.mat.adjoint() * om_out.mat * e.mat};
  return MetricOperator{MetricKind::Upsilon, std::move(op), sigma.dim()};
}

// K = Gamma_{E(sigma)}^{-1} o E o Gamma_sigma: completely positive and
// unital; its HS adjoint is the Petz recovery map.
inline MetricOperator k_whiten_op(const QuantumChannel& ch,
                                  const DensityMatrix& sigma) {
  detail::require_square_channel(ch, sigma, "k_whiten_op");
  if (!sigma.full_rank())
    throw FullRankRequired("k_whiten_op: input state must be full rank");
  const DensityMatrix out = ch.apply(sigma);
  if (!out.full_rank())
    throw FullRankRequired("k_whiten_op: channel output must be full rank");
  const SuperOperator e = ch.as_superoperator();
  SuperOperator op{sigma.dim(), gamma_power(out, -1.0).op.mat * e.mat *
                                    gamma_op(sigma).op.mat};
  return MetricOperator{MetricKind::KWhiten, std::move(op), sigma.dim()};
}

// Petz recovery map of (ch, sigma): the CPTP channel with Kraus operators
// sigma^{1/2} K_i^dag E(sigma)^{-1/2}, mapping E(sigma) back to sigma.
inline QuantumChannel petz_recovery(const QuantumChannel& ch,
                                    const DensityMatrix& sigma) {
  detail::require_square_channel(ch, sigma, "petz_recovery");
  if (!sigma.full_rank())
    throw FullRankRequired("petz_recovery: input state must be full rank");
  const DensityMatrix out = ch.apply(sigma);
  if (!out.full_rank())
    throw FullRankRequired("petz_recovery: channel output must be full rank");
  const CMatrix sig_half = sigma.sqrt();
  const CMatrix out_inv_half = out.inv_sqrt();
  std::vector<CMatrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const CMatrix& k : ch.kraus())
    kraus.push_back(sig_half * k.adjoint() * out_inv_half);
  return QuantumChannel(std::move(kraus));
}

}  // namespace qchi
