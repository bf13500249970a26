#pragma once

// The chi^2_kappa divergence and the SDPI constant eta for a fixed
// (channel, state) pair, computed along two independent routes:
//
//   eig: Hermitize the contraction operator Upsilon by conjugating with
//        Omega^{+-1/2}, project out the known fixed point, and take the top
//        eigenvalue of the projected matrix.
//   svd: whiten the unital operator K between the Mho-weighted constrained
//        subspaces and square its top singular value.
//
// Also: the Rayleigh ratio along a chosen traceless Hermitian direction and
// a randomized lower-bound estimator for the contraction coefficient
// sup_sigma eta(E, sigma).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qchi/errors.hpp"
#include "qchi/kappa.hpp"
#include "qchi/linalg.hpp"
#include "qchi/metric_ops.hpp"
#include "qchi/states.hpp"

namespace qchi {

struct DivergenceValue {
  double value = 0.0;
  bool infinite = false;
};

// chi^2_kappa(rho, sigma) = <rho - sigma, Omega_sigma^kappa (rho - sigma)>,
// evaluated on sigma's support; infinite when rho leaks outside it.
inline DivergenceValue chi_squared(const DensityMatrix& rho,
                                   const DensityMatrix& sigma,
                                   const KappaFunction& kappa) {
  if (rho.dim() != sigma.dim())
    throw DimMismatch("chi_squared: states must share one dimension");
  const Index n = sigma.dim();
  const CMatrix off_support =
      CMatrix::Identity(n, n) - sigma.support_projector();
  const double leak = (rho.matrix() * off_support).trace().real();
  if (leak > 1e-12) return DivergenceValue{0.0, true};

  const MetricOperator omega = detail::omega_on_support(sigma, kappa, 1.0);
  const CMatrix delta = rho.matrix() - sigma.matrix();
  const double value = hs_inner(delta, omega.op.apply(delta)).real();
  return DivergenceValue{std::max(value, 0.0), false};
}

enum class SdpiMethod { Eig, Svd };

inline std::string to_string(SdpiMethod m) {
  return m == SdpiMethod::Eig ? "eig" : "svd";
}

struct SdpiReport {
  double eta = 0.0;
  SdpiMethod method = SdpiMethod::Eig;
  // eig: eigenvalues of the Hermitized contraction operator, descending.
  // svd: singular values of the whitened K operator, descending.
  std::vector<double> spectrum;
  // eig: ||Upsilon(sigma) - sigma||_F;  svd: ||K(I) - I||_F.
  double fixed_point_residual = 0.0;
};

namespace detail {

inline double clamp_unit_interval(double x, const char* who) {
  if (x > 1.0 + 1e-9 || x < -1e-9)
    throw NumericalInstability(std::string(who) +
                               ": value escapes [0, 1] beyond tolerance");
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace detail

// eta via the second-largest eigenvalue of the contraction operator.
// The known fixed point is removed by deflation (projection onto its
// orthogonal complement), never by dropping the largest entry, so a
// degenerate second eigenvalue equal to 1 is handled correctly.
inline SdpiReport sdpi_constant_eig(const QuantumChannel& ch,
                                    const DensityMatrix& sigma,
                                    const KappaFunction& kappa) {
  const MetricOperator upsilon = upsilon_op(ch, sigma, kappa);
  const Index n2 = sigma.dim() * sigma.dim();

  SdpiReport report;
  report.method = SdpiMethod::Eig;
  report.fixed_point_residual =
      (upsilon.op.apply(sigma.matrix()) - sigma.matrix()).norm();

  const CMatrix om_half = omega_power(sigma, kappa, 0.5).op.mat;
  const CMatrix om_neg_half = omega_power(sigma, kappa, -0.5).op.mat;
  CMatrix s = om_half * upsilon.op.mat * om_neg_half;
  const double asym = (s - s.adjoint()).norm();
  if (asym > 1e-9 * std::max(1.0, s.norm()))
    throw NumericalInstability("sdpi_constant_eig: Hermitization residual");
  s = 0.5 * (s + s.adjoint().eval());

  const HermitianSpectrum spec = hermitian_eig(s);
  report.spectrum.assign(spec.eigenvalues.data(),
                         spec.eigenvalues.data() + n2);
  std::reverse(report.spectrum.begin(), report.spectrum.end());
  if (std::abs(report.spectrum.front() - 1.0) > 1e-9)
    throw NumericalInstability(
        "sdpi_constant_eig: top eigenvalue deviates from 1");

  CVector v = om_half * vec(sigma.matrix());
  v /= v.norm();
  const CMatrix proj = CMatrix::Identity(n2, n2) - v * v.adjoint();
  CMatrix deflated = proj * s * proj;
  deflated = 0.5 * (deflated + deflated.adjoint().eval());
  const HermitianSpectrum dspec = hermitian_eig(deflated);
  report.eta = detail::clamp_unit_interval(dspec.eigenvalues(n2 - 1),
                                           "sdpi_constant_eig");
  return report;
}

// eta via the top singular value of the whitened K operator between the
// constrained subspaces (trace-zero against the respective weights).
inline SdpiReport sdpi_constant_svd(const QuantumChannel& ch,
                                    const DensityMatrix& sigma,
                                    const KappaFunction& kappa) {
  const MetricOperator kop = k_whiten_op(ch, sigma);
  const DensityMatrix out = ch.apply(sigma);
  const Index n = sigma.dim();
  const Index n2 = n * n;
  const CMatrix eye = CMatrix::Identity(n, n);

  SdpiReport report;
  report.method = SdpiMethod::Svd;
  report.fixed_point_residual = (kop.op.apply(eye) - eye).norm();

  const CMatrix m = mho_power(out, kappa, 0.5).op.mat * kop.op.mat *
                    mho_power(sigma, kappa, -0.5).op.mat;

  Eigen::JacobiSVD<CMatrix> full_svd(m);
  report.spectrum.assign(full_svd.singularValues().data(),
                         full_svd.singularValues().data() + n2);

  CVector q_in = mho_power(sigma, kappa, 0.5).op.mat * vec(eye);
  q_in /= q_in.norm();
  CVector q_out = mho_power(out, kappa, 0.5).op.mat * vec(eye);
  q_out /= q_out.norm();
  const CMatrix p_in = CMatrix::Identity(n2, n2) - q_in * q_in.adjoint();
  const CMatrix p_out = CMatrix::Identity(n2, n2) - q_out * q_out.adjoint();

  Eigen::JacobiSVD<CMatrix> constrained(p_out * m * p_in);
  const double top = constrained.singularValues()(0);
  report.eta = detail::clamp_unit_interval(top * top, "sdpi_constant_svd");
  return report;
}

inline SdpiReport sdpi_constant(const QuantumChannel& ch,
                                const DensityMatrix& sigma,
                                const KappaFunction& kappa,
                                SdpiMethod method = SdpiMethod::Eig) {
  return method == SdpiMethod::Eig ? sdpi_constant_eig(ch, sigma, kappa)
                                   : sdpi_constant_svd(ch, sigma, kappa);
}

// Rayleigh ratio <A, Upsilon(A)>_Omega / <A, A>_Omega for a traceless
// Hermitian direction A. Bounded above by eta(ch, sigma).
inline double sdpi_ratio(const QuantumChannel& ch, const DensityMatrix& sigma,
                         const KappaFunction& kappa, const CMatrix& a) {
  if (a.rows() != sigma.dim() || a.cols() != sigma.dim())
    throw DimMismatch("sdpi_ratio: direction has wrong dimension");
  if (a.norm() < 1e-14)
    throw ZeroDirection("sdpi_ratio: direction is numerically zero");
  if (!is_hermitian(a))
    throw NotHermitian("sdpi_ratio: direction must be Hermitian");
  if (std::abs(a.trace()) > 1e-12 * std::max(1.0, a.norm()))
    throw NotTraceless("sdpi_ratio: direction must be traceless");

  const MetricOperator upsilon = upsilon_op(ch, sigma, kappa);
  const CMatrix omega = omega_op(sigma, kappa).op.mat;
  const CVector va = vec(a);
  const double num = (va.adjoint() * omega * upsilon.op.mat * va)(0).real();
  const double den = (va.adjoint() * omega * va)(0).real();
  return num / den;
}

struct ContractionEstimate {
  double eta = 0.0;           // lower bound on sup_sigma eta(ch, sigma)
  CMatrix argmax_sigma;       // the best reference state found
  int trials = 0;
};

namespace detail {

inline double eta_of_factor(const QuantumChannel& ch, const KappaFunction& kappa,
                            const CMatrix& l) {
  CMatrix w = l * l.adjoint();
  const double tr = w.trace().real();
  if (!(tr > 0.0)) return -1.0;
  w /= tr;
  w = 0.5 * (w + w.adjoint().eval());
  DensityMatrix sigma{w};
  if (!sigma.full_rank()) return -1.0;
  if (!ch.apply(sigma).full_rank()) return -1.0;
  return sdpi_constant_eig(ch, sigma, kappa).eta;
}

}  // namespace detail

// Randomized lower bound for the contraction coefficient: the max of eta
// over `trials` random full-rank states, sharpened by coordinate descent on
// the Cholesky-style factor of the best candidate. The true value is a sup
// over all full-rank states, so the result is a lower bound only.
inline ContractionEstimate contraction_coefficient_estimate(
    const QuantumChannel& ch, const KappaFunction& kappa, int trials,
    std::uint64_t seed) {
  if (trials < 1) throw ParamError("contraction estimate needs trials >= 1");
  if (ch.dim_in() != ch.dim_out())
    throw DimMismatch("contraction estimate: channel must be square");
  const Index n = ch.dim_in();

  double best = -1.0;
  CMatrix best_l;
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed + std::uint64_t(t));
    const CMatrix l = rng.gaussian_matrix(n, n);
    const double eta = detail::eta_of_factor(ch, kappa, l);
    if (eta > best) {
      best = eta;
      best_l = l;
    }
  }
  if (best < 0.0)
    throw NumericalInstability(
        "contraction estimate: no admissible reference state found");

  // coordinate refinement on Re/Im parts of the factor entries
  for (double step : {0.25, 0.08, 0.025, 0.008, 0.0025}) {
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        for (int part = 0; part < 2; ++part)
          for (double sign : {1.0, -1.0}) {
            CMatrix cand = best_l;
            cand(i, j) += part == 0 ? Complex(sign * step, 0.0)
                                    : Complex(0.0, sign * step);
            const double eta = detail::eta_of_factor(ch, kappa, cand);
            if (eta > best) {
              best = eta;
              best_l = cand;
            }
          }
  }

  CMatrix w = best_l * best_l.adjoint();
  w /= w.trace().real();
  return ContractionEstimate{best, 0.5 * (w + w.adjoint().eval()), trials};
}

}  // namespace qchi
