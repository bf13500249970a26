#pragma once

// Density matrices, CPTP channels in Kraus form, POVMs, the named qubit
// channels, and seeded random generators for property tests and searches.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qchi/errors.hpp"
#include "qchi/linalg.hpp"

namespace qchi {

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// PSD, unit-trace operator. The spectrum is computed once at construction;
// full_rank is true iff min eigenvalue >= 1e-12 * max eigenvalue.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
      throw NotAState("density matrix must be square with dim >= 1");
    if (!is_hermitian(mat_))
      throw NotAState("density matrix must be Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > 1e-12 ||
        std::abs(mat_.trace().imag()) > 1e-12)
      throw NotAState("density matrix must have unit trace");
    spectrum_ = hermitian_eig(mat_);
    const double lo = spectrum_.eigenvalues(0);
    const double hi = spectrum_.eigenvalues(spectrum_.eigenvalues.size() - 1);
    if (lo < -1e-12)
      throw NotAState("density matrix must be positive semidefinite");
    full_rank_ = lo >= tol::full_rank * hi;
  }

  const CMatrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  bool full_rank() const { return full_rank_; }
  const HermitianSpectrum& spectrum() const { return spectrum_; }

  // Indices of eigenvalues on the support (>= 1e-12 * max).
  std::vector<Index> support() const {
    const double hi = spectrum_.eigenvalues(spectrum_.eigenvalues.size() - 1);
    std::vector<Index> idx;
    for (Index j = 0; j < spectrum_.eigenvalues.size(); ++j)
      if (spectrum_.eigenvalues(j) >= tol::full_rank * hi) idx.push_back(j);
    return idx;
  }

  CMatrix support_projector() const {
    CMatrix p = CMatrix::Zero(dim(), dim());
    for (Index j : support()) {
      const CVector v = spectrum_.eigenvectors.col(j);
      p += v * v.adjoint();
    }
    return p;
  }

  CMatrix sqrt() const {
    RVector r = spectrum_.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return spectrum_.eigenvectors * r.asDiagonal() *
           spectrum_.eigenvectors.adjoint();
  }

  // sigma^{-1/2} on the support; requires full rank.
  CMatrix inv_sqrt() const {
    if (!full_rank_)
      throw FullRankRequired("inv_sqrt requires a full-rank state");
    RVector r(spectrum_.eigenvalues.size());
    for (Index j = 0; j < r.size(); ++j)
      r(j) = 1.0 / std::sqrt(spectrum_.eigenvalues(j));
    return spectrum_.eigenvectors * r.asDiagonal() *
           spectrum_.eigenvectors.adjoint();
  }

 private:
  CMatrix mat_;
  HermitianSpectrum spectrum_;
  bool full_rank_ = false;
};

inline DensityMatrix maximally_mixed(Index n) {
  return DensityMatrix(CMatrix::Identity(n, n) / double(n));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

// Collection of PSD effects summing to the identity.
struct Povm {
  std::vector<CMatrix> effects;

  explicit Povm(std::vector<CMatrix> fx) : effects(std::move(fx)) {
    if (effects.empty()) throw InvalidPovm("povm needs at least one effect");
    const Index n = effects.front().rows();
    CMatrix sum = CMatrix::Zero(n, n);
    for (const CMatrix& f : effects) {
      if (f.rows() != n || f.cols() != n)
        throw InvalidPovm("povm effects must share one square dimension");
      if (!is_hermitian(f)) throw InvalidPovm("povm effect not Hermitian");
      const HermitianSpectrum s = hermitian_eig(f);
      if (s.eigenvalues(0) < -1e-12)
        throw InvalidPovm("povm effect not positive semidefinite");
      if (f.norm() == 0.0) throw InvalidPovm("povm effect is the zero matrix");
      sum += f;
    }
    if ((sum - CMatrix::Identity(n, n)).norm() > 1e-10 * std::sqrt(double(n)))
      throw InvalidPovm("povm effects must sum to the identity");
  }

  Index dim() const { return effects.front().rows(); }
};

// CPTP map stored as a Kraus list. Complete positivity is structural in this
// form; trace preservation is validated at construction. QC-ness is tracked
// as constructor provenance, not inferred from Kraus structure.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<CMatrix> kraus, bool qc_provenance = false)
      : kraus_(std::move(kraus)), is_qc_(qc_provenance) {
    if (kraus_.empty()) throw InvalidChannel("channel needs >= 1 Kraus operator");
    dim_out_ = kraus_.front().rows();
    dim_in_ = kraus_.front().cols();
    CMatrix completeness = CMatrix::Zero(dim_in_, dim_in_);
    for (const CMatrix& k : kraus_) {
      if (k.rows() != dim_out_ || k.cols() != dim_in_)
        throw DimMismatch("channel Kraus operators must share one shape");
      completeness += k.adjoint() * k;
    }
    if ((completeness - CMatrix::Identity(dim_in_, dim_in_)).norm() >
        1e-10 * std::sqrt(double(dim_in_)))
      throw InvalidChannel("channel is not trace-preserving");
  }

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  bool is_qc() const { return is_qc_; }

  CMatrix apply_matrix(const CMatrix& x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_)
      throw DimMismatch("channel applied to operator of wrong dimension");
    CMatrix out = CMatrix::Zero(dim_out_, dim_out_);
    for (const CMatrix& k : kraus_) out += k * x * k.adjoint();
    return out;
  }

  DensityMatrix apply(const DensityMatrix& rho) const {
    return DensityMatrix(apply_matrix(rho.matrix()));
  }

  // Matrix of the map under column-stacking: sum_i conj(K_i) (x) K_i.
  SuperOperator as_superoperator() const {
    if (dim_in_ != dim_out_)
      throw DimMismatch("superoperator form requires a square channel");
    CMatrix m = CMatrix::Zero(dim_in_ * dim_in_, dim_in_ * dim_in_);
    for (const CMatrix& k : kraus_) m += kron(k.conjugate(), k);
    return SuperOperator{dim_in_, m};
  }

  // HS adjoint: unital whenever the channel is trace-preserving.
  SuperOperator adjoint_channel() const {
    return adjoint_hs(as_superoperator());
  }

  // Choi matrix; PSD iff the map is completely positive.
  CMatrix choi() const {
    CMatrix c = CMatrix::Zero(dim_in_ * dim_out_, dim_in_ * dim_out_);
    for (const CMatrix& k : kraus_) {
      const CVector v = vec(k);
      c += v * v.adjoint();
    }
    return c;
  }

  // Residuals of the CPTP checks: (Choi min eigenvalue, Kraus completeness).
  std::pair<double, double> cptp_residuals() const {
    const HermitianSpectrum cs = hermitian_eig(choi());
    CMatrix completeness = CMatrix::Zero(dim_in_, dim_in_);
    for (const CMatrix& k : kraus_) completeness += k.adjoint() * k;
    return {cs.eigenvalues(0),
            (completeness - CMatrix::Identity(dim_in_, dim_in_)).norm()};
  }

  bool is_cptp_check() const {
    auto [choi_min, tp_res] = cptp_residuals();
    return choi_min >= -1e-10 && tp_res <= 1e-10 * std::sqrt(double(dim_in_));
  }

 private:
  std::vector<CMatrix> kraus_;
  Index dim_in_ = 0;
  Index dim_out_ = 0;
  bool is_qc_ = false;
};

inline QuantumChannel identity_channel(Index n) {
  return QuantumChannel({CMatrix::Identity(n, n)});
}

// Kraus operators of the product channel are the pairwise Kronecker
// products; the product of QC channels is again QC.
inline QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<CMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const CMatrix& ka : a.kraus())
    for (const CMatrix& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  return QuantumChannel(std::move(kraus), a.is_qc() && b.is_qc());
}

// Measure with `povm`, then prepare the orthonormal pure state matching the
// outcome: A -> sum_j tr(F_j A) |psi_j><psi_j|. Kraus operators come from
// the spectral factorization of each effect.
inline QuantumChannel qc_channel(const Povm& povm, const CMatrix& basis) {
  const Index n = povm.dim();
  if (basis.rows() != n || basis.cols() != n)
    throw BasisNotOrthonormal("preparation basis must be n x n");
  if (Index(povm.effects.size()) != n)
    throw InvalidPovm("qc channel needs exactly dim effects");
  if ((basis.adjoint() * basis - CMatrix::Identity(n, n)).norm() >
      1e-10 * std::sqrt(double(n)))
    throw BasisNotOrthonormal("preparation basis columns must be orthonormal");

  std::vector<CMatrix> kraus;
  for (Index j = 0; j < n; ++j) {
    const HermitianSpectrum fs = hermitian_eig(povm.effects[size_t(j)]);
    for (Index k = 0; k < n; ++k) {
      const double lam = fs.eigenvalues(k);
      if (lam <= 1e-14) continue;
      const CVector phi = std::sqrt(lam) * fs.eigenvectors.col(k);
      kraus.push_back(basis.col(j) * phi.adjoint());
    }
  }
  return QuantumChannel(std::move(kraus), /*qc_provenance=*/true);
}

// rho -> eps * rho + (1 - eps) * tr(rho) * I/2 on a qubit.
inline QuantumChannel depolarizing(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw ParamError("depolarizing parameter must lie in [0, 1]");
  const double keep = eps + (1.0 - eps) / 4.0;
  const double flip = (1.0 - eps) / 4.0;
  std::vector<CMatrix> kraus;
  kraus.push_back(std::sqrt(keep) * CMatrix::Identity(2, 2));
  if (flip > 0.0) {
    kraus.push_back(std::sqrt(flip) * pauli_x());
    kraus.push_back(std::sqrt(flip) * pauli_y());
    kraus.push_back(std::sqrt(flip) * pauli_z());
  }
  return QuantumChannel(std::move(kraus));
}

// Quantum implementation of the binary symmetric channel: the QC channel
// with F1 = diag(1-eps, eps) and the computational preparation basis.
inline QuantumChannel bsc_channel(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw ParamError("bsc crossover probability must lie in [0, 1]");
  CMatrix f1 = CMatrix::Zero(2, 2);
  f1(0, 0) = 1.0 - eps;
  f1(1, 1) = eps;
  CMatrix f2 = CMatrix::Identity(2, 2) - f1;
  return qc_channel(Povm({f1, f2}), CMatrix::Identity(2, 2));
}

// rho -> tr(rho) * omega, with Kraus set {sqrt(w_i) |w_i><j|}.
inline QuantumChannel replacer_channel(const DensityMatrix& omega) {
  const Index n = omega.dim();
  const HermitianSpectrum& s = omega.spectrum();
  std::vector<CMatrix> kraus;
  for (Index i = 0; i < n; ++i) {
    const double w = std::max(s.eigenvalues(i), 0.0);
    if (w <= 1e-14) continue;
    for (Index j = 0; j < n; ++j) {
      CMatrix k = CMatrix::Zero(n, n);
      k.col(j) = std::sqrt(w) * s.eigenvectors.col(i);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(kraus));
}

// Deterministic seeded generator used by all random constructions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }
  Complex cgaussian() { return Complex(gaussian(), gaussian()); }

  CMatrix gaussian_matrix(Index rows, Index cols) {
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = cgaussian();
    return m;
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Isometry from a Gaussian block via Householder QR, with the R-diagonal
// phase fix that makes the column distribution Haar.
inline CMatrix random_isometry(Rng& rng, Index rows, Index cols) {
  if (rows < cols) throw ParamError("random_isometry: rows must be >= cols");
  const CMatrix g = rng.gaussian_matrix(rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

// GG^dag / tr(GG^dag) with G complex Gaussian, resampled until full rank.
inline DensityMatrix random_density(Rng& rng, Index n) {
  if (n < 1) throw ParamError("random_density: dimension must be >= 1");
  for (int attempt = 0; attempt < 256; ++attempt) {
    const CMatrix g = rng.gaussian_matrix(n, n);
    CMatrix w = g * g.adjoint();
    w /= w.trace().real();
    w = 0.5 * (w + w.adjoint().eval());
    DensityMatrix rho(w);
    if (rho.full_rank()) return rho;
  }
  throw NumericalInstability("random_density: could not draw a full-rank state");
}

inline DensityMatrix random_density(std::uint64_t seed, Index n) {
  Rng rng(seed);
  return random_density(rng, n);
}

// Random channel from a Haar isometry into n (x) env_dim; Kraus operators
// are read off in env_dim slices of n rows each.
inline QuantumChannel random_channel(Rng& rng, Index n, Index env_dim) {
  if (n < 2) throw ParamError("random_channel: dimension must be >= 2");
  if (env_dim < 1) throw ParamError("random_channel: env_dim must be >= 1");
  const CMatrix v = random_isometry(rng, n * env_dim, n);
  std::vector<CMatrix> kraus;
  kraus.reserve(size_t(env_dim));
  for (Index e = 0; e < env_dim; ++e)
    kraus.push_back(v.block(e * n, 0, n, n));
  return QuantumChannel(std::move(kraus));
}

inline QuantumChannel random_channel(std::uint64_t seed, Index n, Index env_dim) {
  Rng rng(seed);
  return random_channel(rng, n, env_dim);
}

inline QuantumChannel random_channel(std::uint64_t seed, Index n) {
  return random_channel(seed, n, n * n);
}

// Random POVM with n nonzero PSD effects: F_j = S^{-1/2} A_j S^{-1/2} for
// Wishart blocks A_j with S their sum.
inline Povm random_povm(Rng& rng, Index n) {
  std::vector<CMatrix> blocks;
  CMatrix sum = CMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const CMatrix g = rng.gaussian_matrix(n, n);
    blocks.push_back(g * g.adjoint());
    sum += blocks.back();
  }
  const CMatrix whiten = psd_power(sum, -0.5);
  std::vector<CMatrix> effects;
  for (CMatrix& a : blocks) {
    CMatrix f = whiten * a * whiten;
    effects.push_back(0.5 * (f + f.adjoint().eval()));
  }
  return Povm(std::move(effects));
}

inline QuantumChannel random_qc_channel(Rng& rng, Index n) {
  return qc_channel(random_povm(rng, n), CMatrix::Identity(n, n));
}

}  // namespace qchi
