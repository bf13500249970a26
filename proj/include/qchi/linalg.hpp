#pragma once

// Dense complex matrix algebra: Hermitian spectral calculus, the
// column-stacking vectorization bridge between operators and superoperators,
// and partial traces on bipartite spaces.
//
// Conventions fixed repo-wide:
//   * vec() stacks columns, so vec(A X B) = (B^T (x) A) vec(X).
//   * Superoperators are dense n^2 x n^2 matrices acting on vec'd operators.
//   * The Hilbert-Schmidt inner product <A,B> = tr(A^dag B) coincides with
//     the Euclidean inner product of vec(A) and vec(B).

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qchi/errors.hpp"

namespace qchi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double hermiticity = 1e-10;   // relative
inline constexpr double unitarity = 1e-10;     // relative
inline constexpr double cross_method = 1e-8;   // cross-method equality
inline constexpr double full_rank = 1e-12;     // relative eigenvalue cutoff
}  // namespace tol

inline bool is_hermitian(const CMatrix& m, double rel_tol = tol::hermiticity) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.norm(), 1e-300);
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

inline Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("hs_inner: shapes differ");
  return (a.adjoint() * b).trace();
}

inline CVector vec(const CMatrix& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

inline CMatrix devec(const CVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw DimMismatch("devec: vector length does not match target shape");
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

inline CMatrix devec(const CVector& v, Index n) {
  return devec(v, n, n);
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending and
// eigenvector columns orthonormal. The solver backend is treated as opaque;
// the reconstruction residual is verified on every call.
struct HermitianSpectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

inline HermitianSpectrum hermitian_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimMismatch("hermitian_eig: matrix not square");
  if (!is_hermitian(m))
    throw NotHermitian("hermitian_eig: symmetry check failed");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint().eval()));
  if (solver.info() != Eigen::Success)
    throw NumericalInstability("hermitian_eig: solver failed to converge");
  HermitianSpectrum spec{solver.eigenvalues(), solver.eigenvectors()};
  const double scale = std::max(m.norm(), 1e-300);
  const CMatrix rebuilt = spec.eigenvectors *
                          spec.eigenvalues.asDiagonal() *
                          spec.eigenvectors.adjoint();
  if ((rebuilt - m).norm() > 1e-10 * scale)
    throw NumericalInstability("hermitian_eig: reconstruction residual too large");
  const Index n = m.rows();
  if ((spec.eigenvectors.adjoint() * spec.eigenvectors - CMatrix::Identity(n, n))
          .norm() > tol::unitarity * std::sqrt(double(n)))
    throw NumericalInstability("hermitian_eig: eigenvectors not orthonormal");
  return spec;
}

// M^p for Hermitian PSD M via its spectrum. Negative powers act on the
// support only (eigenvalues below rank_tol * max are dropped).
inline CMatrix psd_power(const CMatrix& m, double p,
                         double rank_tol = tol::full_rank) {
  const HermitianSpectrum spec = hermitian_eig(m);
  const double top = spec.eigenvalues.size() > 0
                         ? spec.eigenvalues(spec.eigenvalues.size() - 1)
                         : 0.0;
  RVector powered = RVector::Zero(spec.eigenvalues.size());
  for (Index j = 0; j < spec.eigenvalues.size(); ++j) {
    const double s = spec.eigenvalues(j);
    if (s >= rank_tol * top && s > 0.0) powered(j) = std::pow(s, p);
  }
  return spec.eigenvectors * powered.asDiagonal() * spec.eigenvectors.adjoint();
}

// Dense superoperator over the column-stacking convention.
struct SuperOperator {
  Index dim = 0;       // operators acted on are dim x dim
  CMatrix mat;         // dim^2 x dim^2

  CMatrix apply(const CMatrix& x) const {
    if (x.rows() != dim || x.cols() != dim)
      throw DimMismatch("SuperOperator::apply: operand dimension mismatch");
    return devec(CVector(mat * vec(x)), dim);
  }

  static SuperOperator identity(Index n) {
    return SuperOperator{n, CMatrix::Identity(n * n, n * n)};
  }
};

// A # B, the map X -> A X B; its matrix is B^T (x) A.
inline SuperOperator sandwich(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimMismatch("sandwich: operands must be square and of equal size");
  return SuperOperator{a.rows(), kron(b.transpose(), a)};
}

// Composition s1 after s2.
inline SuperOperator compose(const SuperOperator& s1, const SuperOperator& s2) {
  if (s1.dim != s2.dim) throw DimMismatch("compose: dimension mismatch");
  return SuperOperator{s1.dim, s1.mat * s2.mat};
}

inline SuperOperator operator*(const SuperOperator& s1, const SuperOperator& s2) {
  return compose(s1, s2);
}

// Adjoint with respect to the Hilbert-Schmidt inner product:
// <A, S(B)> = <adjoint_hs(S)(A), B>.
inline SuperOperator adjoint_hs(const SuperOperator& s) {
  return SuperOperator{s.dim, s.mat.adjoint()};
}

// Partial trace over the first factor of an (n1*n2)-dim bipartite operator;
// composite index is i*n2 + k with i on the first factor.
inline CMatrix partial_trace_first(const CMatrix& m, Index n1, Index n2) {
  if (m.rows() != n1 * n2 || m.cols() != n1 * n2)
    throw DimMismatch("partial_trace_first: size is not n1*n2");
  CMatrix out = CMatrix::Zero(n2, n2);
  for (Index k = 0; k < n2; ++k)
    for (Index l = 0; l < n2; ++l)
      for (Index i = 0; i < n1; ++i) out(k, l) += m(i * n2 + k, i * n2 + l);
  return out;
}

inline CMatrix partial_trace_second(const CMatrix& m, Index n1, Index n2) {
  if (m.rows() != n1 * n2 || m.cols() != n1 * n2)
    throw DimMismatch("partial_trace_second: size is not n1*n2");
  CMatrix out = CMatrix::Zero(n1, n1);
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n1; ++j)
      for (Index k = 0; k < n2; ++k) out(i, j) += m(i * n2 + k, j * n2 + k);
  return out;
}

}  // namespace qchi
