#pragma once

// Closed-form SDPI constants for the special qubit channels, used as an
// independent oracle against the generic solvers, plus the sweep tables
// behind the figure commands. Any disagreement with the generic solvers is
// a test failure, never auto-reconciled here.

#include <cmath>
#include <string>
#include <vector>

#include "qchi/errors.hpp"
#include "qchi/kappa.hpp"
#include "qchi/sdpi.hpp"
#include "qchi/states.hpp"

namespace qchi {

// sigma = (I + s Z) / 2 with s in [0, 1); eigenvalues (1 +- s) / 2.
inline DensityMatrix qubit_sigma(double s) {
  if (!(s >= 0.0 && s < 1.0))
    throw ParamError("qubit_sigma: s must lie in [0, 1)");
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = (1.0 + s) / 2.0;
  m(1, 1) = (1.0 - s) / 2.0;
  return DensityMatrix(m);
}

// c_s = (4 / (1 - s)) kappa((1 + s) / (1 - s)); the equivalent algebraic
// forms are cross-checked in tests via the weight-function symmetry.
inline double c_s(const KappaFunction& kappa, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw ParamError("c_s: s must lie in [0, 1)");
  return 4.0 / (1.0 - s) * kappa((1.0 + s) / (1.0 - s));
}

// First POVM effect in Pauli coordinates: F1 = f0 I + fx X + fy Y + fz Z.
struct PauliPovmEffect {
  double f0 = 0.5, fx = 0.0, fy = 0.0, fz = 0.0;

  bool valid() const {
    const double r = std::sqrt(fx * fx + fy * fy + fz * fz);
    return f0 >= 0.0 && f0 <= 1.0 && r <= std::min(f0, 1.0 - f0) + 1e-12;
  }

  CMatrix matrix() const {
    return f0 * CMatrix::Identity(2, 2) + fx * pauli_x() + fy * pauli_y() +
           fz * pauli_z();
  }
};

// The two-outcome QC channel {F1, I - F1} with computational preparation.
inline QuantumChannel qc_channel_from_effect(const PauliPovmEffect& effect) {
  if (!effect.valid())
    throw ParamError("qc_channel_from_effect: effect outside the PSD ball");
  const CMatrix f1 = effect.matrix();
  const CMatrix f2 = CMatrix::Identity(2, 2) - f1;
  return qc_channel(Povm({f1, f2}), CMatrix::Identity(2, 2));
}

struct QcClosedForm {
  double eta = 0.0;
  // F1 proportional to the identity: the channel erases every traceless
  // direction and the Cauchy-Schwarz attainment argument has no maximizer.
  bool degenerate = false;
};

// eta for the two-outcome QC channel against sigma = (I + s Z)/2:
//   4 / (t (1 - t)) * (fx^2/c_s + fy^2/c_s + fz^2 (1 - s^2)/4),
// with t = tr(F1 sigma) = f0 + s fz.
inline QcClosedForm qc_eta_closed_form(const PauliPovmEffect& effect, double s,
                                       const KappaFunction& kappa) {
  if (!(s >= 0.0 && s < 1.0))
    throw ParamError("qc_eta_closed_form: s must lie in [0, 1)");
  if (!effect.valid())
    throw ParamError("qc_eta_closed_form: effect outside the PSD ball");
  const double t = effect.f0 + s * effect.fz;
  if (t <= 1e-12 || t >= 1.0 - 1e-12)
    throw DegenerateMeasurement("qc_eta_closed_form: tr(F1 sigma) is 0 or 1");
  const double r2 =
      effect.fx * effect.fx + effect.fy * effect.fy + effect.fz * effect.fz;
  if (r2 == 0.0) return QcClosedForm{0.0, true};
  const double cs = c_s(kappa, s);
  const double eta =
      4.0 / (t * (1.0 - t)) *
      ((effect.fx * effect.fx + effect.fy * effect.fy) / cs +
       effect.fz * effect.fz * (1.0 - s * s) / 4.0);
  return QcClosedForm{eta, false};
}

struct DepolClosedForm {
  double eta = 0.0;
  bool closed_form = false;  // false: value comes from the generic solver
};

// eta for the qubit depolarizing channel. The printed closed form
// eps^2 c_{s eps} / c_s applies when c_{s eps} >= (1-s^2)/(1-s^2 eps^2) c_s;
// otherwise the generic eigenvalue solver supplies the value.
inline DepolClosedForm depolarizing_eta_closed_form(double eps, double s,
                                                    const KappaFunction& kappa) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw ParamError("depolarizing_eta_closed_form: eps must lie in [0, 1]");
  if (!(s >= 0.0 && s < 1.0))
    throw ParamError("depolarizing_eta_closed_form: s must lie in [0, 1)");
  const double cs = c_s(kappa, s);
  const double cse = c_s(kappa, s * eps);
  const double condition = cse - (1.0 - s * s) / (1.0 - s * s * eps * eps) * cs;
  if (condition >= 0.0)
    return DepolClosedForm{eps * eps * cse / cs, true};
  const double eta =
      sdpi_constant_eig(depolarizing(eps), qubit_sigma(s), kappa).eta;
  return DepolClosedForm{eta, false};
}

inline double bsc_eta_closed_form(double eps, double s) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw ParamError("bsc_eta_closed_form: eps must lie in [0, 1]");
  if (!(s >= 0.0 && s < 1.0))
    throw ParamError("bsc_eta_closed_form: s must lie in [0, 1)");
  const double u = 1.0 - 2.0 * eps;
  return u * u * (1.0 - s * s) / (1.0 - u * u * s * s);
}

enum class FigureKind { BscSweep, QcAlphaSweep, QcWydSweep };

struct FigureParams {
  double eps = 0.05;  // bsc sweep
  double xi = 0.95;   // qc sweeps
  double s = 0.95;    // qc sweeps (bsc sweep varies s on the grid)
};

struct FigureRow {
  double parameter = 0.0;
  double eta_closed_form = 0.0;
  double eta_numeric = 0.0;
};

// Row-wise (parameter, closed form, generic solver) tables for the sweep
// figures; the two columns must agree to 1e-8.
inline std::vector<FigureRow> figure_data(FigureKind kind,
                                          const FigureParams& params,
                                          const std::vector<double>& grid) {
  if (grid.empty()) throw ParamError("figure_data: empty grid");
  std::vector<FigureRow> rows;
  rows.reserve(grid.size());
  switch (kind) {
    case FigureKind::BscSweep: {
      const QuantumChannel ch = bsc_channel(params.eps);
      for (double s : grid) {
        FigureRow row;
        row.parameter = s;
        row.eta_closed_form = bsc_eta_closed_form(params.eps, s);
        row.eta_numeric =
            sdpi_constant_eig(ch, qubit_sigma(s), KappaFunction::half()).eta;
        rows.push_back(row);
      }
      break;
    }
    case FigureKind::QcAlphaSweep:
    case FigureKind::QcWydSweep: {
      const PauliPovmEffect effect{0.5, params.xi / 2.0, 0.0, 0.0};
      const QuantumChannel ch = qc_channel_from_effect(effect);
      const DensityMatrix sigma = qubit_sigma(params.s);
      for (double p : grid) {
        const KappaFunction kappa = kind == FigureKind::QcAlphaSweep
                                        ? KappaFunction::alpha(p)
                                        : KappaFunction::wyd(p);
        FigureRow row;
        row.parameter = p;
        row.eta_closed_form = qc_eta_closed_form(effect, params.s, kappa).eta;
        row.eta_numeric = sdpi_constant_eig(ch, sigma, kappa).eta;
        rows.push_back(row);
      }
      break;
    }
  }
  return rows;
}

}  // namespace qchi
