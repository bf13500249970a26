#pragma once

// Weight functions kappa on (0, inf) parameterizing the chi^2_kappa
// divergence family. Every member satisfies kappa(1) = 1 and the symmetry
// x*kappa(x) = kappa(1/x); only named closed-form families are exposed,
// since membership of an arbitrary function cannot be certified numerically.

#include <cmath>
#include <sstream>
#include <string>

#include "qchi/errors.hpp"

namespace qchi {

enum class KappaFamily { Alpha, Wyd, Min, Max };

class KappaFunction {
 public:
  // kappa_alpha(x) = (x^-alpha + x^(alpha-1)) / 2, alpha in [0, 1].
  static KappaFunction alpha(double a) {
    if (!(a >= 0.0 && a <= 1.0))
      throw ParamError("kappa alpha parameter must lie in [0, 1]");
    return KappaFunction(KappaFamily::Alpha, a);
  }

  // Wigner-Yanase-Dyson weight, beta in [-1, 2]. The removable singularities
  // at x = 1 and at beta in {0, 1} are evaluated by explicit limit branches.
  static KappaFunction wyd(double b) {
    if (!(b >= -1.0 && b <= 2.0))
      throw ParamError("kappa wyd parameter must lie in [-1, 2]");
    return KappaFunction(KappaFamily::Wyd, b);
  }

  // kappa_min(x) = 2 / (1 + x), the smallest admissible weight.
  static KappaFunction min() { return KappaFunction(KappaFamily::Min, 0.0); }

  // kappa_max(x) = (1 + x) / (2x), the largest admissible weight.
  static KappaFunction max() { return KappaFunction(KappaFamily::Max, 0.0); }

  // kappa_{1/2}(x) = x^{-1/2}, the distinguished member.
  static KappaFunction half() { return alpha(0.5); }

  double operator()(double x) const {
    if (!(x > 0.0)) throw DomainError("kappa is defined on (0, inf) only");
    switch (family_) {
      case KappaFamily::Alpha:
        return 0.5 * (std::pow(x, -param_) + std::pow(x, param_ - 1.0));
      case KappaFamily::Wyd:
        return eval_wyd(x);
      case KappaFamily::Min:
        return 2.0 / (1.0 + x);
      case KappaFamily::Max:
        return (1.0 + x) / (2.0 * x);
    }
    throw DomainError("kappa: unknown family");
  }

  KappaFamily family() const { return family_; }
  double param() const { return param_; }

  // Whether kappa(x) >= x^{-1/2} for all x > 0. Known families are decided
  // analytically; other WYD parameters fall back to a dense log-spaced grid
  // check, in which case the verdict is heuristic.
  bool dominates_half() const {
    switch (family_) {
      case KappaFamily::Alpha:
      case KappaFamily::Max:
        return true;
      case KappaFamily::Min:
        return false;
      case KappaFamily::Wyd:
        if (wyd_known_dominant()) return true;
        return grid_dominates_half();
    }
    return false;
  }

  // True when the dominates_half verdict comes from a known case rather
  // than the grid check.
  bool dominates_half_analytic() const {
    if (family_ != KappaFamily::Wyd) return true;
    return wyd_known_dominant();
  }

  // CLI syntax round-trip, e.g. "alpha:0.5", "wyd:1.5", "min", "max".
  std::string tag() const {
    std::ostringstream os;
    switch (family_) {
      case KappaFamily::Alpha:
        os << "alpha:" << param_;
        return os.str();
      case KappaFamily::Wyd:
        os << "wyd:" << param_;
        return os.str();
      case KappaFamily::Min:
        return "min";
      case KappaFamily::Max:
        return "max";
    }
    return "?";
  }

  bool is_half() const {
    return family_ == KappaFamily::Alpha && param_ == 0.5;
  }

 private:
  KappaFunction(KappaFamily f, double p) : family_(f), param_(p) {}

  double eval_wyd(double x) const {
    const double b = param_;
    const double t = x - 1.0;
    // beta(1-beta) -> 0 is the logarithmic limit ln(x)/(x-1).
    if (std::abs(b * (1.0 - b)) < 1e-9) {
      if (std::abs(t) < 1e-6) return 1.0 - t / 2.0 + t * t / 3.0;
      return std::log(x) / t;
    }
    if (std::abs(t) < 1e-6) {
      // second-order expansion about x = 1; error is O(t^3)
      return 1.0 - t / 2.0 + (b * b - b + 4.0) / 12.0 * t * t;
    }
    return (1.0 - std::pow(x, b)) * (1.0 - std::pow(x, 1.0 - b)) /
           (b * (1.0 - b) * t * t);
  }

  bool wyd_known_dominant() const {
    const double b = param_;
    // the family is symmetric under beta <-> 1 - beta
    for (double known : {1.5, -0.5, 2.0, -1.0})
      if (std::abs(b - known) < 1e-12) return true;
    return false;
  }

  bool grid_dominates_half() const {
    constexpr int points = 2001;
    for (int i = 0; i < points; ++i) {
      const double expo = -6.0 + 12.0 * double(i) / double(points - 1);
      const double x = std::pow(10.0, expo);
      if ((*this)(x) < std::pow(x, -0.5) * (1.0 - 1e-12)) return false;
    }
    return true;
  }

  KappaFamily family_;
  double param_;
};

}  // namespace qchi
