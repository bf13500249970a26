#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qchi {

// Base of the library's error taxonomy. `kind()` is the stable tag the CLI
// emits in its machine-readable error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DimMismatch : Error {
  explicit DimMismatch(const std::string& w) : Error("DimMismatch", w) {}
};
struct NotHermitian : Error {
  explicit NotHermitian(const std::string& w) : Error("NotHermitian", w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("DomainError", w) {}
};
struct ParamError : Error {
  explicit ParamError(const std::string& w) : Error("ParamError", w) {}
};
struct NotAState : Error {
  explicit NotAState(const std::string& w) : Error("NotAState", w) {}
};
struct InvalidChannel : Error {
  explicit InvalidChannel(const std::string& w) : Error("InvalidChannel", w) {}
};
struct InvalidPovm : Error {
  explicit InvalidPovm(const std::string& w) : Error("InvalidPovm", w) {}
};
struct BasisNotOrthonormal : Error {
  explicit BasisNotOrthonormal(const std::string& w)
      : Error("BasisNotOrthonormal", w) {}
};
struct FullRankRequired : Error {
  explicit FullRankRequired(const std::string& w)
      : Error("FullRankRequired", w) {}
};
struct ZeroDirection : Error {
  explicit ZeroDirection(const std::string& w) : Error("ZeroDirection", w) {}
};
struct NotTraceless : Error {
  explicit NotTraceless(const std::string& w) : Error("NotTraceless", w) {}
};
struct NumericalInstability : Error {
  explicit NumericalInstability(const std::string& w)
      : Error("NumericalInstability", w) {}
};
struct DimensionBudgetExceeded : Error {
  explicit DimensionBudgetExceeded(const std::string& w)
      : Error("DimensionBudgetExceeded", w) {}
};
struct DegenerateMeasurement : Error {
  explicit DegenerateMeasurement(const std::string& w)
      : Error("DegenerateMeasurement", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

}  // namespace qchi
