#pragma once

// Direct computation of the SDPI constant on tensor-product channels,
// comparison against the max of the per-factor constants, and a seeded
// random search for violations outside the proven hypotheses.

#include <cstdint>
#include <string>
#include <vector>

#include "qchi/errors.hpp"
#include "qchi/kappa.hpp"
#include "qchi/sdpi.hpp"
#include "qchi/states.hpp"

namespace qchi {

// guard keeping the n^4-sized superoperators desk-scale
inline constexpr Index kProductDimBudget = 36;

struct HypothesisFlags {
  bool kappa_is_half = false;
  bool all_channels_qc = false;     // constructor provenance, not inference
  bool kappa_dominates_half = false;
  bool dominance_is_heuristic = false;  // grid verdict rather than analytic
};

struct TensorizationReport {
  double eta_global = 0.0;
  std::vector<double> eta_locals;
  double eta_max = 0.0;
  double gap = 0.0;  // eta_global - eta_max, signed
  std::string kappa_tag;
  std::vector<Index> dims;
  HypothesisFlags flags;
};

inline TensorizationReport tensorization_check(
    const std::vector<QuantumChannel>& channels,
    const std::vector<DensityMatrix>& sigmas, const KappaFunction& kappa) {
  if (channels.empty() || channels.size() != sigmas.size())
    throw ParamError("tensorization_check: need equally many channels and states");

  Index product_dim = 1;
  for (size_t j = 0; j < channels.size(); ++j) {
    if (channels[j].dim_in() != channels[j].dim_out() ||
        channels[j].dim_in() != sigmas[j].dim())
      throw DimMismatch("tensorization_check: factor dimension mismatch");
    if (!sigmas[j].full_rank() || !channels[j].apply(sigmas[j]).full_rank())
      throw FullRankRequired(
          "tensorization_check: every sigma_j and E_j(sigma_j) must be full rank");
    product_dim *= channels[j].dim_in();
  }
  if (product_dim > kProductDimBudget)
    throw DimensionBudgetExceeded("tensorization_check: product dimension > 36");

  TensorizationReport report;
  report.kappa_tag = kappa.tag();
  report.flags.kappa_is_half = kappa.is_half();
  report.flags.kappa_dominates_half = kappa.dominates_half();
  report.flags.dominance_is_heuristic = !kappa.dominates_half_analytic();
  report.flags.all_channels_qc = true;

  QuantumChannel global = channels.front();
  DensityMatrix global_sigma = sigmas.front();
  for (size_t j = 0; j < channels.size(); ++j) {
    report.dims.push_back(channels[j].dim_in());
    if (!channels[j].is_qc()) report.flags.all_channels_qc = false;
    report.eta_locals.push_back(
        sdpi_constant_eig(channels[j], sigmas[j], kappa).eta);
    if (j > 0) {
      global = tensor(global, channels[j]);
      global_sigma = tensor(global_sigma, sigmas[j]);
    }
  }
  report.eta_global = sdpi_constant_eig(global, global_sigma, kappa).eta;
  report.eta_max =
      *std::max_element(report.eta_locals.begin(), report.eta_locals.end());
  report.gap = report.eta_global - report.eta_max;
  return report;
}

enum class ChannelFamily { General, Qc };

struct SearchResult {
  TensorizationReport best;
  int trials = 0;
  std::uint64_t seed = 0;
  ChannelFamily family = ChannelFamily::General;
  int best_trial = -1;
};

// Independent seeded trials of random (channels, sigmas) on the given factor
// dimensions; returns the report with the largest gap. Per-trial seeds are
// seed + trial index, so the result does not depend on execution order.
inline SearchResult counterexample_search(const KappaFunction& kappa,
                                          const std::vector<Index>& dims,
                                          int trials, std::uint64_t seed,
                                          ChannelFamily family) {
  if (trials < 1) throw ParamError("counterexample_search: trials must be >= 1");
  if (dims.empty())
    throw ParamError("counterexample_search: need at least one factor");
  Index product = 1;
  for (Index d : dims) {
    if (d < 2) throw ParamError("counterexample_search: factor dims must be >= 2");
    product *= d;
  }
  if (product > kProductDimBudget)
    throw DimensionBudgetExceeded("counterexample_search: product dimension > 36");

  SearchResult result;
  result.trials = trials;
  result.seed = seed;
  result.family = family;

  bool have_best = false;
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed + std::uint64_t(t));
    std::vector<QuantumChannel> channels;
    std::vector<DensityMatrix> sigmas;
    bool admissible = true;
    for (Index d : dims) {
      QuantumChannel ch = family == ChannelFamily::Qc
                              ? random_qc_channel(rng, d)
                              : random_channel(rng, d, d * d);
      bool found = false;
      for (int retry = 0; retry < 64 && !found; ++retry) {
        DensityMatrix sigma = random_density(rng, d);
        if (ch.apply(sigma).full_rank()) {
          sigmas.push_back(std::move(sigma));
          found = true;
        }
      }
      if (!found) {
        admissible = false;
        break;
      }
      channels.push_back(std::move(ch));
    }
    if (!admissible) continue;
    TensorizationReport report = tensorization_check(channels, sigmas, kappa);
    if (!have_best || report.gap > result.best.gap) {
      result.best = std::move(report);
      result.best_trial = t;
      have_best = true;
    }
  }
  if (!have_best)
    throw NumericalInstability(
        "counterexample_search: no admissible trial instance found");
  return result;
}

}  // namespace qchi
