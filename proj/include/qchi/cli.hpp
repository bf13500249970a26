#pragma once

// Command-line front end. All subcommands read explicit JSON inputs and
// write JSON or CSV reports; identical invocations with identical seeds
// produce byte-identical output. Exit codes: 0 success, 2 validation
// failure (machine-readable error JSON on stderr), 3 parse failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qchi/correlation.hpp"
#include "qchi/io.hpp"
#include "qchi/qubit_reference.hpp"
#include "qchi/tensorization.hpp"

namespace qchi {

namespace cli_detail {

struct Options {
  std::uint64_t seed = 0;
  std::string out_file;
  std::string format = "json";
};

inline void emit(const Options& opt, const std::string& text,
                 std::ostream& fallback) {
  if (!opt.out_file.empty()) {
    std::ofstream out(opt.out_file);
    if (!out) throw ParamError("cannot open output file " + opt.out_file);
    out << text;
  } else {
    fallback << text;
  }
}

inline void emit_report(const Options& opt, const json& report,
                        std::ostream& fallback) {
  if (opt.format == "csv")
    emit(opt, json_to_kv_csv(report), fallback);
  else
    emit(opt, report.dump(2) + "\n", fallback);
}

inline DensityMatrix load_density(const std::string& file) {
  return DensityMatrix(matrix_from_json(load_json_file(file), file));
}

inline QuantumChannel load_channel(const std::string& file) {
  return channel_from_json(load_json_file(file), file);
}

inline std::string figure_csv(const std::vector<FigureRow>& rows,
                              const std::string& param_name) {
  std::ostringstream out;
  out << param_name << ",eta_closed_form,eta_numeric\n";
  for (const FigureRow& row : rows)
    out << format_double(row.parameter) << ','
        << format_double(row.eta_closed_form) << ','
        << format_double(row.eta_numeric) << '\n';
  return out.str();
}

inline json figure_json(const std::vector<FigureRow>& rows,
                        const std::string& param_name) {
  json arr = json::array();
  for (const FigureRow& row : rows)
    arr.push_back(json{{param_name, row.parameter},
                       {"eta_closed_form", row.eta_closed_form},
                       {"eta_numeric", row.eta_numeric}});
  return arr;
}

}  // namespace cli_detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  using cli_detail::Options;
  CLI::App app{"quantum chi^2_kappa divergences, SDPI constants and friends"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized subcommands")
      ->capture_default_str();
  app.add_option("--out", opt.out_file, "write the report to this file");
  auto* format_option =
      app.add_option("--format", opt.format, "report format (figure defaults to csv)")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();

  // chisq
  std::string rho_file, sigma_file, kappa_text = "half";
  auto* chisq = app.add_subcommand("chisq", "chi^2_kappa divergence");
  chisq->add_option("--rho", rho_file, "state JSON")->required();
  chisq->add_option("--sigma", sigma_file, "reference state JSON")->required();
  chisq->add_option("--kappa", kappa_text, "weight function");

  // sdpi
  std::string channel_file, method = "eig";
  auto* sdpi = app.add_subcommand("sdpi", "SDPI constant for (channel, state)");
  sdpi->add_option("--channel", channel_file, "channel JSON")->required();
  sdpi->add_option("--sigma", sigma_file, "reference state JSON")->required();
  sdpi->add_option("--kappa", kappa_text, "weight function");
  sdpi->add_option("--method", method, "solver route")
      ->check(CLI::IsMember({"eig", "svd", "both"}));

  // tensorize
  std::vector<std::string> channel_files, sigma_files;
  auto* tensorize =
      app.add_subcommand("tensorize", "tensorization report for fixed factors");
  tensorize->add_option("--channels", channel_files, "factor channel JSONs")
      ->required()
      ->expected(-1);
  tensorize->add_option("--sigmas", sigma_files, "factor state JSONs")
      ->required()
      ->expected(-1);
  tensorize->add_option("--kappa", kappa_text, "weight function");

  // maxcorr
  std::string state_file, dims_text = "2,2";
  auto* maxcorr =
      app.add_subcommand("maxcorr", "kappa-quantum maximal correlation");
  maxcorr->add_option("--state", state_file, "bipartite state JSON")->required();
  maxcorr->add_option("--dims", dims_text, "factor dims, e.g. 2,2");
  maxcorr->add_option("--kappa", kappa_text, "weight function");

  // figure
  auto* figure = app.add_subcommand("figure", "sweep tables for the figures");
  figure->require_subcommand(1);
  double fig_eps = 0.05, fig_xi = 0.95, fig_s = 0.95;
  std::string fig_grid = "0:0.9:10", fig_family = "alpha";
  auto* fig_bsc = figure->add_subcommand("bsc", "eta vs s for the BSC");
  fig_bsc->add_option("--eps", fig_eps, "crossover probability");
  fig_bsc->add_option("--s", fig_grid, "s grid start:end:count");
  auto* fig_qc = figure->add_subcommand("qc", "eta vs kappa parameter");
  fig_qc->add_option("--xi", fig_xi, "X-measurement strength");
  fig_qc->add_option("--s", fig_s, "reference state parameter");
  fig_qc->add_option("--family", fig_family, "kappa family to sweep")
      ->check(CLI::IsMember({"alpha", "wyd"}));
  fig_qc->add_option("--grid", fig_grid, "parameter grid start:end:count");

  // search
  Index search_dim = 2;
  int search_trials = 100;
  std::string search_family = "general";
  std::optional<std::uint64_t> search_seed;
  auto* search = app.add_subcommand(
      "search", "random search for tensorization violations");
  search->add_option("--kappa", kappa_text, "weight function");
  search->add_option("--dim", search_dim, "factor dimension (two factors)");
  search->add_option("--family", search_family, "channel family")
      ->check(CLI::IsMember({"general", "qc"}));
  search->add_option("--trials", search_trials, "number of random trials");
  search->add_option("--seed", search_seed, "search seed (defaults to --seed)");

  // petz
  auto* petz = app.add_subcommand("petz", "Petz recovery map as channel JSON");
  petz->add_option("--channel", channel_file, "channel JSON")->required();
  petz->add_option("--sigma", sigma_file, "reference state JSON")->required();

  // contraction
  int contraction_trials = 100;
  std::optional<std::uint64_t> contraction_seed;
  auto* contraction = app.add_subcommand(
      "contraction", "lower-bound estimate of the contraction coefficient");
  contraction->add_option("--channel", channel_file, "channel JSON")->required();
  contraction->add_option("--kappa", kappa_text, "weight function");
  contraction->add_option("--trials", contraction_trials, "random trials");
  contraction->add_option("--seed", contraction_seed,
                          "estimator seed (defaults to --seed)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "ParseError"}, {"detail", e.what()}}.dump() << "\n";
    return 3;
  }

  try {
    if (chisq->parsed()) {
      const DensityMatrix rho = cli_detail::load_density(rho_file);
      const DensityMatrix sigma = cli_detail::load_density(sigma_file);
      const DivergenceValue v = chi_squared(rho, sigma, parse_kappa(kappa_text));
      json report{{"chi_squared", v.infinite ? json(nullptr) : json(v.value)},
                  {"infinite", v.infinite},
                  {"kappa", parse_kappa(kappa_text).tag()}};
      cli_detail::emit_report(opt, report, out);
    } else if (sdpi->parsed()) {
      const QuantumChannel ch = cli_detail::load_channel(channel_file);
      const DensityMatrix sigma = cli_detail::load_density(sigma_file);
      const KappaFunction kappa = parse_kappa(kappa_text);
      json report;
      if (method == "both") {
        const SdpiReport eig = sdpi_constant_eig(ch, sigma, kappa);
        const SdpiReport svd = sdpi_constant_svd(ch, sigma, kappa);
        report = json{{"eta", eig.eta},
                      {"method", "both"},
                      {"agreement", std::abs(eig.eta - svd.eta)},
                      {"eig", sdpi_report_to_json(eig)},
                      {"svd", sdpi_report_to_json(svd)}};
      } else {
        report = sdpi_report_to_json(sdpi_constant(
            ch, sigma, kappa,
            method == "eig" ? SdpiMethod::Eig : SdpiMethod::Svd));
      }
      report["kappa"] = kappa.tag();
      cli_detail::emit_report(opt, report, out);
    } else if (tensorize->parsed()) {
      if (channel_files.size() != sigma_files.size())
        throw ParamError("tensorize: need one sigma per channel");
      std::vector<QuantumChannel> channels;
      std::vector<DensityMatrix> sigmas;
      for (const std::string& f : channel_files)
        channels.push_back(cli_detail::load_channel(f));
      for (const std::string& f : sigma_files)
        sigmas.push_back(cli_detail::load_density(f));
      const TensorizationReport report =
          tensorization_check(channels, sigmas, parse_kappa(kappa_text));
      cli_detail::emit_report(opt, tensorization_report_to_json(report), out);
    } else if (maxcorr->parsed()) {
      Index n1 = 0, n2 = 0;
      {
        const auto comma = dims_text.find(',');
        if (comma == std::string::npos)
          throw ParseError("maxcorr: --dims expects n1,n2");
        try {
          size_t used = 0;
          n1 = std::stol(dims_text.substr(0, comma), &used);
          if (used != comma) throw std::invalid_argument("n1");
          const std::string rest = dims_text.substr(comma + 1);
          n2 = std::stol(rest, &used);
          if (used != rest.size()) throw std::invalid_argument("n2");
        } catch (const std::exception&) {
          throw ParseError("maxcorr: --dims expects n1,n2");
        }
        if (n1 < 1 || n2 < 1)
          throw ParseError("maxcorr: --dims expects positive integers");
      }
      const CMatrix joint =
          matrix_from_json(load_json_file(state_file), state_file);
      const BipartiteState state(n1, n2, DensityMatrix(joint));
      const MaxCorrResult result =
          maximal_correlation(state, parse_kappa(kappa_text));
      json report{{"mu", result.mu},
                  {"constraint_residuals", result.constraint_residuals},
                  {"kappa", parse_kappa(kappa_text).tag()}};
      cli_detail::emit_report(opt, report, out);
    } else if (figure->parsed()) {
      FigureParams params;
      params.eps = fig_eps;
      params.xi = fig_xi;
      params.s = fig_s;
      std::vector<FigureRow> rows;
      std::string param_name;
      if (fig_bsc->parsed()) {
        rows = figure_data(FigureKind::BscSweep, params, parse_grid(fig_grid));
        param_name = "s";
      } else {
        const FigureKind kind = fig_family == "alpha" ? FigureKind::QcAlphaSweep
                                                      : FigureKind::QcWydSweep;
        rows = figure_data(kind, params, parse_grid(fig_grid));
        param_name = fig_family == "alpha" ? "alpha" : "beta";
      }
      const bool as_json = format_option->count() > 0 && opt.format == "json";
      if (as_json)
        cli_detail::emit(opt, cli_detail::figure_json(rows, param_name).dump(2) + "\n",
                         out);
      else
        cli_detail::emit(opt, cli_detail::figure_csv(rows, param_name), out);
    } else if (search->parsed()) {
      const SearchResult result = counterexample_search(
          parse_kappa(kappa_text), {search_dim, search_dim}, search_trials,
          search_seed.value_or(opt.seed),
          search_family == "qc" ? ChannelFamily::Qc : ChannelFamily::General);
      cli_detail::emit_report(opt, search_result_to_json(result), out);
    } else if (petz->parsed()) {
      const QuantumChannel ch = cli_detail::load_channel(channel_file);
      const DensityMatrix sigma = cli_detail::load_density(sigma_file);
      cli_detail::emit_report(opt, channel_to_json(petz_recovery(ch, sigma)),
                              out);
    } else if (contraction->parsed()) {
      const QuantumChannel ch = cli_detail::load_channel(channel_file);
      const ContractionEstimate estimate = contraction_coefficient_estimate(
          ch, parse_kappa(kappa_text), contraction_trials,
          contraction_seed.value_or(opt.seed));
      json report{{"eta_lower_bound", estimate.eta},
                  {"trials", estimate.trials},
                  {"kappa", parse_kappa(kappa_text).tag()},
                  {"argmax_sigma", matrix_to_json(estimate.argmax_sigma)}};
      cli_detail::emit_report(opt, report, out);
    }
  } catch (const ParseError& e) {
    err << json{{"error", e.kind()}, {"detail", e.what()}}.dump() << "\n";
    return 3;
  } catch (const Error& e) {
    err << json{{"error", e.kind()}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}

inline int run_command_argv(int argc, char** argv, std::ostream& out,
                            std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args, out, err);
}

}  // namespace qchi
