#pragma once

// JSON schemas and CSV formatting for the CLI. Matrix encoding used
// repo-wide: {"dim": n, "entries": [[re, im], ...]} row-major, length n^2.
// Schema violations raise ParseError carrying the offending field path;
// domain-invariant violations surface from the library constructors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchi/correlation.hpp"
#include "qchi/errors.hpp"
#include "qchi/kappa.hpp"
#include "qchi/sdpi.hpp"
#include "qchi/states.hpp"
#include "qchi/tensorization.hpp"

namespace qchi {

using json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline json matrix_to_json(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw ParamError("matrix JSON encoding covers square matrices only");
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"dim", m.rows()}, {"entries", entries}};
}

inline CMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError(path + ".dim: expected integer");
  const Index n = j["dim"].get<Index>();
  if (n < 1) throw ParseError(path + ".dim: must be >= 1");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ParseError(path + ".entries: expected array");
  const json& entries = j["entries"];
  if (Index(entries.size()) != n * n)
    throw ParseError(path + ".entries: expected exactly dim^2 entries");
  CMatrix m(n, n);
  for (Index k = 0; k < n * n; ++k) {
    const json& e = entries[size_t(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      throw ParseError(path + ".entries[" + std::to_string(k) +
                       "]: expected [re, im]");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError(path + ".entries[" + std::to_string(k) +
                       "]: entries must be finite");
    m(k / n, k % n) = Complex(re, im);
  }
  return m;
}

inline json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const CMatrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return json{
      {"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", kraus}};
}

inline QuantumChannel channel_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected object");
  for (const char* key : {"dim_in", "dim_out"})
    if (!j.contains(key) || !j[key].is_number_integer())
      throw ParseError(path + "." + key + ": expected integer");
  const Index din = j["dim_in"].get<Index>();
  const Index dout = j["dim_out"].get<Index>();
  if (din != dout)
    throw ParseError(path +
                     ": non-square channels are not supported by this encoding");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError(path + ".kraus: expected nonempty array");
  std::vector<CMatrix> kraus;
  for (size_t i = 0; i < j["kraus"].size(); ++i) {
    CMatrix k = matrix_from_json(j["kraus"][i],
                                 path + ".kraus[" + std::to_string(i) + "]");
    if (k.rows() != dout)
      throw ParseError(path + ".kraus[" + std::to_string(i) +
                       "]: dimension differs from dim_out");
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

inline Povm povm_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("effects") || !j["effects"].is_array() ||
      j["effects"].empty())
    throw ParseError(path + ".effects: expected nonempty array");
  std::vector<CMatrix> effects;
  for (size_t i = 0; i < j["effects"].size(); ++i)
    effects.push_back(matrix_from_json(
        j["effects"][i], path + ".effects[" + std::to_string(i) + "]"));
  return Povm(std::move(effects));
}

inline json povm_to_json(const Povm& p) {
  json effects = json::array();
  for (const CMatrix& f : p.effects) effects.push_back(matrix_to_json(f));
  return json{{"effects", effects}};
}

inline json load_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError(filename + ": cannot open file");
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError(filename + ": malformed JSON");
  return j;
}

// CLI kappa syntax: alpha:<a>, wyd:<b>, min, max, half.
inline KappaFunction parse_kappa(const std::string& text) {
  if (text == "min") return KappaFunction::min();
  if (text == "max") return KappaFunction::max();
  if (text == "half") return KappaFunction::half();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string family = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    double value = 0.0;
    size_t used = 0;
    try {
      value = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw ParseError("kappa: cannot parse parameter in '" + text + "'");
    }
    if (used != arg.size())
      throw ParseError("kappa: trailing characters in '" + text + "'");
    if (family == "alpha") return KappaFunction::alpha(value);
    if (family == "wyd") return KappaFunction::wyd(value);
  }
  throw ParseError("kappa: expected alpha:<a>, wyd:<b>, min, max or half, got '" +
                   text + "'");
}

// Grid syntax start:end:count, inclusive of both endpoints; count = 1 means
// the single point `start`.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ':')) parts.push_back(token);
  if (parts.size() != 3)
    throw ParseError("grid: expected start:end:count, got '" + text + "'");
  double start = 0.0, end = 0.0;
  long count = 0;
  try {
    size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    end = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("end");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw ParseError("grid: cannot parse '" + text + "'");
  }
  if (count < 1) throw ParamError("grid: count must be >= 1");
  std::vector<double> grid;
  grid.reserve(size_t(count));
  if (count == 1) {
    grid.push_back(start);
  } else {
    for (long i = 0; i < count; ++i)
      grid.push_back(start + (end - start) * double(i) / double(count - 1));
  }
  return grid;
}

inline json sdpi_report_to_json(const SdpiReport& report) {
  return json{{"eta", report.eta},
              {"method", to_string(report.method)},
              {"spectrum", report.spectrum},
              {"residuals", {{"fixed_point", report.fixed_point_residual}}}};
}

inline json tensorization_report_to_json(const TensorizationReport& report) {
  return json{
      {"eta_global", report.eta_global},
      {"eta_locals", report.eta_locals},
      {"eta_max", report.eta_max},
      {"gap", report.gap},
      {"kappa", report.kappa_tag},
      {"dims", report.dims},
      {"hypothesis_flags",
       {{"kappa_is_half", report.flags.kappa_is_half},
        {"all_channels_qc", report.flags.all_channels_qc},
        {"kappa_dominates_half", report.flags.kappa_dominates_half},
        {"dominance_is_heuristic", report.flags.dominance_is_heuristic}}}};
}

inline json search_result_to_json(const SearchResult& result) {
  return json{{"best", tensorization_report_to_json(result.best)},
              {"best_trial", result.best_trial},
              {"trials", result.trials},
              {"seed", result.seed},
              {"family",
               result.family == ChannelFamily::Qc ? "qc" : "general"}};
}

// Flat key,value CSV for scalar reports; sequences joined with ';'.
inline std::string json_to_kv_csv(const json& j) {
  std::ostringstream out;
  out << "key,value\n";
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
          out << prefix << ",\"";
          for (size_t i = 0; i < node.size(); ++i) {
            if (i) out << ';';
            if (node[i].is_number_float())
              out << format_double(node[i].get<double>());
            else
              out << node[i].dump();
          }
          out << "\"\n";
        } else if (node.is_number_float()) {
          out << prefix << ',' << format_double(node.get<double>()) << '\n';
        } else {
          out << prefix << ',' << node.dump() << '\n';
        }
      };
  walk(j, "");
  return out.str();
}

}  // namespace qchi
