#include "relaxpt/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "relaxpt/errors.hpp"

namespace relaxpt {

Mode parse_mode(const std::string& s) {
  if (s == "ipt") return Mode::ipt;
  if (s == "rs") return Mode::rs;
  throw ConfigError("unknown mode '" + s + "' (expected ipt or rs)");
}

Acceleration parse_acceleration(const std::string& s) {
  if (s == "none") return Acceleration::none;
  if (s == "anderson") return Acceleration::anderson;
  throw ConfigError("unknown acceleration '" + s + "' (expected none or anderson)");
}

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::double_precision;
  if (s == "extended") return Precision::extended;
  throw ConfigError("unknown precision '" + s + "' (expected double or extended)");
}

void to_json(nlohmann::json& j, const SolverConfig& c) {
  j = nlohmann::json{{"alpha", c.alpha},
                     {"tol", c.tol},
                     {"max_iter", c.max_iter},
                     {"mode", to_string(c.mode)},
                     {"acceleration", to_string(c.acceleration)},
                     {"memory", c.memory},
                     {"precision", to_string(c.precision)}};
}

void from_json(const nlohmann::json& j, SolverConfig& c) {
  if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  if (j.contains("max_iter")) c.max_iter = j.at("max_iter").get<std::size_t>();
  if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("acceleration")) c.acceleration = parse_acceleration(j.at("acceleration").get<std::string>());
  if (j.contains("memory")) c.memory = j.at("memory").get<std::size_t>();
  if (j.contains("precision")) c.precision = parse_precision(j.at("precision").get<std::string>());
}

void write_trace_csv(const ConvergenceTrace& trace, std::ostream& os) {
  os << "k,energy,residual,elapsed_s\n";
  char buf[128];
  for (const auto& r : trace.records()) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", r.k, r.energy, r.residual, r.elapsed_s);
    os << buf;
  }
}

void write_trace_csv(const ConvergenceTrace& trace, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_trace_csv(trace, os);
}

nlohmann::json trace_to_json(const ConvergenceTrace& trace, const SolverConfig& cfg, const nlohmann::json& provenance) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : trace.records()) {
    nlohmann::json rec{{"k", r.k}, {"energy", r.energy}, {"residual", r.residual}, {"elapsed_s", r.elapsed_s}};
    if (!r.beta.empty()) rec["beta"] = r.beta;
    records.push_back(std::move(rec));
  }
  return {{"solver", cfg}, {"provenance", provenance}, {"records", std::move(records)}};
}

void write_trace_json(const ConvergenceTrace& trace, const SolverConfig& cfg, const std::filesystem::path& path,
                      const nlohmann::json& provenance) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os << trace_to_json(trace, cfg, provenance).dump(2) << '\n';
}

}  // namespace relaxpt
