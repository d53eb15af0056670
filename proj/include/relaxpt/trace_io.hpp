#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "relaxpt/solver.hpp"

namespace relaxpt {

void to_json(nlohmann::json& j, const SolverConfig& c);
/// Missing fields keep their defaults; unknown enum spellings throw ConfigError.
void from_json(const nlohmann::json& j, SolverConfig& c);

Mode parse_mode(const std::string& s);
Acceleration parse_acceleration(const std::string& s);
Precision parse_precision(const std::string& s);

/// CSV with header k,energy,residual,elapsed_s; 17 significant digits.
void write_trace_csv(const ConvergenceTrace& trace, std::ostream& os);
void write_trace_csv(const ConvergenceTrace& trace, const std::filesystem::path& path);

/// {"solver": {...}, "provenance": {...}, "records": [{k, energy, residual, elapsed_s[, beta]}]}
nlohmann::json trace_to_json(const ConvergenceTrace& trace, const SolverConfig& cfg,
                             const nlohmann::json& provenance = nlohmann::json::object());
void write_trace_json(const ConvergenceTrace& trace, const SolverConfig& cfg, const std::filesystem::path& path,
                      const nlohmann::json& provenance = nlohmann::json::object());

}  // namespace relaxpt
