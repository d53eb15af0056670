#include "relaxpt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "relaxpt/errors.hpp"
#include "relaxpt/matrix_market.hpp"
#include "relaxpt/pencil.hpp"
#include "relaxpt/trace_io.hpp"

namespace relaxpt {

namespace {

const char* partition_name(PartitionKind k) { return k == PartitionKind::en ? "en" : "natural"; }

PartitionKind parse_partition(const std::string& s) {
  if (s == "en") return PartitionKind::en;
  if (s == "natural") return PartitionKind::natural;
  throw ConfigError("unknown partitioning '" + s + "' (expected en or natural)");
}

bool is_solver_parameter(const std::string& name) {
  return name == "alpha" || name == "tol" || name == "max_iter" || name == "memory";
}

template <class T>
std::size_t lowest_ratio(const std::vector<T>& num, const std::vector<T>* den) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < num.size(); ++i) {
    const T a = den ? num[i] / (*den)[i] : num[i];
    const T b = den ? num[best] / (*den)[best] : num[best];
    if (a < b) best = i;
  }
  return best;
}

template <class T>
void fill_summary(RunSummary& out, SolveResult<T>&& r) {
  out.raw_energy = to_double(r.state.energy);
  out.energy = out.raw_energy;
  out.residual = to_double(r.state.residual);
  out.k = r.state.k;
  out.status = r.status;
  out.anderson_fallbacks = r.anderson_fallbacks;
  out.negative_beta_steps = r.negative_beta_steps;
  out.psi.resize(r.state.psi.size());
  for (std::size_t i = 0; i < out.psi.size(); ++i) out.psi[i] = to_double(r.state.psi[i]);
}

template <class T>
RunSummary run_typed(const ExperimentConfig& c) {
  RunSummary out;
  out.model = c.matrix ? "matrix" : c.pencil ? "pencil" : c.model.kind();
  const bool pencil = c.pencil || (!c.matrix && c.model.is_pencil());

  if (pencil) {
    SymmetricPencil<T> p;
    if (c.pencil) {
      auto pd = read_pencil(c.pencil->first, c.pencil->second);
      if constexpr (std::is_same_v<T, double>) {
        p = std::move(pd);
      } else {
        p = {pd.a.template cast<T>(), pd.s.template cast<T>()};
      }
    } else {
      p = build_pencil<T>(c.model);
    }
    out.target = c.target.value_or(lowest_ratio(p.a.diagonal(), &p.s.diagonal()));
    if (out.target >= p.dim()) throw ConfigError("target index out of range");
    fill_summary(out, solve_pencil(p, out.target, c.solver, &out.trace));
    if (!c.pencil) out.energy = out.raw_energy + kZeemanEnergyOffset;
    return out;
  }

  Partitioning<T> part;
  if (c.partition == PartitionKind::natural) {
    auto split = build_split<T>(c.model);
    out.target = c.target.value_or(lowest_ratio<T>(split.f_diag, nullptr));
    part = natural_partitioning(split.f_diag, split.interaction, split.g, out.target);
  } else {
    SparseSymmetric<T> h;
    if (c.matrix) {
      auto hd = read_matrix_market(*c.matrix);
      if constexpr (std::is_same_v<T, double>) {
        h = std::move(hd);
      } else {
        h = hd.template cast<T>();
      }
    } else {
      h = build_operator<T>(c.model);
    }
    out.target = c.target.value_or(lowest_ratio<T>(h.diagonal(), nullptr));
    if (out.target >= h.dim()) throw ConfigError("target index out of range");
    part = epstein_nesbet(h, out.target);
  }
  fill_summary(out, relax_iterate(part, c.solver, &out.trace));
  return out;
}

std::string file_safe(std::string s) {
  for (auto& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '-' && ch != '_') ch = '_';
  }
  return s;
}

nlohmann::json provenance(const ExperimentConfig& c, const RunSummary& s) {
  nlohmann::json j = c;
  j.erase("outputs");
  j.erase("sweep");
  j["result"] = {{"energy", s.energy},    {"raw_energy", s.raw_energy}, {"residual", s.residual},
                 {"k", s.k},              {"status", to_string(s.status)}, {"target", s.target},
                 {"anderson_fallbacks", s.anderson_fallbacks}, {"negative_beta_steps", s.negative_beta_steps}};
  return j;
}

}  // namespace

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  auto check = [&](auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      problems.emplace_back(e.what());
    }
  };
  check([&] { solver.validate(); });
  if (matrix && pencil) problems.emplace_back("--matrix and --pencil are mutually exclusive");
  if (!matrix && !pencil) check([&] { model.validate(); });
  const bool is_pencil = pencil || (!matrix && model.is_pencil());
  if (is_pencil && solver.mode == Mode::rs) problems.emplace_back("RS mode is not available for pencils");
  if (partition == PartitionKind::natural) {
    if (matrix || pencil) {
      problems.emplace_back("natural partitioning needs a built oscillator model");
    } else if (model.kind() != "anharmonic" && model.kind() != "herbst-simon") {
      problems.emplace_back("natural partitioning is only defined for the oscillator models");
    }
  }
  if (sweep) {
    if (sweep->values.empty()) problems.emplace_back("sweep has no values");
    if (!is_sweep_parameter(*this, sweep->parameter)) {
      problems.emplace_back("sweep parameter '" + sweep->parameter + "' is not a field of this configuration");
    } else {
      for (const auto& v : sweep->values) {
        check([&] {
          auto point = with_parameter(*this, sweep->parameter, v);
          point.sweep.reset();
          point.validate();
        });
      }
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"model", c.model}, {"partitioning", partition_name(c.partition)}, {"solver", c.solver}};
  j["target"] = c.target ? nlohmann::json(*c.target) : nlohmann::json("auto");
  if (c.matrix) j["matrix"] = *c.matrix;
  if (c.pencil) j["pencil"] = {c.pencil->first, c.pencil->second};
  j["outputs"] = {{"trace_csv", c.outputs.trace_csv},
                  {"trace_json", c.outputs.trace_json},
                  {"summary_csv", c.outputs.summary_csv},
                  {"trace_dir", c.outputs.trace_dir}};
  if (c.sweep) j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  static const std::vector<std::string> known = {"model", "partitioning", "solver", "target", "matrix",
                                                 "pencil", "outputs", "sweep"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config field '" + key + "'");
  }
  if (j.contains("model")) c.model = j.at("model").get<ModelSpec>();
  if (j.contains("partitioning")) c.partition = parse_partition(j.at("partitioning").get<std::string>());
  if (j.contains("solver")) from_json(j.at("solver"), c.solver);
  if (j.contains("target")) {
    const auto& t = j.at("target");
    if (t.is_string() && t.get<std::string>() == "auto") {
      c.target.reset();
    } else {
      c.target = t.get<std::size_t>();
    }
  }
  if (j.contains("matrix")) c.matrix = j.at("matrix").get<std::string>();
  if (j.contains("pencil")) {
    const auto files = j.at("pencil").get<std::vector<std::string>>();
    if (files.size() != 2) throw ConfigError("pencil needs exactly two files");
    c.pencil = std::make_pair(files[0], files[1]);
  }
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    if (o.contains("trace_csv")) c.outputs.trace_csv = o.at("trace_csv").get<std::string>();
    if (o.contains("trace_json")) c.outputs.trace_json = o.at("trace_json").get<std::string>();
    if (o.contains("summary_csv")) c.outputs.summary_csv = o.at("summary_csv").get<std::string>();
    if (o.contains("trace_dir")) c.outputs.trace_dir = o.at("trace_dir").get<std::string>();
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    SweepSpec sw;
    sw.parameter = s.at("parameter").get<std::string>();
    for (const auto& v : s.at("values")) sw.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    c.sweep = std::move(sw);
  }
}

bool is_sweep_parameter(const ExperimentConfig& c, const std::string& name) {
  if (is_solver_parameter(name) || name == "target") return true;
  if (c.matrix || c.pencil) return false;
  ModelSpec probe = c.model;
  try {
    return set_model_parameter(probe, name, name == "g" || name == "B" || name == "h" ? "1" : "2");
  } catch (const std::exception&) {
    return false;
  }
}

ExperimentConfig with_parameter(const ExperimentConfig& c, const std::string& name, const std::string& value) {
  ExperimentConfig out = c;
  try {
    if (name == "alpha") {
      out.solver.alpha = std::stod(value);
    } else if (name == "tol") {
      out.solver.tol = std::stod(value);
    } else if (name == "max_iter") {
      out.solver.max_iter = std::stoull(value);
    } else if (name == "memory") {
      out.solver.memory = std::stoull(value);
    } else if (name == "target") {
      out.target = std::stoull(value);
    } else if (c.matrix || c.pencil || !set_model_parameter(out.model, name, value)) {
      throw ConfigError("unknown parameter '" + name + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad value '" + value + "' for parameter '" + name + "'");
  }
  return out;
}

RunSummary run_experiment(const ExperimentConfig& c) {
  c.validate();
  RunSummary s = c.solver.precision == Precision::extended ? run_typed<Extended>(c) : run_typed<double>(c);
  if (!c.outputs.trace_csv.empty()) write_trace_csv(s.trace, c.outputs.trace_csv);
  if (!c.outputs.trace_json.empty()) write_trace_json(s.trace, c.solver, c.outputs.trace_json, provenance(c, s));
  return s;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& c, std::size_t threads) {
  if (!c.sweep) throw ConfigError("no sweep configured");
  c.validate();
  const auto& sw = *c.sweep;
  std::vector<SweepRow> rows(sw.values.size());
  const bool traces = !c.outputs.trace_dir.empty();
  if (traces) std::filesystem::create_directories(c.outputs.trace_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      auto& row = rows[i];
      row.parameter = sw.parameter;
      row.value = sw.values[i];
      try {
        auto point = with_parameter(c, sw.parameter, sw.values[i]);
        point.sweep.reset();
        point.outputs = {};
        if (traces) {
          const auto stem = std::filesystem::path(c.outputs.trace_dir) /
                            ("trace_" + std::to_string(i) + "_" + file_safe(sw.parameter + "=" + sw.values[i]));
          point.outputs.trace_csv = stem.string() + ".csv";
          point.outputs.trace_json = stem.string() + ".json";
        }
        row.result = run_experiment(point);
        row.result->psi.clear();
        row.result->psi.shrink_to_fit();
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  if (!c.outputs.summary_csv.empty()) {
    std::ofstream os(c.outputs.summary_csv);
    if (!os) throw Error("cannot open " + c.outputs.summary_csv + " for writing");
    write_sweep_summary(rows, os);
  }
  return rows;
}

std::size_t sweep_threads_from_env() {
  if (const char* env = std::getenv("RELAXPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void write_sweep_summary(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "param,value,E_final,residual,k,status\n";
  char buf[128];
  for (const auto& r : rows) {
    os << r.parameter << ',' << r.value << ',';
    if (r.result) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,", r.result->energy, r.result->residual, r.result->k);
      os << buf << to_string(r.result->status) << '\n';
    } else {
      os << "nan,nan,0,Error\n";
    }
  }
}

}  // namespace relaxpt
