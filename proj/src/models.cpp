#include "relaxpt/models.hpp"

#include <bit>
#include <cstdio>
#include <random>
#include <unordered_map>

#include "relaxpt/errors.hpp"

namespace relaxpt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string token_from_json(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_number(v.get<double>());
  throw ConfigError(std::string("model field '") + key + "' must be a number or a string token");
}

void require_token(const std::string& token, const char* what) {
  if (!is_valid_parameter_token(token)) throw ConfigError(std::string("invalid value for ") + what + ": '" + token + "'");
}

}  // namespace

bool is_valid_parameter_token(std::string_view token) {
  std::string_view body = token;
  if (body.rfind("sqrt", 0) == 0) {
    body.remove_prefix(4);
    if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  }
  if (body.empty()) return false;
  const std::string s(body);
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::vector<double> heisenberg_fields(std::size_t l, double h, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<double> fields(l);
  for (auto& f : fields) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    f = h * (2.0 * u - 1.0);
  }
  return fields;
}

HeisenbergModel build_heisenberg(std::size_t l, double h, std::uint64_t seed, bool periodic, bool sz0_sector) {
  if (l < 2) throw std::invalid_argument("build_heisenberg: need at least 2 spins");
  if (periodic && l < 3) throw std::invalid_argument("build_heisenberg: periodic chains need L >= 3");
  if (l > 30) throw std::invalid_argument("build_heisenberg: L too large for the full basis");
  if (sz0_sector && l % 2 != 0) throw std::invalid_argument("build_heisenberg: S^z = 0 sector needs even L");

  HeisenbergModel model;
  model.fields = heisenberg_fields(l, h, seed);
  const std::uint64_t full = std::uint64_t{1} << l;
  for (std::uint64_t s = 0; s < full; ++s) {
    if (!sz0_sector || static_cast<std::size_t>(std::popcount(s)) == l / 2) model.states.push_back(s);
  }
  std::unordered_map<std::uint64_t, std::size_t> index;
  if (sz0_sector) {
    for (std::size_t i = 0; i < model.states.size(); ++i) index.emplace(model.states[i], i);
  }
  auto lookup = [&](std::uint64_t s) { return sz0_sector ? index.at(s) : static_cast<std::size_t>(s); };

  const std::size_t bonds = periodic ? l : l - 1;
  std::vector<SparseSymmetric<double>::Entry> entries;
  for (std::size_t i = 0; i < model.states.size(); ++i) {
    const std::uint64_t s = model.states[i];
    double diag = 0.0;
    for (std::size_t site = 0; site < l; ++site) {
      diag += ((s >> site) & 1U) ? 0.5 * model.fields[site] : -0.5 * model.fields[site];
    }
    for (std::size_t b = 0; b < bonds; ++b) {
      const std::size_t p = b, q = (b + 1) % l;
      const bool up_p = (s >> p) & 1U, up_q = (s >> q) & 1U;
      if (up_p == up_q) {
        diag += 0.25;
      } else {
        diag -= 0.25;
        const std::uint64_t flipped = s ^ ((std::uint64_t{1} << p) | (std::uint64_t{1} << q));
        if (s < flipped) entries.push_back({i, lookup(flipped), 0.5});
      }
    }
    entries.push_back({i, i, diag});
  }
  model.hamiltonian = SparseSymmetric<double>::from_entries(model.states.size(), std::move(entries));
  return model;
}

// ---------------------------------------------------------------------------

std::string ModelSpec::kind() const {
  struct V {
    std::string operator()(const AnharmonicSpec&) const { return "anharmonic"; }
    std::string operator()(const HerbstSimonSpec&) const { return "herbst-simon"; }
    std::string operator()(const ZeemanSpec&) const { return "zeeman"; }
    std::string operator()(const HeisenbergSpec&) const { return "heisenberg"; }
  };
  return std::visit(V{}, variant);
}

void ModelSpec::validate() const {
  if (const auto* a = std::get_if<AnharmonicSpec>(&variant)) {
    if (a->s < 2 || a->s > 4) throw ConfigError("anharmonic: s must be 2, 3 or 4");
    require_token(a->g, "g");
    if (evaluate_parameter<double>(a->g) < 0) throw ConfigError("anharmonic: g must be non-negative");
    if (a->n < static_cast<std::size_t>(2 * a->s + 2)) throw ConfigError("anharmonic: N must be at least 2s + 2");
  } else if (const auto* hs = std::get_if<HerbstSimonSpec>(&variant)) {
    require_token(hs->g, "g");
    if (evaluate_parameter<double>(hs->g) < 0) throw ConfigError("herbst-simon: g must be non-negative");
    if (hs->n < 8) throw ConfigError("herbst-simon: N must be at least 8");
  } else if (const auto* z = std::get_if<ZeemanSpec>(&variant)) {
    require_token(z->b, "B");
    if (evaluate_parameter<double>(z->b) < 0) throw ConfigError("zeeman: B must be non-negative");
    if (z->n < 10) throw ConfigError("zeeman: N must be at least 10");
  } else if (const auto* hb = std::get_if<HeisenbergSpec>(&variant)) {
    if (hb->l < 2) throw ConfigError("heisenberg: L must be at least 2");
    if (hb->periodic && hb->l < 3) throw ConfigError("heisenberg: periodic chains need L >= 3");
    if (hb->h < 0) throw ConfigError("heisenberg: h must be non-negative");
    if (hb->sz0_sector && hb->l % 2) throw ConfigError("heisenberg: S^z = 0 sector needs even L");
  }
}

ModelSpec ModelSpec::anharmonic(int s, const std::string& g) {
  return anharmonic(s, g, evaluate_parameter<double>(g) <= 1.0 ? 200 : 1000);
}
ModelSpec ModelSpec::anharmonic(int s, const std::string& g, std::size_t n) { return {AnharmonicSpec{s, g, n}}; }
ModelSpec ModelSpec::herbst_simon(const std::string& g, std::size_t n) { return {HerbstSimonSpec{g, n}}; }
ModelSpec ModelSpec::zeeman(const std::string& b, std::size_t n) { return {ZeemanSpec{b, n}}; }
ModelSpec ModelSpec::heisenberg(std::size_t l, double h, std::uint64_t seed, bool periodic) {
  return {HeisenbergSpec{l, h, seed, periodic, false}};
}

bool operator==(const ModelSpec& a, const ModelSpec& b) {
  return nlohmann::json(a) == nlohmann::json(b);
}

void to_json(nlohmann::json& j, const ModelSpec& m) {
  j = nlohmann::json{{"model", m.kind()}};
  if (const auto* a = std::get_if<AnharmonicSpec>(&m.variant)) {
    j["s"] = a->s;
    j["g"] = a->g;
    j["N"] = a->n;
  } else if (const auto* hs = std::get_if<HerbstSimonSpec>(&m.variant)) {
    j["g"] = hs->g;
    j["N"] = hs->n;
  } else if (const auto* z = std::get_if<ZeemanSpec>(&m.variant)) {
    j["B"] = z->b;
    j["N"] = z->n;
  } else if (const auto* hb = std::get_if<HeisenbergSpec>(&m.variant)) {
    j["L"] = hb->l;
    j["h"] = hb->h;
    j["seed"] = hb->seed;
    j["periodic"] = hb->periodic;
    j["sz0_sector"] = hb->sz0_sector;
  }
}

void from_json(const nlohmann::json& j, ModelSpec& m) {
  const auto kind = j.at("model").get<std::string>();
  if (kind == "anharmonic") {
    AnharmonicSpec a;
    if (j.contains("s")) a.s = j.at("s").get<int>();
    if (j.contains("g")) a.g = token_from_json(j, "g");
    a.n = j.contains("N") ? j.at("N").get<std::size_t>() : (evaluate_parameter<double>(a.g) <= 1.0 ? 200 : 1000);
    m.variant = a;
  } else if (kind == "herbst-simon") {
    HerbstSimonSpec hs;
    if (j.contains("g")) hs.g = token_from_json(j, "g");
    if (j.contains("N")) hs.n = j.at("N").get<std::size_t>();
    m.variant = hs;
  } else if (kind == "zeeman") {
    ZeemanSpec z;
    if (j.contains("B")) z.b = token_from_json(j, "B");
    if (j.contains("N")) z.n = j.at("N").get<std::size_t>();
    m.variant = z;
  } else if (kind == "heisenberg") {
    HeisenbergSpec hb;
    if (j.contains("L")) hb.l = j.at("L").get<std::size_t>();
    if (j.contains("h")) hb.h = j.at("h").get<double>();
    if (j.contains("seed")) hb.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("periodic")) hb.periodic = j.at("periodic").get<bool>();
    if (j.contains("sz0_sector")) hb.sz0_sector = j.at("sz0_sector").get<bool>();
    m.variant = hb;
  } else {
    throw ConfigError("unknown model '" + kind + "'");
  }
}

bool set_model_parameter(ModelSpec& m, const std::string& name, const std::string& value) {
  auto as_size = [&] { return static_cast<std::size_t>(std::stoull(value)); };
  if (auto* a = std::get_if<AnharmonicSpec>(&m.variant)) {
    if (name == "s") a->s = std::stoi(value);
    else if (name == "g") a->g = value;
    else if (name == "N") a->n = as_size();
    else return false;
  } else if (auto* hs = std::get_if<HerbstSimonSpec>(&m.variant)) {
    if (name == "g") hs->g = value;
    else if (name == "N") hs->n = as_size();
    else return false;
  } else if (auto* z = std::get_if<ZeemanSpec>(&m.variant)) {
    if (name == "B") z->b = value;
    else if (name == "N") z->n = as_size();
    else return false;
  } else if (auto* hb = std::get_if<HeisenbergSpec>(&m.variant)) {
    if (name == "L") hb->l = as_size();
    else if (name == "h") hb->h = std::stod(value);
    else if (name == "seed") hb->seed = std::stoull(value);
    else return false;
  }
  return true;
}

}  // namespace relaxpt
