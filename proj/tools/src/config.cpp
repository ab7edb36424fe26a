#include <set>
#include <string>

#include "json.hpp"
#include "nlsplane/errors.hpp"
#include "nlsplane_cli/cli.hpp"

namespace nlsplane::cli {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  return doc;
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& item : obj.items())
    if (!known.contains(item.key()))
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

template <class T>
void read(const json& obj, const char* key, T& target) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    target = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

// Integers must be JSON integers; 2.5 for K is a typo, not a request.
void read_int(const json& obj, const char* key, int& target) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_integer())
    throw ConfigError(std::string("field '") + key + "' must be an integer");
  read(obj, key, target);
}

void read_count(const json& obj, const char* key, std::uint64_t& target) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_unsigned())
    throw ConfigError(std::string("field '") + key +
                      "' must be a nonnegative integer");
  read(obj, key, target);
}

ScreenConfig parse_screen(const json& obj) {
  if (!obj.is_object()) throw ConfigError("'screen' must be an object");
  reject_unknown(obj, {"r", "cutoff", "alpha", "gamma_floor"}, "'screen'");
  ScreenConfig s;
  read_int(obj, "r", s.r);
  read_int(obj, "cutoff", s.cutoff);
  read(obj, "alpha", s.alpha);
  read(obj, "gamma_floor", s.gamma_floor);
  if (s.r < 2) throw ConfigError("screen.r must be >= 2");
  if (s.cutoff < 1) throw ConfigError("screen.cutoff must be >= 1");
  if (!(s.alpha >= 0.0)) throw ConfigError("screen.alpha must be >= 0");
  if (!(s.gamma_floor > 0.0)) throw ConfigError("screen.gamma_floor must be > 0");
  return s;
}

}  // namespace

SimulateConfig parse_simulate_config(std::string_view json_text) {
  const json doc = parse_document(json_text);
  reject_unknown(doc,
                 {"d", "K", "s", "rho", "lambda", "m", "eps", "N_exponent", "dt",
                  "seed", "seeds", "samples", "t_end", "screen"},
                 "simulate config");
  SimulateConfig cfg;
  ExperimentConfig& e = cfg.experiment;
  read_int(doc, "d", e.d);
  read_int(doc, "K", e.K);
  read(doc, "s", e.s);
  read(doc, "rho", e.rho);
  read(doc, "lambda", e.lambda);
  read(doc, "eps", e.eps);
  read(doc, "N_exponent", e.N_exponent);
  read(doc, "dt", e.dt);
  read_count(doc, "seed", e.seed);
  std::uint64_t samples = e.samples;
  read_count(doc, "samples", samples);
  e.samples = static_cast<std::size_t>(samples);
  read(doc, "t_end", e.t_end);

  if (auto it = doc.find("m"); it != doc.end()) {
    if (!it->is_array() || it->size() != static_cast<std::size_t>(e.d))
      throw ConfigError("field 'm' must be an integer array of length d");
    e.m = kZeroMode;
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_number_integer())
        throw ConfigError("field 'm' must be an integer array of length d");
      e.m[i] = (*it)[i].get<int>();
    }
  }
  if (auto it = doc.find("seeds"); it != doc.end()) {
    if (!it->is_array() || it->empty())
      throw ConfigError("field 'seeds' must be a non-empty array");
    for (const auto& v : *it) {
      if (!v.is_number_unsigned())
        throw ConfigError("field 'seeds' must hold nonnegative integers");
      cfg.seeds.push_back(v.get<std::uint64_t>());
    }
  }
  if (auto it = doc.find("screen"); it != doc.end()) cfg.screen = parse_screen(*it);

  try {
    e.validate();
  } catch (const InvalidArgument& ex) {
    throw ConfigError(ex.what());
  }
  return cfg;
}

ScanConfig parse_scan_config(std::string_view json_text) {
  const json doc = parse_document(json_text);
  reject_unknown(doc, {"rho", "lambda", "r", "cutoff", "alpha", "gamma_floor"},
                 "scan config");
  ScanConfig cfg;
  if (auto it = doc.find("rho"); it != doc.end()) {
    if (!it->is_array()) throw ConfigError("field 'rho' must be an array");
    for (const auto& v : *it) {
      if (!v.is_number()) throw ConfigError("field 'rho' must hold numbers");
      cfg.rho.push_back(v.get<double>());
    }
  }
  read(doc, "lambda", cfg.lambda);
  read_int(doc, "r", cfg.r);
  read_int(doc, "cutoff", cfg.cutoff);
  read(doc, "alpha", cfg.alpha);
  read(doc, "gamma_floor", cfg.gamma_floor);

  if (cfg.rho.empty()) throw ConfigError("rho list is empty");
  for (double r : cfg.rho)
    if (!(r > 0.0)) throw ConfigError("every rho must be > 0");
  if (cfg.r < 2) throw ConfigError("r must be >= 2");
  if (cfg.cutoff < 1) throw ConfigError("cutoff must be >= 1 (no shells otherwise)");
  if (!(cfg.alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  if (!(cfg.gamma_floor > 0.0)) throw ConfigError("gamma_floor must be > 0");
  return cfg;
}

}  // namespace nlsplane::cli
