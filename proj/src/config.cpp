#include "dirac/config.hpp"

#include <fstream>

namespace dirac {

using nlohmann::json;

namespace {

Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(where + ": expected a number or [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<FourierMode> parse_modes(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of {k, c}");
  std::vector<FourierMode> modes;
  for (size_t n = 0; n < v.size(); ++n) {
    const json& m = v[n];
    const std::string at = where + "[" + std::to_string(n) + "]";
    if (!m.is_object() || !m.contains("k") || !m["k"].is_number_integer() || !m.contains("c"))
      throw ConfigError(at + ": expected {\"k\": int, \"c\": [re, im]}");
    modes.push_back({m["k"].get<int>(), parse_complex(m["c"], at + ".c")});
  }
  return modes;
}

std::vector<Complex> parse_samples(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of samples");
  std::vector<Complex> out;
  for (size_t n = 0; n < v.size(); ++n) out.push_back(parse_complex(v[n], where + "[" + std::to_string(n) + "]"));
  return out;
}

std::pair<double, double> parse_range(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(where + ": expected [min, max]");
  return {v[0].get<double>(), v[1].get<double>()};
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return obj[key].get<double>();
}

bool flag(const json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
  return obj[key].get<bool>();
}

}  // namespace

TraceOptions RunConfig::trace_options() const {
  TraceOptions t;
  t.trace_tol = tol.trace_tol;
  t.newton_tol = tol.newton_tol;
  return t;
}

PeriodicPotential parse_potential(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
    throw ConfigError("potential: expected an object with a \"kind\" string");
  if (!spec.contains("p") || !spec.contains("q")) throw ConfigError("potential: both p and q are required");
  const std::string kind = spec["kind"].get<std::string>();
  try {
    if (kind == "constant")
      return PeriodicPotential::constant(parse_complex(spec["p"], "potential.p"),
                                         parse_complex(spec["q"], "potential.q"));
    if (kind == "fourier")
      return PeriodicPotential::fourier(parse_modes(spec["p"], "potential.p"), parse_modes(spec["q"], "potential.q"));
    if (kind == "sampled")
      return PeriodicPotential::sampled(parse_samples(spec["p"], "potential.p"),
                                        parse_samples(spec["q"], "potential.q"));
  } catch (const EmptyRepresentation& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
  throw ConfigError("potential.kind: unknown kind \"" + kind + "\"");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer() || doc["schema"].get<int>() != kSchemaVersion)
    throw ConfigError("schema: expected 1");

  RunConfig cfg;
  if (!doc.contains("potential")) throw ConfigError("potential: missing");
  cfg.potential = parse_potential(doc["potential"]);
  cfg.potential_json = nlohmann::ordered_json::parse(doc["potential"].dump());

  if (!doc.contains("h")) throw ConfigError("h: missing");
  const json& h = doc["h"];
  if (h.is_number()) {
    cfg.h_list.push_back(h.get<double>());
  } else if (h.is_array() && !h.empty()) {
    for (const auto& v : h) {
      if (!v.is_number()) throw ConfigError("h: expected numbers");
      cfg.h_list.push_back(v.get<double>());
    }
  } else {
    throw ConfigError("h: expected a positive number or a nonempty list");
  }
  for (double v : cfg.h_list)
    if (!(v > 0.0)) throw ConfigError("h: values must be positive");

  if (doc.contains("window")) {
    const json& w = doc["window"];
    if (!w.is_object() || !w.contains("re") || !w.contains("im"))
      throw ConfigError("window: expected {\"re\": [a, b], \"im\": [c, d]}");
    std::tie(cfg.window.re_min, cfg.window.re_max) = parse_range(w["re"], "window.re");
    std::tie(cfg.window.im_min, cfg.window.im_max) = parse_range(w["im"], "window.im");
  }
  if (cfg.window.degenerate()) throw ConfigError("window: empty rectangle");

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer())
      throw ConfigError("grid: expected [nx, ny]");
    cfg.nx = g[0].get<int>();
    cfg.ny = g[1].get<int>();
  }
  if (cfg.nx < 8 || cfg.ny < 8) throw ConfigError("grid: must be at least 8 x 8");

  cfg.delta = number(doc, "delta", cfg.delta, "config");
  if (!(cfg.delta > 0.0)) throw ConfigError("delta: must be positive");

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    cfg.tol.trace_tol = number(t, "trace_tol", cfg.tol.trace_tol, "tolerances");
    cfg.tol.newton_tol = number(t, "newton_tol", cfg.tol.newton_tol, "tolerances");
    cfg.tol.richardson_tol = number(t, "richardson_tol", cfg.tol.richardson_tol, "tolerances");
    cfg.tol.symmetry_tol = number(t, "symmetry_tol", cfg.tol.symmetry_tol, "tolerances");
  }
  cfg.integrator.richardson_tol = cfg.tol.richardson_tol;
  if (doc.contains("integrator")) {
    const json& in = doc["integrator"];
    cfg.integrator.samples_per_wavelength =
        number(in, "samples_per_wavelength", cfg.integrator.samples_per_wavelength, "integrator");
    cfg.integrator.min_steps = static_cast<std::int64_t>(
        number(in, "min_steps", static_cast<double>(cfg.integrator.min_steps), "integrator"));
    cfg.integrator.max_steps = static_cast<std::int64_t>(
        number(in, "max_steps", static_cast<double>(cfg.integrator.max_steps), "integrator"));
  }
  try {
    cfg.integrator.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (doc.contains("outputs")) {
    const json& o = doc["outputs"];
    cfg.outputs.csv = flag(o, "csv", cfg.outputs.csv, "outputs");
    cfg.outputs.json = flag(o, "json", cfg.outputs.json, "outputs");
    cfg.outputs.svg = flag(o, "svg", cfg.outputs.svg, "outputs");
  }
  if (doc.contains("out_dir")) {
    if (!doc["out_dir"].is_string()) throw ConfigError("out_dir: expected a string");
    cfg.out_dir = doc["out_dir"].get<std::string>();
  }
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_unsigned()) throw ConfigError("threads: expected a nonnegative integer");
    cfg.threads = doc["threads"].get<unsigned>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace dirac
