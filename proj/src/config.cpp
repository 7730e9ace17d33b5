#include "fermipulse/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace fermipulse {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(out)) {
    throw ConfigError("expected a finite number, got '" + v + "'");
  }
  return out;
}

std::size_t to_count(const std::string& v) {
  const double d = to_double(v);
  if (d < 0.0 || d != std::floor(d) || d > 1e9) {
    throw ConfigError("expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(d);
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off") {
    return false;
  }
  throw ConfigError("expected a boolean, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"E0_eV", [](RunConfig& c, const std::string& v) { c.source.E0_eV = to_double(v); }},
      {"dE_eV", [](RunConfig& c, const std::string& v) { c.source.dE_eV = to_double(v); }},
      {"k_offset_in_dk", [](RunConfig& c, const std::string& v) { c.source.k_offset_in_dk = to_double(v); }},
      {"p1", [](RunConfig& c, const std::string& v) { c.source.p1 = to_double(v); }},
      {"p2", [](RunConfig& c, const std::string& v) { c.source.p2 = to_double(v); }},
      {"detector_x_m", [](RunConfig& c, const std::string& v) { c.source.detector_x_m = to_double(v); }},
      {"detector_halfwidth_mode",
       [](RunConfig& c, const std::string& v) {
         if (v == "phase_cell") {
           c.source.halfwidth_mode = HalfWidthMode::PhaseCell;
         } else if (v == "explicit") {
           c.source.halfwidth_mode = HalfWidthMode::Explicit;
         } else {
           throw ConfigError("detector_halfwidth_mode must be phase_cell or explicit");
         }
       }},
      {"detector_halfwidth_x_m", [](RunConfig& c, const std::string& v) { c.source.detector_halfwidth_m[0] = to_double(v); }},
      {"detector_halfwidth_y_m", [](RunConfig& c, const std::string& v) { c.source.detector_halfwidth_m[1] = to_double(v); }},
      {"detector_halfwidth_z_m", [](RunConfig& c, const std::string& v) { c.source.detector_halfwidth_m[2] = to_double(v); }},
      {"t_min_s", [](RunConfig& c, const std::string& v) { c.t_min_s = to_double(v); }},
      {"t_max_s", [](RunConfig& c, const std::string& v) { c.t_max_s = to_double(v); }},
      {"n_t", [](RunConfig& c, const std::string& v) { c.n_t = to_count(v); }},
      {"x_min_m", [](RunConfig& c, const std::string& v) { c.x_min_m = to_double(v); }},
      {"x_max_m", [](RunConfig& c, const std::string& v) { c.x_max_m = to_double(v); }},
      {"n_x", [](RunConfig& c, const std::string& v) { c.n_x = to_count(v); }},
      {"fig5_t_s", [](RunConfig& c, const std::string& v) { c.fig5_t_s = to_double(v); }},
      {"fig6_x_max_m", [](RunConfig& c, const std::string& v) { c.fig6_x_max_m = to_double(v); }},
      {"fig6_n", [](RunConfig& c, const std::string& v) { c.fig6_n = to_count(v); }},
      {"transverse_factor", [](RunConfig& c, const std::string& v) { c.transverse_factor = to_double(v); }},
      {"oracle_rel_tol", [](RunConfig& c, const std::string& v) { c.oracle_rel_tol = to_double(v); }},
      {"oracle_k_halfwidth_in_dk", [](RunConfig& c, const std::string& v) { c.oracle_k_halfwidth_in_dk = to_double(v); }},
      {"oracle_n_k", [](RunConfig& c, const std::string& v) { c.oracle_n_k = to_count(v); }},
      {"oracle_n_x", [](RunConfig& c, const std::string& v) { c.oracle_n_x = to_count(v); }},
      {"interference_scale", [](RunConfig& c, const std::string& v) { c.interference_scale = to_double(v); }},
      {"output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
      {"emit_plot_script", [](RunConfig& c, const std::string& v) { c.emit_plot_script = to_bool(v); }},
  };
  return table;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig::RunConfig() : t_min_s(kNaN), t_max_s(kNaN), x_min_m(kNaN), x_max_m(kNaN), fig5_t_s(kNaN), fig6_x_max_m(kNaN) {}

oracle::QuadratureSpec RunConfig::quadrature_spec() const {
  oracle::QuadratureSpec spec;
  spec.k_halfwidth_in_dk = oracle_k_halfwidth_in_dk;
  spec.n_k = oracle_n_k;
  spec.n_x = oracle_n_x;
  spec.rel_tol = oracle_rel_tol;
  return spec;
}

void RunConfig::validate() const {
  if (n_t < 2 || n_x < 2 || fig6_n < 2) {
    throw ConfigError("grids need at least 2 points");
  }
  if (std::isnan(t_min_s) != std::isnan(t_max_s) || (!std::isnan(t_min_s) && !(t_min_s < t_max_s))) {
    throw ConfigError("t_min_s and t_max_s must be given together with t_min_s < t_max_s");
  }
  if (std::isnan(x_min_m) != std::isnan(x_max_m) || (!std::isnan(x_min_m) && !(x_min_m < x_max_m))) {
    throw ConfigError("x_min_m and x_max_m must be given together with x_min_m < x_max_m");
  }
  if (!(transverse_factor >= 1.0)) {
    throw ConfigError("transverse_factor must be >= 1");
  }
  if (!(source.E0_eV > 0.0) || !(source.dE_eV > 0.0)) {
    throw ConfigError("E0_eV and dE_eV must be > 0");
  }
  if (!(source.k_offset_in_dk != 0.0)) {
    throw ConfigError("k_offset_in_dk must be non-zero");
  }
  try {
    const auto ens = make_ensemble(source);
    make_detector(source, ens.one_el.dk());
    quadrature_spec().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    try {
      it->second(base, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
    }
  }
  base.validate();
  return base;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return parse_config(in);
}

std::string canonical_config(const RunConfig& c) {
  std::map<std::string, std::string> kv;
  kv["E0_eV"] = fmt(c.source.E0_eV);
  kv["dE_eV"] = fmt(c.source.dE_eV);
  kv["k_offset_in_dk"] = fmt(c.source.k_offset_in_dk);
  kv["p1"] = fmt(c.source.p1);
  kv["p2"] = fmt(c.source.p2);
  kv["detector_x_m"] = fmt(c.source.detector_x_m);
  kv["detector_halfwidth_mode"] = c.source.halfwidth_mode == HalfWidthMode::PhaseCell ? "phase_cell" : "explicit";
  kv["detector_halfwidth_x_m"] = fmt(c.source.detector_halfwidth_m[0]);
  kv["detector_halfwidth_y_m"] = fmt(c.source.detector_halfwidth_m[1]);
  kv["detector_halfwidth_z_m"] = fmt(c.source.detector_halfwidth_m[2]);
  kv["t_min_s"] = fmt(c.t_min_s);
  kv["t_max_s"] = fmt(c.t_max_s);
  kv["n_t"] = std::to_string(c.n_t);
  kv["x_min_m"] = fmt(c.x_min_m);
  kv["x_max_m"] = fmt(c.x_max_m);
  kv["n_x"] = std::to_string(c.n_x);
  kv["fig5_t_s"] = fmt(c.fig5_t_s);
  kv["fig6_x_max_m"] = fmt(c.fig6_x_max_m);
  kv["fig6_n"] = std::to_string(c.fig6_n);
  kv["transverse_factor"] = fmt(c.transverse_factor);
  kv["oracle_rel_tol"] = fmt(c.oracle_rel_tol);
  kv["oracle_k_halfwidth_in_dk"] = fmt(c.oracle_k_halfwidth_in_dk);
  kv["oracle_n_k"] = std::to_string(c.oracle_n_k);
  kv["oracle_n_x"] = std::to_string(c.oracle_n_x);
  kv["interference_scale"] = fmt(c.interference_scale);
  std::ostringstream out;
  for (const auto& [k, v] : kv) {
    out << k << '=' << v << '\n';
  }
  return out.str();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fermipulse
