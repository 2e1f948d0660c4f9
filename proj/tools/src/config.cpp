#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "thopf/error.hpp"

namespace thopf::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorKind::invalid_argument, "config: " + msg);
}

void only_keys(const json& obj, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) bad("unknown key '" + where + "." + key + "'");
  }
}

double number(const json& obj, const std::string& where, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) bad(where + "." + key + " must be a number");
  return v.get<double>();
}

long integer(const json& obj, const std::string& where, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad(where + "." + key + " must be an integer");
  return v.get<long>();
}

bool boolean(const json& obj, const std::string& where, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) bad(where + "." + key + " must be a boolean");
  return v.get<bool>();
}

std::array<double, 2> pair_of(const json& obj, const std::string& where,
                              const char* key) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    bad(where + "." + key + " must be a [lo, hi] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<double> samples(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(where + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

} // namespace

RunConfig parse_config(const json& doc) {
  only_keys(doc, "config",
            {"schema_version", "model", "sim", "sweep", "output", "analysis",
             "classify"});
  if (doc.contains("schema_version") && doc["schema_version"] != "v1") {
    bad("schema_version must be \"v1\"");
  }
  RunConfig cfg;

  if (!doc.contains("model")) bad("missing section 'model'");
  const json& m = doc["model"];
  only_keys(m, "model", {"d1", "d2", "a", "b", "l", "r", "tau"});
  for (const char* key : {"d1", "d2", "a", "b", "l", "r", "tau"}) {
    if (!m.contains(key)) bad(std::string("missing model.") + key);
  }
  cfg.model = {number(m, "model", "d1"), number(m, "model", "d2"),
               number(m, "model", "a"),  number(m, "model", "b"),
               number(m, "model", "l"),  number(m, "model", "r"),
               number(m, "model", "tau")};
  cfg.model.validate();

  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    only_keys(s, "sim", {"nx", "dt", "t_end", "stride", "kinetics", "init"});
    if (s.contains("nx")) cfg.sim.nx = static_cast<int>(integer(s, "sim", "nx"));
    if (s.contains("dt")) cfg.sim.dt = number(s, "sim", "dt");
    if (s.contains("t_end")) cfg.sim.t_end = number(s, "sim", "t_end");
    if (s.contains("stride")) cfg.sim.stride = integer(s, "sim", "stride");
    if (s.contains("kinetics")) cfg.sim.kinetics = boolean(s, "sim", "kinetics");
    if (cfg.sim.nx < 1) bad("sim.nx must be >= 1");
    if (!(cfg.sim.t_end > 0.0)) bad("sim.t_end must be positive");
    if (cfg.sim.dt < 0.0 || cfg.sim.stride < 0) bad("sim.dt and sim.stride must be >= 0");
    if (s.contains("init")) {
      const json& i = s["init"];
      only_keys(i, "sim.init", {"kind", "amplitude", "wavenumber", "sign", "u", "v"});
      const std::string kind = i.value("kind", std::string("offset_sine"));
      if (kind == "offset_sine") {
        cfg.init.kind = InitialCondition::Kind::offset_sine;
      } else if (kind == "custom") {
        cfg.init.kind = InitialCondition::Kind::custom;
        if (!i.contains("u") || !i.contains("v")) bad("custom init needs u and v");
        cfg.init.u = samples(i["u"], "sim.init.u");
        cfg.init.v = samples(i["v"], "sim.init.v");
      } else {
        bad("sim.init.kind must be offset_sine or custom");
      }
      if (i.contains("amplitude")) cfg.init.amplitude = number(i, "sim.init", "amplitude");
      if (i.contains("wavenumber")) cfg.init.wavenumber = number(i, "sim.init", "wavenumber");
      if (i.contains("sign")) {
        cfg.init.sign = number(i, "sim.init", "sign");
        if (cfg.init.sign != 1.0 && cfg.init.sign != -1.0) bad("sim.init.sign must be +1 or -1");
      }
    }
  }

  if (doc.contains("sweep")) {
    const json& w = doc["sweep"];
    only_keys(w, "sweep", {"r_range", "tau_range", "grid", "simulate", "curve_samples"});
    for (const char* key : {"r_range", "tau_range", "grid"}) {
      if (!w.contains(key)) bad(std::string("missing sweep.") + key);
    }
    SweepConfig sw;
    sw.r_range = pair_of(w, "sweep", "r_range");
    sw.tau_range = pair_of(w, "sweep", "tau_range");
    const json& g = w["grid"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
        !g[1].is_number_integer()) {
      bad("sweep.grid must be [n_r, n_tau]");
    }
    sw.grid = {g[0].get<int>(), g[1].get<int>()};
    if (sw.grid[0] < 1 || sw.grid[1] < 1) bad("sweep.grid is empty");
    if (!(sw.r_range[0] > 0.0) || sw.r_range[1] < sw.r_range[0]) {
      bad("sweep.r_range must satisfy 0 < lo <= hi");
    }
    if (sw.tau_range[0] < 0.0 || sw.tau_range[1] < sw.tau_range[0]) {
      bad("sweep.tau_range must satisfy 0 <= lo <= hi");
    }
    if (w.contains("simulate")) sw.simulate = boolean(w, "sweep", "simulate");
    if (w.contains("curve_samples")) {
      sw.curve_samples = static_cast<int>(integer(w, "sweep", "curve_samples"));
      if (sw.curve_samples < 2) bad("sweep.curve_samples must be >= 2");
    }
    cfg.sweep = sw;
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    only_keys(o, "output", {"dir", "formats"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) bad("output.dir must be a string");
      cfg.output.dir = o["dir"].get<std::string>();
    }
    if (o.contains("formats")) {
      cfg.output.formats.clear();
      for (const auto& f : o["formats"]) {
        if (f != "json" && f != "csv") bad("output.formats entries are json or csv");
        cfg.output.formats.push_back(f.get<std::string>());
      }
    }
  }

  if (doc.contains("analysis")) {
    const json& a = doc["analysis"];
    only_keys(a, "analysis", {"k_max", "mixed_rel"});
    if (a.contains("k_max")) cfg.k_max = static_cast<int>(integer(a, "analysis", "k_max"));
    if (a.contains("mixed_rel")) cfg.mixed_rel = number(a, "analysis", "mixed_rel");
    if (cfg.k_max < 0) bad("analysis.k_max must be >= 0");
  }

  if (doc.contains("classify")) {
    const json& c = doc["classify"];
    only_keys(c, "classify", {"alpha1", "alpha2", "eps_mode"});
    if (c.contains("alpha1")) cfg.alpha1 = number(c, "classify", "alpha1");
    if (c.contains("alpha2")) cfg.alpha2 = number(c, "classify", "alpha2");
    if (c.contains("eps_mode")) {
      const std::string mode = c["eps_mode"].is_string() ? c["eps_mode"].get<std::string>() : "";
      if (mode == "tracked") {
        cfg.tracked_eps = true;
      } else if (mode == "linear") {
        cfg.tracked_eps = false;
      } else {
        bad("classify.eps_mode must be tracked or linear");
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const ModelParams& p) {
  return {{"d1", p.d1}, {"d2", p.d2}, {"a", p.a},    {"b", p.b},
          {"l", p.l},   {"r", p.r},   {"tau", p.tau}};
}

json to_json(const SimConfig& cfg, const InitialCondition& init) {
  json i = {{"kind", init.kind == InitialCondition::Kind::custom ? "custom" : "offset_sine"},
            {"amplitude", init.amplitude},
            {"wavenumber", init.wavenumber},
            {"sign", init.sign}};
  return {{"nx", cfg.nx},         {"dt", cfg.dt},
          {"t_end", cfg.t_end},   {"stride", cfg.stride},
          {"kinetics", cfg.kinetics}, {"init", i}};
}

} // namespace thopf::cli
