#include "leafflow/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace leafflow {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

FamilySpec parse_family(const json& j) {
  reject_unknown(j, {"preset", "eta", "custom"}, "family");
  if (j.contains("preset")) {
    const std::string name = j.at("preset").get<std::string>();
    if (name == "linear") return FamilySpec::linear();
    if (name == "quadratic") return FamilySpec::quadratic();
    if (name == "group")
      return FamilySpec::group(j.value("eta", 1.0));
    throw ConfigError("unknown preset '" + name + "'");
  }
  if (j.contains("custom")) {
    const json& c = j.at("custom");
    reject_unknown(c, {"U", "V", "P", "Q"}, "family.custom");
    auto field = [&](const char* key) {
      const std::string src = c.at(key).get<std::string>();
      try {
        return parse_expression(src);
      } catch (const ParseError& e) {
        throw ConfigError(std::string("family.custom.") + key + ": " +
                          e.what());
      }
    };
    return FamilySpec::custom(field("U"), field("V"), field("P"), field("Q"));
  }
  throw ConfigError("family needs either 'preset' or 'custom'");
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, {"family", "z_interval", "tolerances", "output_dir"},
                 "config");
  Config cfg;
  if (j.contains("family")) cfg.family = parse_family(j.at("family"));
  if (j.contains("z_interval")) {
    const auto& zi = j.at("z_interval");
    if (!zi.is_array() || zi.size() != 2)
      throw ConfigError("z_interval must be [lo, hi]");
    cfg.z_interval.lo = zi[0].get<double>();
    cfg.z_interval.hi = zi[1].get<double>();
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    reject_unknown(t, {"eps_f", "eps_axis", "eps_red", "casimir_tol", "rtol",
                       "atol"},
                   "tolerances");
    cfg.eps_f = t.value("eps_f", cfg.eps_f);
    cfg.eps_axis = t.value("eps_axis", cfg.eps_axis);
    cfg.eps_red = t.value("eps_red", cfg.eps_red);
    cfg.casimir_tol = t.value("casimir_tol", cfg.casimir_tol);
    cfg.rtol = t.value("rtol", cfg.rtol);
    cfg.atol = t.value("atol", cfg.atol);
  }
  if (j.contains("output_dir"))
    cfg.output_dir = j.at("output_dir").get<std::string>();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string config_to_json(const Config& cfg) {
  json j;
  if (cfg.family.preset) {
    switch (*cfg.family.preset) {
      case Preset::Linear: j["family"]["preset"] = "linear"; break;
      case Preset::Quadratic: j["family"]["preset"] = "quadratic"; break;
      case Preset::Group:
        j["family"]["preset"] = "group";
        j["family"]["eta"] = cfg.family.eta;
        break;
    }
  } else {
    j["family"]["custom"] = {{"U", cfg.family.u.to_string()},
                             {"V", cfg.family.v.to_string()},
                             {"P", cfg.family.p.to_string()},
                             {"Q", cfg.family.q.to_string()}};
  }
  j["z_interval"] = {cfg.z_interval.lo, cfg.z_interval.hi};
  j["tolerances"] = {{"eps_f", cfg.eps_f},       {"eps_axis", cfg.eps_axis},
                     {"eps_red", cfg.eps_red},   {"casimir_tol", cfg.casimir_tol},
                     {"rtol", cfg.rtol},         {"atol", cfg.atol}};
  j["output_dir"] = cfg.output_dir;
  return j.dump(2);
}

}  // namespace leafflow
