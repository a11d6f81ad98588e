#include "dimtrack/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dimtrack {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("config: unknown key '" + key + "' in " + context);
    }
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: bad value for key '") + key + "'");
  }
}

ScenarioConfig parse_scenario_object(const json& s) {
  check_keys(s,
             {"name", "rows", "cols", "delta_x", "delta_y", "sigma", "blur", "T",
              "process_noise_q", "n_frames", "has_object", "birth_frame",
              "death_frame", "initial_state", "snr_db", "snr_variants",
              "maneuvers", "seed"},
             "scenario");
  ScenarioConfig cfg;
  cfg.name = get_or<std::string>(s, "name", "custom");
  cfg.sensor.rows = get_or<int>(s, "rows", cfg.sensor.rows);
  cfg.sensor.cols = get_or<int>(s, "cols", cfg.sensor.cols);
  cfg.sensor.delta_x = get_or<double>(s, "delta_x", cfg.sensor.delta_x);
  cfg.sensor.delta_y = get_or<double>(s, "delta_y", cfg.sensor.delta_y);
  cfg.sensor.sigma = get_or<double>(s, "sigma", cfg.sensor.sigma);
  cfg.sensor.blur = get_or<double>(s, "blur", cfg.sensor.blur);
  cfg.sensor.intensity = 0.0;  // derived from snr_db at run time
  cfg.T = get_or<double>(s, "T", cfg.T);
  cfg.process_noise_q = get_or<double>(s, "process_noise_q", cfg.process_noise_q);
  cfg.n_frames = get_or<int>(s, "n_frames", cfg.n_frames);
  cfg.has_object = get_or<bool>(s, "has_object", cfg.has_object);
  cfg.birth_frame = get_or<int>(s, "birth_frame", cfg.birth_frame);
  cfg.death_frame = get_or<int>(s, "death_frame", cfg.death_frame);
  if (s.contains("initial_state")) {
    const json& v = s.at("initial_state");
    if (!v.is_array() || v.size() != 4) {
      throw std::invalid_argument(
          "config: 'initial_state' must be an array [px, vx, py, vy]");
    }
    cfg.initial_state = {v[0].get<double>(), v[1].get<double>(),
                         v[2].get<double>(), v[3].get<double>()};
  }
  cfg.snr_db = get_or<double>(s, "snr_db", cfg.snr_db);
  if (s.contains("snr_variants")) {
    cfg.snr_variants = s.at("snr_variants").get<std::vector<double>>();
  }
  if (s.contains("maneuvers")) {
    for (const json& m : s.at("maneuvers")) {
      check_keys(m, {"frame", "vx", "vy"}, "maneuvers entry");
      ManeuverEntry e;
      e.frame = get_or<int>(m, "frame", 0);
      e.vx = get_or<double>(m, "vx", 0.0);
      e.vy = get_or<double>(m, "vy", 0.0);
      cfg.maneuver_schedule.push_back(e);
    }
  }
  cfg.seed = get_or<std::uint64_t>(s, "seed", cfg.seed);
  return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
  json s;
  s["name"] = cfg.name;
  s["rows"] = cfg.sensor.rows;
  s["cols"] = cfg.sensor.cols;
  s["delta_x"] = cfg.sensor.delta_x;
  s["delta_y"] = cfg.sensor.delta_y;
  s["sigma"] = cfg.sensor.sigma;
  s["blur"] = cfg.sensor.blur;
  s["T"] = cfg.T;
  s["process_noise_q"] = cfg.process_noise_q;
  s["n_frames"] = cfg.n_frames;
  s["has_object"] = cfg.has_object;
  s["birth_frame"] = cfg.birth_frame;
  s["death_frame"] = cfg.death_frame;
  s["initial_state"] = {cfg.initial_state.px, cfg.initial_state.vx,
                        cfg.initial_state.py, cfg.initial_state.vy};
  s["snr_db"] = cfg.snr_db;
  s["snr_variants"] = cfg.snr_variants;
  json maneuvers = json::array();
  for (const ManeuverEntry& m : cfg.maneuver_schedule) {
    maneuvers.push_back({{"frame", m.frame}, {"vx", m.vx}, {"vy", m.vy}});
  }
  s["maneuvers"] = maneuvers;
  s["seed"] = cfg.seed;
  return s;
}

MethodConfig parse_method_object(const json& m) {
  if (!m.contains("name")) {
    throw std::invalid_argument("config: method entry missing 'name'");
  }
  MethodConfig cfg;
  cfg.method = parse_method(m.at("name").get<std::string>());
  switch (cfg.method) {
    case Method::Cdt:
      check_keys(m,
                 {"name", "p_fa", "gate_radius", "pd_design", "n_particles",
                  "max_coast_frames"},
                 "method cdt");
      cfg.cdt_p_fa = get_or<double>(m, "p_fa", cfg.cdt_p_fa);
      break;
    case Method::Sdt:
      check_keys(m,
                 {"name", "alpha", "beta", "p_fa_trunc", "s_m", "radius",
                  "seed_exceedance", "gate_radius", "pd_design", "n_particles",
                  "max_coast_frames"},
                 "method sdt");
      cfg.sdt_alpha = get_or<double>(m, "alpha", cfg.sdt_alpha);
      cfg.sdt_beta = get_or<double>(m, "beta", cfg.sdt_beta);
      cfg.sdt_p_fa_trunc = get_or<double>(m, "p_fa_trunc", cfg.sdt_p_fa_trunc);
      cfg.sdt_s_m = get_or<int>(m, "s_m", cfg.sdt_s_m);
      cfg.sdt_radius = get_or<int>(m, "radius", cfg.sdt_radius);
      cfg.sdt_seed_exceedance =
          get_or<double>(m, "seed_exceedance", cfg.sdt_seed_exceedance);
      break;
    default:
      check_keys(m,
                 {"name", "p_birth", "p_death", "p_init", "n_particles",
                  "declare_threshold", "birth_exceedance", "birth_velocity_std"},
                 "method " + method_name(cfg.method));
      cfg.existence.p_birth = get_or<double>(m, "p_birth", cfg.existence.p_birth);
      cfg.existence.p_death = get_or<double>(m, "p_death", cfg.existence.p_death);
      cfg.existence.p_init = get_or<double>(m, "p_init", cfg.existence.p_init);
      cfg.tbd_n_particles = get_or<int>(m, "n_particles", cfg.tbd_n_particles);
      cfg.tbd_declare_threshold =
          get_or<double>(m, "declare_threshold", cfg.tbd_declare_threshold);
      cfg.tbd_birth_exceedance =
          get_or<double>(m, "birth_exceedance", cfg.tbd_birth_exceedance);
      cfg.tbd_birth_velocity_std =
          get_or<double>(m, "birth_velocity_std", cfg.tbd_birth_velocity_std);
      return cfg;
  }
  cfg.pda_gate_radius = get_or<double>(m, "gate_radius", cfg.pda_gate_radius);
  cfg.pda_pd_design = get_or<double>(m, "pd_design", cfg.pda_pd_design);
  cfg.pda_n_particles = get_or<int>(m, "n_particles", cfg.pda_n_particles);
  cfg.pda_max_coast_frames =
      get_or<int>(m, "max_coast_frames", cfg.pda_max_coast_frames);
  return cfg;
}

json method_to_json(const MethodConfig& cfg) {
  json m;
  m["name"] = method_name(cfg.method);
  switch (cfg.method) {
    case Method::Cdt:
      m["p_fa"] = cfg.cdt_p_fa;
      break;
    case Method::Sdt:
      m["alpha"] = cfg.sdt_alpha;
      m["beta"] = cfg.sdt_beta;
      m["p_fa_trunc"] = cfg.sdt_p_fa_trunc;
      m["s_m"] = cfg.sdt_s_m;
      m["radius"] = cfg.sdt_radius;
      m["seed_exceedance"] = cfg.sdt_seed_exceedance;
      break;
    default:
      m["p_birth"] = cfg.existence.p_birth;
      m["p_death"] = cfg.existence.p_death;
      m["p_init"] = cfg.existence.p_init;
      m["n_particles"] = cfg.tbd_n_particles;
      m["declare_threshold"] = cfg.tbd_declare_threshold;
      m["birth_exceedance"] = cfg.tbd_birth_exceedance;
      m["birth_velocity_std"] = cfg.tbd_birth_velocity_std;
      return m;
  }
  m["gate_radius"] = cfg.pda_gate_radius;
  m["pd_design"] = cfg.pda_pd_design;
  m["n_particles"] = cfg.pda_n_particles;
  m["max_coast_frames"] = cfg.pda_max_coast_frames;
  return m;
}

}  // namespace

void CampaignConfig::validate() const {
  if (schema_version != 1) {
    throw std::invalid_argument("config: unsupported schema_version");
  }
  scenario.validate();
  if (methods.empty()) {
    throw std::invalid_argument("config: 'methods' must list at least one method");
  }
  if (n_runs < 1) {
    throw std::invalid_argument("config: 'n_runs' must be >= 1");
  }
  if (output_dir.empty()) {
    throw std::invalid_argument("config: 'output_dir' must be non-empty");
  }
}

CampaignConfig parse_campaign_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(root,
             {"schema_version", "scenario", "methods", "n_runs", "master_seed",
              "output_dir"},
             "top level");
  if (!root.contains("schema_version")) {
    throw std::invalid_argument("config: missing 'schema_version'");
  }
  CampaignConfig cfg;
  cfg.schema_version = get_or<int>(root, "schema_version", 0);
  if (!root.contains("scenario")) {
    throw std::invalid_argument("config: missing 'scenario'");
  }
  const json& s = root.at("scenario");
  if (s.is_string()) {
    cfg.scenario_preset = s.get<std::string>();
    cfg.scenario = load_scenario(cfg.scenario_preset);
  } else if (s.is_object()) {
    cfg.scenario = parse_scenario_object(s);
  } else {
    throw std::invalid_argument("config: 'scenario' must be a name or an object");
  }
  if (!root.contains("methods")) {
    throw std::invalid_argument("config: missing 'methods'");
  }
  for (const json& m : root.at("methods")) {
    cfg.methods.push_back(parse_method_object(m));
  }
  cfg.n_runs = get_or<int>(root, "n_runs", cfg.n_runs);
  cfg.master_seed = get_or<std::uint64_t>(root, "master_seed", cfg.master_seed);
  cfg.output_dir = get_or<std::string>(root, "output_dir", cfg.output_dir);
  cfg.validate();
  return cfg;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_campaign_config(buf.str());
}

std::string serialize_campaign_config(const CampaignConfig& cfg) {
  json root;
  root["schema_version"] = cfg.schema_version;
  if (!cfg.scenario_preset.empty()) {
    root["scenario"] = cfg.scenario_preset;
  } else {
    root["scenario"] = scenario_to_json(cfg.scenario);
  }
  json methods = json::array();
  for (const MethodConfig& m : cfg.methods) methods.push_back(method_to_json(m));
  root["methods"] = methods;
  root["n_runs"] = cfg.n_runs;
  root["master_seed"] = cfg.master_seed;
  root["output_dir"] = cfg.output_dir;
  return root.dump(2) + "\n";
}

}  // namespace dimtrack
