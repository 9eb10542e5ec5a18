#include "dirsim/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>

#include "dirsim/steering.hpp"

namespace dirsim {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown field \"" + it.key() + "\" in " + where);
}

double get_number(const json& obj, const std::string& where,
                  const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("field \"" + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

Regime regime_from_string(const std::string& s, const std::string& where) {
  if (s == "general") return Regime::general;
  if (s == "pure_los") return Regime::pure_los;
  if (s == "pure_nlos") return Regime::pure_nlos;
  throw ConfigError("invalid regime \"" + s + "\" in " + where);
}

ArraySpec parse_array(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw ConfigError(where + " must be a [rows, cols] integer pair");
  ArraySpec a{v[0].get<int>(), v[1].get<int>()};
  if (a.rows < 1 || a.cols < 1)
    throw ConfigError(where + " dimensions must be at least 1");
  return a;
}

Vec3 parse_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3)
    throw ConfigError(where + " must be an [x, y, z] triple");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

struct LinkSlot {
  const char* name;
  LinkParams* params;
  std::optional<Vec3>* from;
  std::optional<Vec3>* to;
  double default_exponent;
  bool explicit_alpha = false;
  bool explicit_angles = false;
};

std::vector<LinkSlot> link_slots(ScenarioConfig& cfg) {
  return {
      {"bs_irs1", &cfg.bs_irs1, &cfg.pos_bs, &cfg.pos_irs1, 2.3},
      {"bs_irs2", &cfg.bs_irs2, &cfg.pos_bs, &cfg.pos_irs2, 2.3},
      {"inter_irs", &cfg.inter_irs, &cfg.pos_irs1, &cfg.pos_irs2, 2.2},
      {"bs_user", &cfg.bs_user, &cfg.pos_bs, &cfg.pos_user, 3.7},
      {"irs1_user", &cfg.irs1_user, &cfg.pos_irs1, &cfg.pos_user, 2.3},
      {"irs2_user", &cfg.irs2_user, &cfg.pos_irs2, &cfg.pos_user, 2.3},
  };
}

void parse_link(const json& obj, const std::string& where, LinkSlot& slot) {
  require_keys(obj, where,
               {"k_db", "regime", "alpha", "alpha_db", "distance_m", "aod_h",
                "aod_v", "aoa_h", "aoa_v", "path_loss_exponent"});
  LinkParams& link = *slot.params;
  if (obj.contains("k_db")) {
    link.fading.regime = Regime::general;
    link.fading.rician_k = db_to_linear(get_number(obj, where, "k_db"));
  }
  if (obj.contains("regime"))
    link.fading.regime =
        regime_from_string(obj.at("regime").get<std::string>(), where);
  if (obj.contains("alpha") && obj.contains("alpha_db"))
    throw ConfigError(where + ": give alpha or alpha_db, not both");
  if (obj.contains("alpha")) {
    link.fading.alpha = get_number(obj, where, "alpha");
    slot.explicit_alpha = true;
  }
  if (obj.contains("alpha_db")) {
    link.fading.alpha = db_to_linear(get_number(obj, where, "alpha_db"));
    slot.explicit_alpha = true;
  }
  if (obj.contains("distance_m")) {
    link.distance_m = get_number(obj, where, "distance_m");
    if (!(*link.distance_m > 0.0))
      throw ConfigError(where + ": distance_m must be positive");
  }
  if (obj.contains("path_loss_exponent"))
    link.path_loss_exponent = get_number(obj, where, "path_loss_exponent");
  const bool any_angle = obj.contains("aod_h") || obj.contains("aod_v") ||
                         obj.contains("aoa_h") || obj.contains("aoa_v");
  if (any_angle) {
    slot.explicit_angles = true;
    if (obj.contains("aod_h")) link.angles.aod_h = wrap_phase(get_number(obj, where, "aod_h"));
    if (obj.contains("aod_v")) link.angles.aod_v = wrap_phase(get_number(obj, where, "aod_v"));
    if (obj.contains("aoa_h")) link.angles.aoa_h = wrap_phase(get_number(obj, where, "aoa_h"));
    if (obj.contains("aoa_v")) link.angles.aoa_v = wrap_phase(get_number(obj, where, "aoa_v"));
  }
}

SweepSpec parse_sweep(const json& obj) try {
  require_keys(obj, "sweep",
               {"variable", "values", "systems", "designs", "metrics",
                "mc_samples", "random_draws"});
  SweepSpec spec;
  spec.variable =
      sweep_variable_from_string(obj.at("variable").get<std::string>());
  for (const auto& v : obj.at("values")) spec.values.push_back(v.get<double>());
  if (spec.values.empty()) throw ConfigError("sweep.values must be nonempty");
  if (obj.contains("systems")) {
    spec.systems.clear();
    for (const auto& s : obj.at("systems"))
      spec.systems.push_back(system_kind_from_string(s.get<std::string>()));
  }
  if (obj.contains("designs")) {
    spec.designs.clear();
    for (const auto& s : obj.at("designs"))
      spec.designs.push_back(design_from_string(s.get<std::string>()));
  }
  if (obj.contains("metrics")) {
    spec.metrics.clear();
    for (const auto& s : obj.at("metrics"))
      spec.metrics.push_back(metric_from_string(s.get<std::string>()));
  }
  if (obj.contains("mc_samples"))
    spec.mc_samples = obj.at("mc_samples").get<long long>();
  if (obj.contains("random_draws"))
    spec.random_draws = obj.at("random_draws").get<int>();
  return spec;
} catch (const std::invalid_argument& e) {
  throw ConfigError(std::string("sweep: ") + e.what());
}

}  // namespace

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.d_over_lambda = 0.5;
  cfg.bs = {2, 2};
  cfg.irs1 = {10, 10};
  cfg.irs2 = {10, 10};
  cfg.tx_power_w = dbm_to_watts(5.0);
  cfg.noise_power_w = dbm_to_watts(-104.0);
  cfg.rng_seed = 1;
  cfg.pos_bs = Vec3{0, -25, 1.2};
  cfg.pos_user = Vec3{0, 25, 1};
  cfg.pos_irs1 = Vec3{-5, -20, 5};
  cfg.pos_irs2 = Vec3{-5, 20, 5};

  auto set_angles = [](LinkParams& l, double aod, double aoa) {
    l.angles.aod_h = l.angles.aod_v = aod;
    l.angles.aoa_h = l.angles.aoa_v = aoa;
  };
  set_angles(cfg.bs_irs1, kPi / 6, kPi / 6);
  set_angles(cfg.bs_irs2, kPi / 4, kPi / 5);
  set_angles(cfg.inter_irs, kPi / 5, kPi / 4);
  set_angles(cfg.bs_user, kPi / 3, 0.0);
  set_angles(cfg.irs1_user, kPi / 8, 0.0);
  set_angles(cfg.irs2_user, kPi / 9, 0.0);

  const double k_lin = db_to_linear(10.0);
  auto slots = link_slots(cfg);
  for (auto& slot : slots) {
    slot.params->fading.rician_k = k_lin;
    slot.params->path_loss_exponent = slot.default_exponent;
    const double d = distance(**slot.from, **slot.to);
    slot.params->distance_m = d;
    slot.params->fading.alpha = path_loss(d, slot.default_exponent);
  }
  return cfg;
}

LoadedConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("top-level JSON must be an object");
  require_keys(root, "top level",
               {"d_over_lambda", "arrays", "P_S_dBm", "sigma2_dBm", "K_dB",
                "regime", "rng_seed", "positions", "links", "sweep"});

  LoadedConfig out;
  ScenarioConfig& cfg = out.scenario;
  cfg = default_scenario();

  if (root.contains("d_over_lambda")) {
    cfg.d_over_lambda = get_number(root, "top level", "d_over_lambda");
    if (!(cfg.d_over_lambda > 0.0) || cfg.d_over_lambda > 0.5)
      throw ConfigError("d_over_lambda must lie in (0, 0.5]");
  }
  if (root.contains("P_S_dBm"))
    cfg.tx_power_w = dbm_to_watts(get_number(root, "top level", "P_S_dBm"));
  if (root.contains("sigma2_dBm"))
    cfg.noise_power_w =
        dbm_to_watts(get_number(root, "top level", "sigma2_dBm"));
  if (root.contains("rng_seed"))
    cfg.rng_seed = root.at("rng_seed").get<std::uint64_t>();

  if (root.contains("arrays")) {
    const json& arrays = root.at("arrays");
    require_keys(arrays, "arrays", {"bs", "irs1", "irs2", "irs0"});
    if (arrays.contains("bs")) cfg.bs = parse_array(arrays.at("bs"), "arrays.bs");
    if (arrays.contains("irs1"))
      cfg.irs1 = parse_array(arrays.at("irs1"), "arrays.irs1");
    if (arrays.contains("irs2"))
      cfg.irs2 = parse_array(arrays.at("irs2"), "arrays.irs2");
    if (arrays.contains("irs0"))
      cfg.irs0 = parse_array(arrays.at("irs0"), "arrays.irs0");
  }

  if (root.contains("positions")) {
    const json& pos = root.at("positions");
    require_keys(pos, "positions", {"bs", "user", "irs1", "irs2", "irs0"});
    if (pos.contains("bs")) cfg.pos_bs = parse_vec3(pos.at("bs"), "positions.bs");
    if (pos.contains("user"))
      cfg.pos_user = parse_vec3(pos.at("user"), "positions.user");
    if (pos.contains("irs1"))
      cfg.pos_irs1 = parse_vec3(pos.at("irs1"), "positions.irs1");
    if (pos.contains("irs2"))
      cfg.pos_irs2 = parse_vec3(pos.at("irs2"), "positions.irs2");
    if (pos.contains("irs0"))
      cfg.pos_irs0 = parse_vec3(pos.at("irs0"), "positions.irs0");
  }

  if (root.contains("K_dB")) {
    const double k = db_to_linear(get_number(root, "top level", "K_dB"));
    LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                           &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
    for (auto* l : links) l->fading.rician_k = k;
  }
  if (root.contains("regime")) {
    const Regime r = regime_from_string(root.at("regime").get<std::string>(),
                                        "top level");
    LinkParams* links[] = {&cfg.bs_irs1,   &cfg.bs_irs2,   &cfg.inter_irs,
                           &cfg.bs_user,   &cfg.irs1_user, &cfg.irs2_user};
    for (auto* l : links) l->fading.regime = r;
  }

  auto slots = link_slots(cfg);
  // distances re-derive from (possibly overridden) positions unless this
  // config states them explicitly
  for (auto& slot : slots) slot.params->distance_m.reset();
  if (root.contains("links")) {
    const json& links = root.at("links");
    require_keys(links, "links",
                 {"bs_irs1", "bs_irs2", "inter_irs", "bs_user", "irs1_user",
                  "irs2_user", "bs_irs0", "irs0_user"});
    for (auto& slot : slots)
      if (links.contains(slot.name))
        parse_link(links.at(slot.name), std::string("links.") + slot.name, slot);
  }

  // Single-IRS links inherit the IRS-1 counterparts' fading style but must
  // resolve their own large-scale power (from positions, a distance, or an
  // explicit alpha).
  LinkSlot irs0_in{"bs_irs0", nullptr, &cfg.pos_bs, &cfg.pos_irs0, 2.3};
  LinkSlot irs0_out{"irs0_user", nullptr, &cfg.pos_irs0, &cfg.pos_user, 2.3};
  LinkParams s0 = cfg.bs_irs1, u0 = cfg.irs1_user;
  s0.distance_m.reset();
  u0.distance_m.reset();
  bool have_s0 = false, have_u0 = false;
  irs0_in.params = &s0;
  irs0_out.params = &u0;
  if (root.contains("links")) {
    const json& links = root.at("links");
    if (links.contains("bs_irs0")) {
      parse_link(links.at("bs_irs0"), "links.bs_irs0", irs0_in);
      have_s0 = true;
    }
    if (links.contains("irs0_user")) {
      parse_link(links.at("irs0_user"), "links.irs0_user", irs0_out);
      have_u0 = true;
    }
  }

  // resolve large-scale powers: explicit alpha > explicit distance > positions
  auto resolve = [](LinkSlot& slot) {
    LinkParams& link = *slot.params;
    if (slot.explicit_alpha) return;
    const double exponent =
        link.path_loss_exponent.value_or(slot.default_exponent);
    link.path_loss_exponent = exponent;
    if (!link.distance_m && slot.from->has_value() && slot.to->has_value())
      link.distance_m = distance(**slot.from, **slot.to);
    if (!link.distance_m)
      throw ConfigError(std::string("link ") + slot.name +
                        ": no alpha, distance, or positions to derive it");
    link.fading.alpha = path_loss(*link.distance_m, exponent);
  };
  auto derive_angles = [](LinkSlot& slot) {
    if (slot.explicit_angles || !slot.from->has_value() ||
        !slot.to->has_value())
      return;
    auto [az, el] = direction_angles(**slot.from, **slot.to);
    slot.params->angles.aod_h = az;
    slot.params->angles.aod_v = el;
    auto [raz, rel] = direction_angles(**slot.to, **slot.from);
    slot.params->angles.aoa_h = raz;
    slot.params->angles.aoa_v = rel;
  };
  for (auto& slot : slots) resolve(slot);

  if (have_s0 || have_u0 || cfg.irs0 || cfg.pos_irs0) {
    if (!cfg.irs0)
      cfg.irs0 = square_array(cfg.irs1.size() + cfg.irs2.size());
    derive_angles(irs0_in);
    derive_angles(irs0_out);
    resolve(irs0_in);
    resolve(irs0_out);
    cfg.bs_irs0 = s0;
    cfg.irs0_user = u0;
  }

  cfg.validate();

  if (root.contains("sweep")) out.sweep = parse_sweep(root.at("sweep"));
  return out;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string phases_to_json(const PhaseShifts& ph) {
  json doc;
  doc["phi1"] = json::array();
  for (Eigen::Index i = 0; i < ph.phi1.size(); ++i)
    doc["phi1"].push_back(ph.phi1[i]);
  doc["phi2"] = json::array();
  for (Eigen::Index i = 0; i < ph.phi2.size(); ++i)
    doc["phi2"].push_back(ph.phi2[i]);
  return doc.dump(2) + "\n";
}

PhaseShifts phases_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid phases JSON: ") + e.what());
  }
  require_keys(doc, "phases", {"phi1", "phi2"});
  PhaseShifts ph;
  auto read = [&](const char* key, VectorXd& out) {
    if (!doc.contains(key)) return;
    const json& arr = doc.at(key);
    out.resize(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& v : arr) out[i++] = wrap_phase(v.get<double>());
  };
  read("phi1", ph.phi1);
  read("phi2", ph.phi2);
  return ph;
}

}  // namespace dirsim
