#include "wavebeam/io/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wavebeam::io {

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::string normalize_key(std::string k) {
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

}  // namespace

void apply_json(RunConfig& cfg, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [raw, v] : doc.items()) {
    const std::string key = normalize_key(raw);
    if (key == "bc") cfg.bc = get_as<std::string>(v, key);
    else if (key == "wave" || key == "waves") {
      if (v.is_string()) cfg.waves = {v.get<std::string>()};
      else cfg.waves = get_as<std::vector<std::string>>(v, key);
    }
    else if (key == "nu") cfg.nu = get_as<double>(v, key);
    else if (key == "aspect") cfg.aspect = get_as<double>(v, key);
    else if (key == "M") cfg.M = get_as<int>(v, key);
    else if (key == "N") cfg.N = get_as<int>(v, key);
    else if (key == "M_list") cfg.M_list = get_as<std::vector<int>>(v, key);
    else if (key == "kmin") cfg.kmin = get_as<double>(v, key);
    else if (key == "kmax") cfg.kmax = get_as<double>(v, key);
    else if (key == "ksteps") cfg.ksteps = get_as<int>(v, key);
    else if (key == "omega_min") cfg.omega_min = get_as<double>(v, key);
    else if (key == "omega_max") cfg.omega_max = get_as<double>(v, key);
    else if (key == "omega_step") cfg.omega_step = get_as<double>(v, key);
    else if (key == "refine_tol") cfg.refine_tol = get_as<double>(v, key);
    else if (key == "root_threshold") cfg.root_threshold = get_as<double>(v, key);
    else if (key == "root_ratio") cfg.root_ratio = get_as<double>(v, key);
    else if (key == "jump_threshold") cfg.jump_threshold = get_as<double>(v, key);
    else if (key == "max_branches") cfg.max_branches = get_as<int>(v, key);
    else if (key == "oversample") cfg.oversample = get_as<double>(v, key);
    else if (key == "threads") cfg.threads = get_as<int>(v, key);
    else if (key == "out") cfg.out = get_as<std::string>(v, key);
    else if (key == "svg") cfg.svg = get_as<bool>(v, key);
    else if (key == "K") cfg.K = get_as<double>(v, key);
    else if (key == "branch") cfg.branch = get_as<int>(v, key);
    else if (key == "grid") cfg.grid = get_as<int>(v, key);
    else throw ConfigError("unknown config key '" + raw + "'");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg;
  apply_json(cfg, ss.str());
  return cfg;
}

void RunConfig::validate() const {
  if (waves.empty()) throw ConfigError("no wave class given");
  (void)wave_classes();
  if (!(nu >= 0 && nu < 0.5)) throw ConfigError("nu must lie in [0, 0.5)");
  if (!(aspect > 0)) throw ConfigError("aspect ratio must be positive");
  if (M < 1 || N < 1) throw ConfigError("M and N must be at least 1");
  if (ksteps < 1) throw ConfigError("the K grid is empty (ksteps < 1)");
  if (!(kmin > 0)) throw ConfigError("kmin must be positive");
  if (!(kmax >= kmin)) throw ConfigError("kmax must not be below kmin");
  if (!(oversample >= 1)) throw ConfigError("oversample must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (grid < 21) throw ConfigError("mode grids need at least 21 points per side");
  if (branch < 1) throw ConfigError("branch order starts at 1");
  if (!(K > 0)) throw ConfigError("K must be positive");
  if (max_branches < 0) throw ConfigError("max_branches must not be negative");
  if (!(jump_threshold > 0)) throw ConfigError("jump_threshold must be positive");
  scan().validate();
}

std::vector<double> RunConfig::k_grid() const {
  if (ksteps < 1) return {};
  if (ksteps == 1) return {kmin};
  return ScanConfig<double>::uniform_k(kmin, kmax, ksteps - 1);
}

std::vector<WaveClass> RunConfig::wave_classes() const {
  const BcLayout layout = BcLayout::parse(bc);
  std::vector<WaveClass> out;
  for (const auto& w : waves) out.push_back(make_wave_class(layout, parse_wave_type(w)));
  return out;
}

CollocationConfig<double> RunConfig::collocation(const WaveClass& wave) const {
  return collocation(wave, M, N);
}

CollocationConfig<double> RunConfig::collocation(const WaveClass& wave, int m, int n) const {
  CollocationConfig<double> c;
  c.wave = wave;
  c.M = m;
  c.N = n;
  c.oversample = oversample;
  c.material = material_from_poisson(nu, 1.0, 1.0);
  c.cross_section = CrossSection<double>::from_aspect(aspect);
  return c;
}

ScanConfig<double> RunConfig::scan() const {
  ScanConfig<double> s;
  s.omega_min = omega_min;
  s.omega_max = omega_max;
  s.omega_step = omega_step;
  s.k_grid = k_grid();
  s.root_threshold = root_threshold;
  s.root_ratio = root_ratio;
  s.refine_tol = refine_tol;
  s.jump_threshold = jump_threshold;
  s.max_branches = max_branches;
  s.threads = threads;
  return s;
}

}  // namespace wavebeam::io
