#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "wavebeam/io/commands.hpp"
#include "wavebeam/io/csv.hpp"
#include "wavebeam/io/svg.hpp"

namespace {

using namespace wavebeam;
using namespace wavebeam::io;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Flag values are applied over the config file only when given.
struct Overrides {
  std::string config;
  std::vector<std::function<void(RunConfig&)>> setters;
};

template <typename T>
void flag(CLI::App* sub, Overrides& ov, const std::string& name, T RunConfig::*field,
          const std::string& help) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = sub->add_option(name, *value, help);
  ov.setters.push_back([opt, value, field](RunConfig& c) {
    if (opt->count() > 0) c.*field = *value;
  });
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void add_common(CLI::App* sub, Overrides& ov) {
  sub->add_option("--config", ov.config, "JSON config file (flat key-value)")->check(CLI::ExistingFile);
  flag(sub, ov, "--bc", &RunConfig::bc, "boundary layout: FFFF, FCFC or CCFC");
  auto waves = std::make_shared<std::string>();
  CLI::Option* wopt = sub->add_option("--wave", *waves, "wave class(es), comma separated (L,T,Bx1,Bx2,Ls,La,Ts,Ta)");
  ov.setters.push_back([wopt, waves](RunConfig& c) {
    if (wopt->count() > 0) c.waves = split(*waves);
  });
  flag(sub, ov, "--aspect", &RunConfig::aspect, "length-to-width ratio a/b");
  flag(sub, ov, "--nu", &RunConfig::nu, "Poisson ratio");
  flag(sub, ov, "--M", &RunConfig::M, "truncation order along x1");
  flag(sub, ov, "--N", &RunConfig::N, "truncation order along x2");
  flag(sub, ov, "--kmin", &RunConfig::kmin, "smallest K");
  flag(sub, ov, "--kmax", &RunConfig::kmax, "largest K");
  flag(sub, ov, "--ksteps", &RunConfig::ksteps, "number of K samples");
  flag(sub, ov, "--omega-min", &RunConfig::omega_min, "lower end of the Omega scan");
  flag(sub, ov, "--omega-max", &RunConfig::omega_max, "upper end of the Omega scan");
  flag(sub, ov, "--omega-step", &RunConfig::omega_step, "Omega scan step");
  flag(sub, ov, "--refine-tol", &RunConfig::refine_tol, "root refinement tolerance");
  flag(sub, ov, "--root-threshold", &RunConfig::root_threshold, "largest accepted characteristic value");
  flag(sub, ov, "--root-ratio", &RunConfig::root_ratio, "required dip relative to the neighbourhood");
  flag(sub, ov, "--jump-threshold", &RunConfig::jump_threshold, "largest Omega jump between K samples");
  flag(sub, ov, "--max-branches", &RunConfig::max_branches, "branches kept per wave class (0 = all)");
  flag(sub, ov, "--oversample", &RunConfig::oversample, "collocation rows per unknown");
  flag(sub, ov, "--threads", &RunConfig::threads, "worker threads for the K scans");
  flag(sub, ov, "--out", &RunConfig::out, "output CSV path (stdout when empty)");
  auto svg = std::make_shared<bool>(false);
  CLI::Option* sopt = sub->add_flag("--svg", *svg, "also write an SVG plot next to the CSV");
  ov.setters.push_back([sopt, svg](RunConfig& c) {
    if (sopt->count() > 0) c.svg = *svg;
  });
}

RunConfig resolve(const Overrides& ov) {
  RunConfig cfg = ov.config.empty() ? RunConfig{} : load_config(ov.config);
  for (const auto& s : ov.setters) s(cfg);
  cfg.validate();
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& csv) {
  if (cfg.out.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
  f << csv;
}

void emit_svg(const RunConfig& cfg, const std::string& command, const std::string& svg) {
  if (!cfg.svg) return;
  const std::string path = cfg.out.empty()
                               ? command + ".svg"
                               : std::filesystem::path(cfg.out).replace_extension(".svg").string();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << svg;
  std::cerr << "wrote " << path << '\n';
}

std::string title(const RunConfig& cfg) {
  std::ostringstream os;
  os << cfg.bc << ", a/b=" << format_number(cfg.aspect) << ", nu=" << format_number(cfg.nu)
     << ", M=" << cfg.M << ", N=" << cfg.N;
  return os.str();
}

int run(const std::string& command, const RunConfig& cfg) {
  std::ostringstream csv;
  if (command == "dispersion") {
    const auto branches = run_dispersion(cfg);
    write_branches_csv(csv, branches);
    emit(cfg, csv.str());
    emit_svg(cfg, command, dispersion_svg(branches, "Dispersion curves, " + title(cfg)));
  } else if (command == "cutoffs") {
    const auto branches = run_cutoffs(cfg);
    write_cutoffs_csv(csv, branches);
    emit(cfg, csv.str());
    emit_svg(cfg, command, dispersion_svg(branches, "Dispersion curves, " + title(cfg)));
  } else if (command == "converge") {
    write_convergence_csv(csv, run_convergence(cfg));
    emit(cfg, csv.str());
  } else {
    const auto r = run_mode(cfg);
    write_mode_csv(csv, r.mode);
    emit(cfg, csv.str());
    std::cerr << r.mode.wave.name() << " branch " << r.mode.branch << ": K="
              << format_number(r.mode.K) << " Omega=" << format_number(r.mode.Omega)
              << " sigma=" << format_number(r.null.sigma)
              << " parity_error=" << format_number(r.mode.max_parity_error());
    if (r.plane_section) std::cerr << " plane_section=" << format_number(*r.plane_section);
    std::cerr << '\n';
    std::ostringstream t;
    t << r.mode.wave.name() << " branch " << r.mode.branch << ", K=" << format_number(r.mode.K)
      << ", Omega=" << format_number(r.mode.Omega);
    emit_svg(cfg, command, mode_svg(r.mode, t.str()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersion curves, cut-off frequencies and wave modes of rectangular elastic beams"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"dispersion", "trace dispersion branches over the K grid"},
      {"converge", "convergence errors against the largest M in --M-list"},
      {"modes", "cross-section wave mode of one branch at one K"},
      {"cutoffs", "cut-off frequencies by extrapolation to K = 0"}};
  std::map<std::string, Overrides> overrides;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    Overrides& ov = overrides[name];
    add_common(sub, ov);
    if (name == "converge") {
      auto list = std::make_shared<std::vector<int>>();
      CLI::Option* opt = sub->add_option("--M-list", *list, "ascending M = N values, last is the reference")->delimiter(',');
      ov.setters.push_back([opt, list](RunConfig& c) {
        if (opt->count() > 0) c.M_list = *list;
      });
    }
    if (name == "modes") {
      flag(sub, ov, "--K", &RunConfig::K, "wave number of the mode");
      flag(sub, ov, "--branch", &RunConfig::branch, "branch order (1 = lowest)");
      flag(sub, ov, "--grid", &RunConfig::grid, "samples per side of the mode grid");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, resolve(overrides[command]));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BlindArea& e) {
    std::cerr << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}
