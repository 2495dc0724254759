#include "llg/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "llg/error.hpp"

namespace llg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

AdaptiveSettings& adaptive_of(Config& c) {
  if (!c.spec.adaptive) c.spec.adaptive = AdaptiveSettings{};
  return *c.spec.adaptive;
}

const std::vector<std::string> kTargets = {"table1", "table2", "table4", "blowup", "adaptive"};

}  // namespace

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(to_double(key, item));
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scheme", "ic",        "beta",          "gamma",      "stab",  "nx",     "ny",     "n",
      "dt",     "tmax",      "adaptive",      "tol",        "dt_min", "dt_max", "rho",   "secant_tol",
      "secant_max_iters",    "xi_init_scale", "snapshots",  "out",   "name",   "progress",
      "dts",    "schemes",   "times",         "ref_dt",     "cache_dir", "seed", "perturb", "dealias"};
  return keys;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

void apply_setting(Config& c, const std::string& key, const std::string& v) {
  auto& s = c.spec;
  try {
    if (key == "scheme") s.scheme = parse_scheme(v);
    else if (key == "ic") s.ic = parse_ic(v);
    else if (key == "beta") s.params.beta = to_double(key, v);
    else if (key == "gamma") s.params.gamma = to_double(key, v);
    else if (key == "stab") s.params.stab = to_double(key, v);
    else if (key == "nx") { s.nx = static_cast<int>(to_long(key, v)); c.nx_set = true; }
    else if (key == "ny") s.ny = static_cast<int>(to_long(key, v));
    else if (key == "n") { s.nx = s.ny = static_cast<int>(to_long(key, v)); c.nx_set = true; }
    else if (key == "dt") s.dt = to_double(key, v);
    else if (key == "tmax") s.t_end = to_double(key, v);
    else if (key == "adaptive") {
      if (to_bool(key, v)) adaptive_of(c);
      else s.adaptive.reset();
    }
    else if (key == "tol") adaptive_of(c).tol = to_double(key, v);
    else if (key == "dt_min") adaptive_of(c).dt_min = to_double(key, v);
    else if (key == "dt_max") adaptive_of(c).dt_max = to_double(key, v);
    else if (key == "rho") adaptive_of(c).rho = to_double(key, v);
    else if (key == "secant_tol") s.secant.tol = to_double(key, v);
    else if (key == "secant_max_iters") s.secant.max_iters = static_cast<int>(to_long(key, v));
    else if (key == "xi_init_scale") s.secant.xi_init_scale = to_double(key, v);
    else if (key == "snapshots") s.snapshot_times = parse_list(key, v);
    else if (key == "out") s.out_dir = v;
    else if (key == "name") s.name = v;
    else if (key == "progress") s.progress_stride = static_cast<int>(to_long(key, v));
    else if (key == "dts") c.dts = parse_list(key, v);
    else if (key == "schemes") {
      c.schemes.clear();
      for (const auto& item : split_list(v)) c.schemes.push_back(parse_scheme(item));
    }
    else if (key == "times") c.times = parse_list(key, v);
    else if (key == "ref_dt") c.ref_dt = to_double(key, v);
    else if (key == "cache_dir") c.cache_dir = v;
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(to_long(key, v));
    else if (key == "perturb") s.perturb = to_double(key, v);
    else if (key == "dealias") s.params.dealias = to_bool(key, v);
    else throw ConfigError("unknown setting '" + key + "'");
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

void Config::validate() const {
  const auto& s = spec;
  switch (command) {
    case Command::Run:
      s.validate();
      break;
    case Command::Converge: {
      if (!s.scheme) throw ConfigError("converge needs --scheme");
      if (!s.ic) throw ConfigError("converge needs --ic");
      if (dts.size() < 2) throw ConfigError("converge needs at least two time steps in --dts to estimate orders");
      if (!(s.t_end > 0.0)) throw ConfigError("converge needs a positive --tmax");
      break;
    }
    case Command::Compare: {
      if (schemes.empty()) throw ConfigError("compare needs --schemes");
      if (!s.ic) throw ConfigError("compare needs --ic");
      if (!s.dt) throw ConfigError("compare needs --dt");
      if (times.empty()) throw ConfigError("compare needs report --times");
      break;
    }
    case Command::Reproduce:
      if (std::find(kTargets.begin(), kTargets.end(), target) == kTargets.end()) {
        throw ConfigError("reproduce target must be one of table1 table2 table4 blowup adaptive");
      }
      break;
  }
  if (!(ref_dt > 0.0)) throw ConfigError("ref_dt must be positive");
  try {
    s.params.validate();
    s.secant.validate();
    if (s.adaptive) s.adaptive->validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

bool parse_cli(int argc, const char* const* argv, Config& cfg, std::string& help) {
  CLI::App app{"Pseudo-spectral Landau-Lifshitz solver"};
  app.set_help_flag("-h,--help", "Show help");
  std::string command, target, config_path;
  app.add_option("command", command, "run | converge | compare | reproduce")->required();
  app.add_option("target", target, "reproduce target: table1 table2 table4 blowup adaptive");
  app.add_option("--config", config_path, "key = value settings file (flags take precedence)");

  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<std::string, CLI::Option*>> opts;
  for (const auto& key : config_keys()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (key == "adaptive" || key == "dealias") {
      opts.emplace_back(key, app.add_flag(flag)->description("enable " + key));
    } else {
      opts.emplace_back(key, app.add_option(flag, flag_values[key]));
    }
  }
  app.get_option("--stab")->description("stabilization constant S");
  app.add_option("-S", flag_values["stab_short"], "same as --stab");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help = app.help();
    return false;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (command == "run") cfg.command = Command::Run;
  else if (command == "converge") cfg.command = Command::Converge;
  else if (command == "compare") cfg.command = Command::Compare;
  else if (command == "reproduce") cfg.command = Command::Reproduce;
  else throw ConfigError("unknown command '" + command + "'; use run, converge, compare or reproduce");
  if (!target.empty() && cfg.command != Command::Reproduce) {
    throw ConfigError("unexpected argument '" + target + "'");
  }
  cfg.target = target;

  std::map<std::string, std::string> merged;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("cannot read config file " + config_path);
    std::stringstream buf;
    buf << f.rdbuf();
    merged = parse_config_text(buf.str());
  }
  for (const auto& [key, opt] : opts) {
    if (!opt || opt->count() == 0) continue;
    merged[key] = (key == "adaptive" || key == "dealias") ? "true" : flag_values[key];
  }
  if (auto* s = app.get_option("-S"); s->count() > 0) merged["stab"] = flag_values["stab_short"];
  // "n" first so explicit nx / ny refine it.
  if (auto it = merged.find("n"); it != merged.end()) apply_setting(cfg, "n", it->second);
  for (const auto& [key, value] : merged) {
    if (key != "n") apply_setting(cfg, key, value);
  }
  cfg.validate();
  return true;
}

}  // namespace llg
