#include <dlr/config.hpp>
#include <dlr/error.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace dlr {

Index SimulationConfig::steps() const {
  return Index(std::ceil(t_end / tau - 1e-9));
}

SimulationConfig preset(ScenarioKind kind) {
  SimulationConfig c;
  c.scenario.kind = kind;
  switch(kind) {
  case ScenarioKind::linear_landau:
  case ScenarioKind::custom:
    c.scenario.alpha = 1e-2;
    c.scenario.k = 0.5;
    c.r = 10;
    break;
  case ScenarioKind::nonlinear_landau:
    c.scenario.alpha = 0.5;
    c.scenario.k = 0.5;
    c.r = 25;
    break;
  case ScenarioKind::two_stream:
    c.scenario.alpha = 1e-3;
    c.scenario.k = 0.2;
    c.scenario.vbar = 2.4;
    c.vmin = -7.0;
    c.vmax = 7.0;
    c.r = 10;
    break;
  }
  c.x_length = 2.0 * std::numbers::pi / c.scenario.k;
  c.policy.r_fixed = c.r;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if(b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch(const std::exception&) {
    throw config_error(key, "expected a number, got '" + v + "'");
  }
  if(used != v.size())
    throw config_error(key, "expected a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch(const std::exception&) {
    throw config_error(key, "expected an integer, got '" + v + "'");
  }
  if(used != v.size())
    throw config_error(key, "expected an integer, got '" + v + "'");
  return x;
}

template <class F>
auto rethrow_as_config(const std::string& key, F&& f) {
  try {
    return f();
  } catch(const contract_error& e) {
    throw config_error(key, e.what());
  }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while(std::getline(ss, item, ','))
    if(!trim(item).empty())
      out.push_back(to_double(key, trim(item)));
  return out;
}

using Setter = std::function<void(SimulationConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = {
      {"scenario",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         c.scenario.kind = rethrow_as_config(k, [&] { return scenario_from_string(v); });
       }},
      {"alpha", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.scenario.alpha = to_double(k, v); }},
      {"k", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.scenario.k = to_double(k, v); }},
      {"vbar", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.scenario.vbar = to_double(k, v); }},
      {"x_length", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.x_length = to_double(k, v); }},
      {"vmin", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.vmin = to_double(k, v); }},
      {"vmax", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.vmax = to_double(k, v); }},
      {"nx", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.nx = to_int(k, v); }},
      {"nv", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.nv = to_int(k, v); }},
      {"x_derivative",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         c.x_derivative = rethrow_as_config(k, [&] { return xderivative_from_string(v); });
       }},
      {"dt", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.tau = to_double(k, v); }},
      {"t_end", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.t_end = to_double(k, v); }},
      {"r",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         c.r = to_int(k, v);
         c.policy.r_fixed = c.r;
       }},
      {"m", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.m = int(to_int(k, v)); }},
      {"policy",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         c.policy.kind = rethrow_as_config(k, [&] { return policy_from_string(v); });
       }},
      {"theta",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         double th = to_double(k, v);
         c.policy.theta = rethrow_as_config(k, [&] { return ThetaSchedule(th); });
       }},
      {"theta_schedule",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         c.policy.theta = rethrow_as_config(k, [&] { return ThetaSchedule::parse(v); });
       }},
      {"r_floor", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.policy.r_floor = to_int(k, v); }},
      {"r_max", [](SimulationConfig& c, const std::string& k, const std::string& v) { c.policy.r_max = to_int(k, v); }},
      {"neutrality_tol",
       [](SimulationConfig& c, const std::string& k, const std::string& v) { c.neutrality_tol = to_double(k, v); }},
      {"sample_every",
       [](SimulationConfig& c, const std::string& k, const std::string& v) { c.sample_every = to_int(k, v); }},
      {"out", [](SimulationConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
      {"snapshot_times",
       [](SimulationConfig& c, const std::string& k, const std::string& v) { c.snapshot_times = to_list(k, v); }},
      {"seed",
       [](SimulationConfig& c, const std::string& k, const std::string& v) {
         long long s = to_int(k, v);
         if(s < 0)
           throw config_error(k, "must be nonnegative");
         c.seed = std::uint64_t(s);
       }},
  };
  return s;
}

} // namespace

void apply_setting(SimulationConfig& cfg, const std::string& key, const std::string& value) {
  auto it = setters().find(key);
  if(it == setters().end())
    throw config_error(key, "unknown key");
  it->second(cfg, key, trim(value));
}

std::vector<Setting> read_settings(std::istream& is) {
  std::vector<Setting> out;
  std::string line;
  int lineno = 0;
  while(std::getline(is, line)) {
    lineno++;
    auto hash = line.find('#');
    if(hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if(line.empty())
      continue;
    auto eq = line.find('=');
    if(eq == std::string::npos)
      throw config_error(line, "line " + std::to_string(lineno) + " is not of the form key = value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void validate(const SimulationConfig& c) {
  auto check = [](bool ok, const char* key, const std::string& msg) {
    if(!ok)
      throw config_error(key, msg);
  };
  check(c.tau > 0.0 && std::isfinite(c.tau), "dt", "must be positive");
  check(c.t_end > 0.0 && std::isfinite(c.t_end), "t_end", "must be positive");
  check(c.x_length > 0.0, "x_length", "must be positive");
  check(c.vmax > c.vmin, "vmax", "must exceed vmin");
  check(c.nx >= 2, "nx", "must be at least 2");
  check(c.nv >= 4, "nv", "must be at least 4");
  check(c.m >= 0 && c.m <= 3, "m", "must be 0, 1, 2 or 3");
  check(c.r >= std::max(c.m, 1), "r", "must be at least max(m, 1)");
  check(c.r <= c.nx && c.r <= c.nv, "r", "must not exceed the grid sizes");
  check(c.policy.r_floor > c.m, "r_floor", "must exceed m");
  check(c.policy.r_max >= 0, "r_max", "must be nonnegative (0 = no cap)");
  check(c.policy.r_max == 0 || c.policy.r_max > c.m, "r_max", "must exceed m");
  check(c.sample_every >= 1, "sample_every", "must be at least 1");
  check(c.neutrality_tol > 0.0, "neutrality_tol", "must be positive");
  if(c.policy.kind != PolicyKind::fixed)
    for(const auto& [t, th] : c.policy.theta.segments())
      check(th > 0.0, "theta", "must be positive for adaptive policies");
}

SimulationConfig resolve_config(const std::optional<std::string>& preset_name,
                                const std::optional<std::string>& file, const std::vector<Setting>& overrides) {
  std::vector<Setting> from_file;
  if(file) {
    std::ifstream in(*file);
    if(!in)
      throw config_error("config", "cannot open '" + *file + "'");
    from_file = read_settings(in);
  }

  std::optional<std::string> base = preset_name;
  if(!base)
    for(const auto& [k, v] : from_file)
      if(k == "scenario")
        base = v;
  if(!base)
    throw config_error("preset", "no preset given and the config file names no scenario");

  ScenarioKind kind;
  try {
    kind = scenario_from_string(*base);
  } catch(const contract_error& e) {
    throw config_error(preset_name ? "preset" : "scenario", e.what());
  }
  SimulationConfig cfg = preset(kind);
  for(const auto& [k, v] : from_file)
    apply_setting(cfg, k, v);
  for(const auto& [k, v] : overrides)
    apply_setting(cfg, k, v);
  validate(cfg);
  return cfg;
}

std::string manifest(const SimulationConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "scenario = " << to_string(c.scenario.kind) << '\n'
     << "alpha = " << c.scenario.alpha << '\n'
     << "k = " << c.scenario.k << '\n'
     << "vbar = " << c.scenario.vbar << '\n'
     << "x_length = " << c.x_length << '\n'
     << "vmin = " << c.vmin << '\n'
     << "vmax = " << c.vmax << '\n'
     << "nx = " << c.nx << '\n'
     << "nv = " << c.nv << '\n'
     << "x_derivative = " << to_string(c.x_derivative) << '\n'
     << "dt = " << c.tau << '\n'
     << "t_end = " << c.t_end << '\n'
     << "r = " << c.r << '\n'
     << "m = " << c.m << '\n'
     << "policy = " << to_string(c.policy.kind) << '\n'
     << "theta_schedule = " << c.policy.theta.str() << '\n'
     << "r_floor = " << c.policy.r_floor << '\n'
     << "r_max = " << c.policy.r_max << '\n'
     << "neutrality_tol = " << c.neutrality_tol << '\n'
     << "sample_every = " << c.sample_every << '\n'
     << "out = " << c.out_dir << '\n'
     << "snapshot_times = ";
  for(std::size_t i = 0; i < c.snapshot_times.size(); i++)
    os << (i ? "," : "") << c.snapshot_times[i];
  os << '\n' << "seed = " << c.seed << '\n';
  return os.str();
}

} // namespace dlr
