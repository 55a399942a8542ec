#include <dlr/driver.hpp>
#include <dlr/error.hpp>

#include <iostream>
#include <optional>

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"Conservative dynamical low-rank Vlasov-Poisson solver"};
  app.set_version_flag("--version", std::string(VPDLR_VERSION));
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a simulation and write diagnostics");
  std::string preset, config;
  std::optional<long> r, m, r_floor, r_max, sample_every;
  std::optional<std::string> policy, theta, theta_schedule, t_end, dt, out, xder;
  bool quiet = false;
  run->add_option("--preset", preset, "linear_landau | nonlinear_landau | two_stream | custom");
  run->add_option("--config", config, "key = value file; flags override its values")->check(CLI::ExistingFile);
  run->add_option("--r", r, "initial rank (fixed policy: the rank)");
  run->add_option("--m", m, "number of conserved velocity directions, 0..3");
  run->add_option("--policy", policy, "fixed | solution | efield | energy");
  auto* th = run->add_option("--theta", theta, "constant tolerance of the adaptive policy");
  auto* ths = run->add_option("--theta-schedule", theta_schedule, "piecewise tolerance t0:x0,t1:x1,...");
  th->excludes(ths);
  run->add_option("--r-floor", r_floor, "rank used once the energy tolerance is already met by the fixed block");
  run->add_option("--r-max", r_max, "rank cap of the adaptive policies (0: none)");
  run->add_option("--x-derivative", xder, "spectral | centered");
  run->add_option("--t-end", t_end, "final time");
  run->add_option("--dt", dt, "time step");
  run->add_option("--sample-every", sample_every, "steps between diagnostics rows");
  run->add_option("--out", out, "output directory");
  run->add_flag("--quiet", quiet, "no progress output");

  CLI11_PARSE(app, argc, argv);

  std::vector<dlr::Setting> ov;
  auto put = [&](const char* key, const auto& opt) {
    if(!opt)
      return;
    if constexpr(std::is_same_v<std::decay_t<decltype(*opt)>, std::string>)
      ov.emplace_back(key, *opt);
    else
      ov.emplace_back(key, std::to_string(*opt));
  };
  put("r", r);
  put("m", m);
  put("policy", policy);
  put("theta", theta);
  put("theta_schedule", theta_schedule);
  put("r_floor", r_floor);
  put("r_max", r_max);
  put("x_derivative", xder);
  put("t_end", t_end);
  put("dt", dt);
  put("sample_every", sample_every);
  put("out", out);

  try {
    auto pre = preset.empty() ? std::nullopt : std::optional<std::string>(preset);
    auto file = config.empty() ? std::nullopt : std::optional<std::string>(config);
    dlr::SimulationConfig cfg = dlr::resolve_config(pre, file, ov);
    dlr::RunOptions opt;
    opt.log = quiet ? nullptr : &std::cerr;
    dlr::RunResult res = dlr::run(cfg, opt);
    if(!res.ok) {
      std::cerr << "vpdlr: " << res.error << '\n';
      return 3;
    }
    if(res.any_saturated)
      std::cerr << "vpdlr: note: the rank policy hit r_max on at least one step\n";
    return 0;
  } catch(const dlr::config_error& e) {
    std::cerr << "vpdlr: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch(const std::exception& e) {
    std::cerr << "vpdlr: " << e.what() << '\n';
    return 1;
  }
}
