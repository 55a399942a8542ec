#include <dlr/driver.hpp>
#include <dlr/error.hpp>
#include <dlr/field.hpp>
#include <dlr/truncation.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace dlr {

Neutrality neutrality_for(const SimulationConfig& cfg, double mean_rho0) {
  if(cfg.m >= 1)
    return {mean_rho0, cfg.neutrality_tol};
  return Neutrality::unchecked(mean_rho0);
}

namespace {

void write_snapshot(const std::filesystem::path& dir, const PhaseSpace& ps, const LowRankState& st) {
  std::ostringstream name;
  name << "snapshot_t" << st.t << ".csv";
  std::ofstream out(dir / name.str());
  out.precision(17);
  out << "x,v,f\n";
  Mat f = reconstruct(ps, st);
  for(Index i = 0; i < f.rows(); i++)
    for(Index j = 0; j < f.cols(); j++)
      out << ps.x.x(i) << ',' << ps.v.nodes()(j) << ',' << f(i, j) << '\n';
}

} // namespace

RunResult run(const SimulationConfig& cfg, const RunOptions& opt) {
  validate(cfg);
  PhaseSpace ps(SpatialGrid(cfg.nx, cfg.x_length, cfg.x_derivative), VelocityGrid(cfg.nv, cfg.vmin, cfg.vmax), cfg.m);
  RankPolicy policy = cfg.policy;
  policy.r_fixed = cfg.r;

  LowRankState st = initial_state(ps, cfg.scenario, cfg.r);
  Vec rho0 = velocity_moments(ps, st).col(0);
  Neutrality nt = neutrality_for(cfg, rho0.mean());
  FieldState field = solve_field(ps.x, rho0, nt);
  DiagnosticsReference ref = make_reference(ps, st, field.E);

  std::filesystem::path dir(cfg.out_dir);
  std::ofstream csv;
  std::optional<DiagnosticsWriter> writer;
  if(opt.write_files) {
    std::filesystem::create_directories(dir);
    std::ofstream man(dir / "manifest.txt");
    man << "# vpdlr " << VPDLR_VERSION << '\n' << manifest(cfg);
    csv.open(dir / "diagnostics.csv");
    if(!csv)
      throw config_error("out", "cannot write to '" + cfg.out_dir + "'");
    writer.emplace(csv);
    writer->header();
  }

  RunResult res;
  auto emit = [&](const DiagnosticsRecord& r) {
    res.records.push_back(r);
    if(writer)
      writer->write(r);
    if(opt.log)
      *opt.log << "t=" << r.t << " rank=" << r.rank << " mass_rel_err=" << r.mass_rel_err
               << " energy_rel_err=" << r.energy_rel_err << " electric_energy=" << r.electric_energy << '\n';
  };
  emit(record(ps, st, field.E, ref));

  std::vector<bool> snap_done(cfg.snapshot_times.size(), false);
  auto snapshots = [&](const LowRankState& s) {
    if(!opt.write_files)
      return;
    for(std::size_t i = 0; i < cfg.snapshot_times.size(); i++)
      if(!snap_done[i] && std::abs(s.t - cfg.snapshot_times[i]) <= 0.5 * cfg.tau) {
        write_snapshot(dir, ps, s);
        snap_done[i] = true;
      }
  };
  snapshots(st);

  Index n_steps = cfg.steps();
  bool saturated_since_sample = false;
  for(Index n = 0; n < n_steps; n++) {
    StepResult step;
    try {
      step = step_and_truncate(ps, st, field, policy, cfg.tau, nt);
    } catch(const solvability_error& e) {
      res.ok = false;
      res.error = e.what();
      break;
    }
    step.state.t = double(n + 1) * cfg.tau;
    if(!step.state.S.allFinite() || !step.field.E.allFinite()) {
      res.ok = false;
      std::ostringstream msg;
      msg << "non-finite state at t = " << step.state.t;
      res.error = msg.str();
      break;
    }
    saturated_since_sample = saturated_since_sample || step.choice.saturated;
    res.any_saturated = res.any_saturated || step.choice.saturated;

    if((n + 1) % cfg.sample_every == 0 || n + 1 == n_steps) {
      DiagnosticsRecord r = record(ps, st, step.state, field.E, step.field.E, cfg.tau, ref);
      r.saturated = saturated_since_sample;
      saturated_since_sample = false;
      if(!r.finite()) {
        res.ok = false;
        std::ostringstream msg;
        msg << "non-finite diagnostics at t = " << r.t;
        res.error = msg.str();
        break;
      }
      emit(r);
      res.last_good_time = r.t;
    }
    st = std::move(step.state);
    field = std::move(step.field);
    res.steps_taken = n + 1;
    snapshots(st);
  }
  if(!res.ok) {
    std::ostringstream msg;
    msg << res.error << "; last good time " << res.last_good_time;
    res.error = msg.str();
  }
  return res;
}

} // namespace dlr
