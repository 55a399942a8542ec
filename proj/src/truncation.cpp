#include <dlr/truncation.hpp>
#include <dlr/error.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dlr {

std::string to_string(PolicyKind k) {
  switch(k) {
  case PolicyKind::fixed: return "fixed";
  case PolicyKind::solution_error: return "solution_error";
  case PolicyKind::electric_energy_error: return "electric_energy_error";
  case PolicyKind::total_energy_error: return "total_energy_error";
  }
  return "?";
}

PolicyKind policy_from_string(const std::string& s) {
  if(s == "fixed")
    return PolicyKind::fixed;
  if(s == "solution" || s == "solution_error")
    return PolicyKind::solution_error;
  if(s == "efield" || s == "electric_energy_error")
    return PolicyKind::electric_energy_error;
  if(s == "energy" || s == "total_energy_error")
    return PolicyKind::total_energy_error;
  throw contract_error("unknown rank policy '" + s + "'");
}

ThetaSchedule::ThetaSchedule(double theta) : seg_{{0.0, theta}} {
  require(theta >= 0.0 && std::isfinite(theta), "ThetaSchedule: theta must be finite and nonnegative");
}

ThetaSchedule::ThetaSchedule(std::vector<std::pair<double, double>> segments) : seg_(std::move(segments)) {
  require(!seg_.empty(), "ThetaSchedule: empty schedule");
  for(std::size_t i = 0; i < seg_.size(); i++) {
    require(seg_[i].second >= 0.0 && std::isfinite(seg_[i].second), "ThetaSchedule: theta must be finite and nonnegative");
    if(i > 0)
      require(seg_[i].first > seg_[i - 1].first, "ThetaSchedule: times must be strictly increasing");
  }
}

ThetaSchedule ThetaSchedule::parse(const std::string& text) {
  std::vector<std::pair<double, double>> seg;
  std::stringstream ss(text);
  std::string item;
  while(std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    require(colon != std::string::npos, "theta schedule entry '" + item + "' is not of the form t:theta");
    std::size_t used = 0;
    double t = 0, th = 0;
    try {
      std::string a = item.substr(0, colon), b = item.substr(colon + 1);
      t = std::stod(a, &used);
      require(used == a.size(), "bad time in theta schedule entry '" + item + "'");
      th = std::stod(b, &used);
      require(used == b.size(), "bad tolerance in theta schedule entry '" + item + "'");
    } catch(const std::logic_error& e) {
      if(dynamic_cast<const contract_error*>(&e))
        throw;
      throw contract_error("theta schedule entry '" + item + "' is not numeric");
    }
    seg.emplace_back(t, th);
  }
  return ThetaSchedule(std::move(seg));
}

std::string ThetaSchedule::str() const {
  std::ostringstream os;
  os.precision(17);
  for(std::size_t i = 0; i < seg_.size(); i++)
    os << (i ? "," : "") << seg_[i].first << ":" << seg_[i].second;
  return os.str();
}

double ThetaSchedule::at(double t) const {
  double th = seg_.front().second;
  for(const auto& [t0, x] : seg_)
    if(t >= t0)
      th = x;
  return th;
}

namespace {

double field_energy_of(const PhaseSpace& ps, const Mat& mom, const Neutrality& nt) {
  return solve_field(ps.x, mom.col(0), nt).electric_energy;
}

} // namespace

double electric_energy_partial(const PhaseSpace& ps, const ConservativeSplit& sp, Index l, const Neutrality& nt) {
  return field_energy_of(ps, velocity_moments(ps, sp, l), nt);
}

double total_energy_partial(const PhaseSpace& ps, const ConservativeSplit& sp, Index l, const Neutrality& nt) {
  Mat mom = velocity_moments(ps, sp, l);
  return 0.5 * integrate_x(ps.x, mom.col(2)) + field_energy_of(ps, mom, nt);
}

RankChoice choose_rank(const PhaseSpace& ps, const ConservativeSplit& sp, const RankPolicy& policy,
                       const RankContext& ctx) {
  int m = sp.m;
  Index top = sp.max_rank();
  Index r_max = policy.r_max > 0 ? std::min(policy.r_max, top) : top;
  Index lo = std::min<Index>(m + 1, r_max);
  auto clamp = [&](Index r) { return std::clamp(r, lo, r_max); };

  switch(policy.kind) {
  case PolicyKind::fixed:
    return {std::clamp<Index>(policy.r_fixed, std::min<Index>(std::max(m, 1), r_max), r_max), false};

  case PolicyKind::solution_error: {
    double th2 = std::pow(policy.theta.at(ctx.t), 2);
    Index ns = sp.n_singular();
    // tail(k) = sum_{i >= k} sigma_i^2, accumulated from the small end
    Vec tail = Vec::Zero(ns + 1);
    for(Index i = ns - 1; i >= 0; i--)
      tail(i) = tail(i + 1) + sp.sigma(i) * sp.sigma(i);
    for(Index r = lo; r <= r_max; r++)
      if(tail(r - m) <= th2)
        return {r, false};
    return {r_max, true};
  }

  case PolicyKind::electric_energy_error:
  case PolicyKind::total_energy_error: {
    double th = policy.theta.at(ctx.t);
    bool efield = policy.kind == PolicyKind::electric_energy_error;
    double target = efield ? electric_energy_partial(ps, sp, top, ctx.neutrality) : ctx.energy_prev;
    auto value = [&](Index l) {
      return efield ? electric_energy_partial(ps, sp, l, ctx.neutrality)
                    : total_energy_partial(ps, sp, l, ctx.neutrality);
    };
    Index l0 = std::max(m, 1);
    if(l0 > r_max)
      return {r_max, false};
    if(std::abs(value(l0) - target) <= th)
      return {clamp(policy.r_floor), false};
    for(Index l = l0 + 1; l <= r_max; l++)
      if(std::abs(value(l) - target) <= th)
        return {clamp(l), false};
    return {r_max, true};
  }
  }
  return {r_max, true};
}

LowRankState conservative_truncate(const PhaseSpace& ps, const ConservativeSplit& sp, Index r) {
  int m = sp.m;
  require(r >= m && r >= 1, "conservative_truncate: rank below max(m, 1)");
  require(r <= sp.max_rank(), "conservative_truncate: rank exceeds the augmented rank");
  Index nk = r - m;

  Mat xh(ps.x.size(), r);
  xh << sp.x_cons, sp.x_rem.leftCols(nk);
  Orthonormalized qr = unweighted_orthonormalize(ps.x, xh, SignConvention::positive_diagonal);
  require(qr.Q.cols() == r, "conservative_truncate: spatial grid too small for rank r");

  Mat blk = Mat::Zero(r, r);
  blk.topLeftCorner(m, m) = sp.s_cons;
  blk.bottomRightCorner(nk, nk) = sp.sigma.head(nk).asDiagonal();

  LowRankState out;
  out.m = m;
  out.X = std::move(qr.Q);
  out.S = qr.R * blk;
  out.V.resize(ps.v.size(), r);
  out.V << sp.U, sp.w_rem.leftCols(nk);
  return out;
}

LowRankState conservative_truncate(const PhaseSpace& ps, const AugmentedState& aug, const Mat& St, Index r) {
  return conservative_truncate(ps, split_conservative(ps, aug.Xt, St, aug.Vt), r);
}

StepResult step_and_truncate(const PhaseSpace& ps, const LowRankState& st, const FieldState& field,
                             const RankPolicy& policy, double tau, const Neutrality& nt) {
  UnconventionalStep step = unconventional_step(ps, st, field.E, tau);
  ConservativeSplit sp = split_conservative(ps, step.aug.Xt, step.S_new, step.aug.Vt);

  RankContext ctx;
  ctx.t = st.t;
  ctx.neutrality = Neutrality::unchecked(nt.background);
  if(policy.kind == PolicyKind::total_energy_error)
    ctx.energy_prev = invariants(ps, st, field.E).energy;

  StepResult out;
  out.choice = choose_rank(ps, sp, policy, ctx);
  out.state = conservative_truncate(ps, sp, out.choice.rank);
  out.state.t = st.t + tau;
  out.field = solve_field(ps.x, velocity_moments(ps, out.state).col(0), nt);
  return out;
}

} // namespace dlr
