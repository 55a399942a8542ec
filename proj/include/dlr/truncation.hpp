#pragma once

#include <string>
#include <utility>
#include <vector>

#include <dlr/field.hpp>
#include <dlr/stepper.hpp>

namespace dlr {

enum class PolicyKind { fixed, solution_error, electric_energy_error, total_energy_error };

std::string to_string(PolicyKind k);
// Accepts the long names above and the CLI spellings fixed|solution|efield|energy.
PolicyKind policy_from_string(const std::string& s);

// Piecewise-constant tolerance: theta(t) is the value of the last segment
// with t_from <= t (the first segment if t precedes all of them).
class ThetaSchedule {
public:
  ThetaSchedule() = default;
  explicit ThetaSchedule(double theta);
  explicit ThetaSchedule(std::vector<std::pair<double, double>> segments);

  // "t0:x0,t1:x1,..." with strictly increasing t and x > 0.
  static ThetaSchedule parse(const std::string& text);
  std::string str() const;

  double at(double t) const;
  const std::vector<std::pair<double, double>>& segments() const { return seg_; }

private:
  std::vector<std::pair<double, double>> seg_{{0.0, 1e-8}};
};

struct RankPolicy {
  PolicyKind kind = PolicyKind::fixed;
  ThetaSchedule theta;
  Index r_fixed = 10;
  Index r_floor = 10;
  Index r_max = 0; // 0: the largest rank the augmented step offers
};

// What the adaptive policies compare against.
struct RankContext {
  double t = 0.0;
  double energy_prev = 0.0; // total energy of the state the step started from
  Neutrality neutrality = Neutrality::unchecked();
};

struct RankChoice {
  Index rank = 0;
  bool saturated = false; // no rank up to r_max met the tolerance
};

// Total energy 1/2 int sigma dx + 1/2 int E^2 dx of the rank-l truncation of a split.
double total_energy_partial(const PhaseSpace& ps, const ConservativeSplit& sp, Index l, const Neutrality& nt);
double electric_energy_partial(const PhaseSpace& ps, const ConservativeSplit& sp, Index l, const Neutrality& nt);

RankChoice choose_rank(const PhaseSpace& ps, const ConservativeSplit& sp, const RankPolicy& policy,
                       const RankContext& ctx);

// Keep the fixed block and the r - m leading remainder directions.
LowRankState conservative_truncate(const PhaseSpace& ps, const ConservativeSplit& sp, Index r);
LowRankState conservative_truncate(const PhaseSpace& ps, const AugmentedState& aug, const Mat& St, Index r);

struct StepResult {
  LowRankState state;
  FieldState field; // field of `state`
  RankChoice choice;
};

// One full step: augmented integrator, rank selection and conservative
// truncation. `field` must be the field of `st`.
StepResult step_and_truncate(const PhaseSpace& ps, const LowRankState& st, const FieldState& field,
                             const RankPolicy& policy, double tau, const Neutrality& nt);

} // namespace dlr
