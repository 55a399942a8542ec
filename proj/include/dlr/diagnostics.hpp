#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <dlr/state.hpp>

namespace dlr {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double electric_energy = 0.0;
  Index rank = 0;
  double mass_rel_err = 0.0;
  double momentum_abs_err = 0.0;
  double energy_rel_err = 0.0;
  // max over x of the discrete continuity residuals of the step that ended at t
  double cont_mass_res = 0.0;
  double cont_mom_res = 0.0;
  double cont_energy_gap = 0.0;

  // Not written to CSV: scales for dimensionless residual checks.
  double tau = 0.0;
  double rho_max = 0.0; // max |rho^n|
  double e_max = 0.0;   // max |e^n|
  bool saturated = false;

  bool finite() const;
};

// Invariants at t = 0; errors are measured against these.
struct DiagnosticsReference {
  Invariants initial;
};

DiagnosticsReference make_reference(const PhaseSpace& ps, const LowRankState& st, const Vec& E);

// Row for a state without a preceding step (residuals are zero).
DiagnosticsRecord record(const PhaseSpace& ps, const LowRankState& st, const Vec& E, const DiagnosticsReference& ref);

// Row for `next` including the residuals of the step prev -> next:
//   mass    (rho1 - rho0)/tau + d_x j0
//   momentum (j1 - j0)/tau + d_x sigma0 + E0 rho0
//   energy  (e1 - e0)/tau + d_x Q0 - E0 ((E1 - E0)/tau - j0) - (E1 - E0)^2/(2 tau)
DiagnosticsRecord record(const PhaseSpace& ps, const LowRankState& prev, const LowRankState& next, const Vec& E_prev,
                         const Vec& E_next, double tau, const DiagnosticsReference& ref);

inline constexpr std::array<const char*, 12> diagnostics_columns = {
    "t",  "mass", "momentum", "energy", "electric_energy", "rank", "mass_rel_err", "momentum_abs_err",
    "energy_rel_err", "cont_mass_res", "cont_mom_res", "cont_energy_gap"};

class DiagnosticsWriter {
public:
  explicit DiagnosticsWriter(std::ostream& os);
  void header();
  void write(const DiagnosticsRecord& r);

private:
  std::ostream& os_;
};

// Reads a file written by DiagnosticsWriter. Throws contract_error naming the
// first missing or unexpected column.
std::vector<DiagnosticsRecord> read_diagnostics(std::istream& is);

} // namespace dlr
