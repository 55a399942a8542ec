#include <dlr/diagnostics.hpp>
#include <dlr/error.hpp>
#include <dlr/field.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace dlr {

bool DiagnosticsRecord::finite() const {
  for(double x : {t, mass, momentum, energy, electric_energy, mass_rel_err, momentum_abs_err, energy_rel_err,
                  cont_mass_res, cont_mom_res, cont_energy_gap})
    if(!std::isfinite(x))
      return false;
  return true;
}

DiagnosticsReference make_reference(const PhaseSpace& ps, const LowRankState& st, const Vec& E) {
  return {invariants(ps, st, E)};
}

namespace {

void fill_invariants(const PhaseSpace& ps, const LowRankState& st, const Moments& mo, const Vec& E,
                     const DiagnosticsReference& ref, DiagnosticsRecord& r) {
  r.t = st.t;
  r.rank = st.rank();
  r.mass = integrate_x(ps.x, mo.rho);
  r.momentum = integrate_x(ps.x, mo.j);
  r.energy = integrate_x(ps.x, mo.e_density);
  r.electric_energy = electric_energy(ps.x, E);
  const Invariants& i0 = ref.initial;
  r.mass_rel_err = std::abs(r.mass - i0.mass) / std::abs(i0.mass);
  r.momentum_abs_err = std::abs(r.momentum - i0.momentum);
  r.energy_rel_err = std::abs(r.energy - i0.energy) / std::abs(i0.energy);
}

} // namespace

DiagnosticsRecord record(const PhaseSpace& ps, const LowRankState& st, const Vec& E, const DiagnosticsReference& ref) {
  DiagnosticsRecord r;
  Moments mo = moments(ps, st, E);
  fill_invariants(ps, st, mo, E, ref, r);
  r.rho_max = mo.rho.cwiseAbs().maxCoeff();
  r.e_max = mo.e_density.cwiseAbs().maxCoeff();
  return r;
}

DiagnosticsRecord record(const PhaseSpace& ps, const LowRankState& prev, const LowRankState& next, const Vec& E_prev,
                         const Vec& E_next, double tau, const DiagnosticsReference& ref) {
  require(tau > 0.0, "record: tau must be positive");
  Moments m0 = moments(ps, prev, E_prev);
  Moments m1 = moments(ps, next, E_next);
  DiagnosticsRecord r;
  fill_invariants(ps, next, m1, E_next, ref, r);
  r.tau = tau;
  r.rho_max = m0.rho.cwiseAbs().maxCoeff();
  r.e_max = m0.e_density.cwiseAbs().maxCoeff();

  Vec mass = (m1.rho - m0.rho) / tau + deriv_x(ps.x, m0.j);
  Vec mom = (m1.j - m0.j) / tau + deriv_x(ps.x, m0.sigma) + E_prev.cwiseProduct(m0.rho);
  Vec dE = E_next - E_prev;
  Vec gap = (m1.e_density - m0.e_density) / tau + deriv_x(ps.x, m0.heat_flux) -
            E_prev.cwiseProduct(dE / tau - m0.j) - dE.cwiseProduct(dE) / (2.0 * tau);
  r.cont_mass_res = mass.cwiseAbs().maxCoeff();
  r.cont_mom_res = mom.cwiseAbs().maxCoeff();
  r.cont_energy_gap = gap.cwiseAbs().maxCoeff();
  return r;
}

DiagnosticsWriter::DiagnosticsWriter(std::ostream& os) : os_(os) {
  os_.precision(17);
}

void DiagnosticsWriter::header() {
  for(std::size_t i = 0; i < diagnostics_columns.size(); i++)
    os_ << (i ? "," : "") << diagnostics_columns[i];
  os_ << '\n';
}

void DiagnosticsWriter::write(const DiagnosticsRecord& r) {
  os_ << r.t << ',' << r.mass << ',' << r.momentum << ',' << r.energy << ',' << r.electric_energy << ',' << r.rank
      << ',' << r.mass_rel_err << ',' << r.momentum_abs_err << ',' << r.energy_rel_err << ',' << r.cont_mass_res
      << ',' << r.cont_mom_res << ',' << r.cont_energy_gap << '\n';
}

std::vector<DiagnosticsRecord> read_diagnostics(std::istream& is) {
  auto missing = [](std::size_t col) {
    return contract_error(std::string("read_diagnostics: missing column '") + diagnostics_columns[col] + "'");
  };
  std::string line;
  require(bool(std::getline(is, line)), "read_diagnostics: missing header");
  if(!line.empty() && line.back() == '\r')
    line.pop_back();
  std::stringstream hs(line);
  std::string name;
  std::size_t col = 0;
  while(std::getline(hs, name, ',')) {
    require(col < diagnostics_columns.size(), "read_diagnostics: unexpected column '" + name + "'");
    if(name != diagnostics_columns[col])
      throw missing(col);
    col++;
  }
  if(col != diagnostics_columns.size())
    throw missing(col);

  std::vector<DiagnosticsRecord> out;
  while(std::getline(is, line)) {
    if(line.empty())
      continue;
    std::stringstream ls(line);
    std::string cell;
    double v[12];
    int n = 0;
    while(n < 12 && std::getline(ls, cell, ',')) {
      std::size_t used = 0;
      try {
        v[n] = std::stod(cell, &used);
      } catch(const std::exception&) {
        used = 0;
      }
      require(used > 0, "read_diagnostics: '" + cell + "' in column '" + diagnostics_columns[n] + "' is not a number");
      n++;
    }
    require(n == 12 && !std::getline(ls, cell, ','), "read_diagnostics: row does not have 12 fields: " + line);
    DiagnosticsRecord r;
    r.t = v[0];
    r.mass = v[1];
    r.momentum = v[2];
    r.energy = v[3];
    r.electric_energy = v[4];
    r.rank = Index(v[5]);
    r.mass_rel_err = v[6];
    r.momentum_abs_err = v[7];
    r.energy_rel_err = v[8];
    r.cont_mass_res = v[9];
    r.cont_mom_res = v[10];
    r.cont_energy_gap = v[11];
    out.push_back(r);
  }
  return out;
}

} // namespace dlr
