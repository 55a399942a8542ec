#include <dlr/field.hpp>
#include <dlr/error.hpp>

#include <cmath>
#include <sstream>
#include <vector>

namespace dlr {

FieldState solve_field(const SpatialGrid& g, const Vec& rho, const Neutrality& nt) {
  require(rho.size() == g.size(), "solve_field: rho length does not match nx");
  double mean = rho.mean();
  if(!(std::abs(mean - nt.background) <= nt.tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_field: mean charge density " << mean << " differs from the background " << nt.background
        << " by more than " << nt.tolerance;
    throw solvability_error(msg.str(), mean);
  }

  const Fourier& fft = g.fourier();
  Index ns = fft.spectrum_size();
  std::vector<cplx> sp(ns);
  fft.forward(rho.data(), sp.data());
  // i s(k) E_k = -rho_k with s the symbol of deriv_x; the mean and Nyquist modes of E vanish.
  sp[0] = 0.0;
  for(Index k = 1; k < ns; k++) {
    double kk = g.symbol(k);
    sp[k] = kk == 0.0 ? cplx(0.0) : -sp[k] / cplx(0.0, kk);
  }
  FieldState fs;
  fs.rho = rho;
  fs.E.resize(g.size());
  fft.backward(sp.data(), fs.E.data());
  fs.electric_energy = electric_energy(g, fs.E);
  return fs;
}

double electric_energy(const SpatialGrid& g, const Vec& E) {
  return 0.5 * integrate_x(g, E.cwiseProduct(E));
}

double electric_energy_partial(const PhaseSpace& ps, const LowRankState& st, Index l, const Neutrality& nt) {
  int m = ps.m();
  require(l >= std::max(m, 1) && l <= st.rank(), "electric_energy_partial: rank out of range");
  ConservativeSplit sp = split_conservative(ps, st.X, st.S, st.V);
  require(l <= sp.max_rank(), "electric_energy_partial: rank exceeds the numerical rank bound");
  Vec rho = velocity_moments(ps, sp, l).col(0);
  return solve_field(ps.x, rho, nt).electric_energy;
}

} // namespace dlr
