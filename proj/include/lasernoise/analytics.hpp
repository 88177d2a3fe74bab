#pragma once

#include <complex>
#include <vector>

#include "lasernoise/errors.hpp"

namespace lasernoise {

// Closed forms of the linearized (Langevin) noise theory.  All spectral
// densities are two-sided in the baseband angular frequency omega; the
// variance of a process is the integral of its density over d(omega)/2pi.
// Pure stateless functions, safe for unrestricted concurrent use.

// Spectral density of the quantum-count fluctuation in an isolated cavity:
//   S_dm(omega) = (N^2/2) / (N^2 + omega^2).
// Its integral over d(omega)/2pi equals N/4.
double closed_quanta_spectrum(int n_atoms, double omega);

// Detection-rate spectrum for a weak absorber in a nearly isolated cavity:
//   S_dq(omega) = alpha^2 S_dm(omega) + Q,   Q = alpha N / 2.
// Super-Poissonian at every frequency; valid for omega >> sqrt(alpha N).
double closed_detection_spectrum(int n_atoms, double loss_rate, double omega);

// Steady state of the pumped, lossy cavity: <m> = J/alpha and
// 2<n> - N = alpha (gain minus absorption balances the linear loss).
struct SteadyState {
  double mean_m = 0.0;
  double mean_n = 0.0;
  double pump_rate = 0.0;
  double loss_rate = 0.0;
  int n_atoms = 0;
};

SteadyState steady_state(int n_atoms, double loss_rate, double pump_rate);

// Quantum-count variance of the quiet-pump laser:
//   var(m)/<m> = (N+alpha)/(4<m>) + 1/2.
double laser_quanta_variance(int n_atoms, double loss_rate,
                             double mean_quanta);

// Detection-rate spectrum of the quiet-pump laser:
//   S_dq/Q - 1 = [ ((N+alpha)/(4 alpha <m>^2)) omega^2 - 1 ]
//              / [ (omega/alpha)^2 + (1 - omega^2/(2 alpha <m>))^2 ],
// with Q = alpha <m>.  Exactly zero at omega = 0.
double laser_detection_spectrum(int n_atoms, double loss_rate,
                                double mean_quanta, double omega);

// Large optical power limit of the above, as the dimensionless ratio
//   S_dq/Q = 1 - 1/((omega/alpha)^2 + 1),  in [0, 1).
double laser_detection_spectrum_large_power(double loss_rate, double omega);

// Transfer coefficients of the linearized laser equations,
//   dm = c_ea (e - a) + c_q q,
//   c_ea = j omega / D,  c_q = -(2<m> + j omega) / D,
//   D = j omega 2<m> + 2 alpha <m> - omega^2,
// for uncorrelated white sources of densities S_{e-a} = E + A = N <m> and
// S_q = Q = alpha <m> at the operating point <n> = (N+alpha)/2.
struct QuantaTransfer {
  std::complex<double> c_ea;
  std::complex<double> c_q;
};

QuantaTransfer quanta_transfer(int n_atoms, double loss_rate,
                               double mean_quanta, double omega);

// Spectra rebuilt from the transfer coefficients; must agree with the
// closed forms above to numerical precision.
double rebuilt_quanta_spectrum(int n_atoms, double loss_rate,
                               double mean_quanta, double omega);
double rebuilt_detection_spectrum(int n_atoms, double loss_rate,
                                  double mean_quanta, double omega);

// Location of the maximum of laser_detection_spectrum over omega > 0
// (the relaxation-oscillation bump), found numerically.
double relaxation_peak_frequency(int n_atoms, double loss_rate,
                                 double mean_quanta);

// Logarithmic frequency grid from alpha/100 to
// 100 * max(alpha, sqrt(2 alpha <m>)); covers the baseband suppression,
// the relaxation bump and the shot-noise floor.
std::vector<double> log_frequency_grid(double loss_rate, double mean_quanta,
                                       int points);

}  // namespace lasernoise
