#pragma once

#include <complex>
#include <map>

#include "dimerlab/homology.hpp"

namespace dimerlab {

// Odd Jacobi theta, nome q = exp(i pi tau):
// theta(w|tau) = -i sum_n (-1)^n q^((n+1/2)^2) exp((2n+1) i pi w).
std::complex<double> theta_odd(std::complex<double> w, std::complex<double> tau);
// Product form 2 q^(1/4) sin(pi w) prod (1 - q^2n)(1 - q^2n e^(2 i pi w))(1 - q^2n e^(-2 i pi w)).
std::complex<double> theta_odd_product(std::complex<double> w, std::complex<double> tau);

// eta(tau) = q^(1/12) prod (1 - q^2n).
std::complex<double> dedekind_eta(std::complex<double> tau);

// T(chi) = |eta^-1 exp(i pi v^2 tau) theta(u - v tau | tau)|.
double torsion_T(const Character& chi, std::complex<double> tau);

// |exp(i pi v^2 tau) theta(u - v tau | tau)|^2, the form whose Fourier
// coefficients are the signed Gaussian weights.
double theta_modulus_sq(const Character& chi, std::complex<double> tau);
// The same with the roles of u and v exchanged inside theta:
// |exp(i pi v^2 tau) theta(v - u tau | tau)|^2.
double theta_modulus_sq_swapped(const Character& chi, std::complex<double> tau);

// sum_{r,s} chi(r tau + s) (-1)^((s-1)(r-1)+1) (2 Im tau)^(-1/2) exp(-pi |r tau + s|^2 / (2 Im tau)).
double signed_gaussian_sum(const Character& chi, std::complex<double> tau);

// |theta_modulus_sq - signed_gaussian_sum|.
double poisson_identity_residual(const Character& chi, std::complex<double> tau);
// Same residual against the swapped theta form.
double poisson_identity_residual_swapped(const Character& chi, std::complex<double> tau);

// -Im(tau) int_0^inf (2 pi t^2)^-1 sum_l (chi'(l) - chi(l)) exp(-|l|^2 / 2t) dt,
// which equals 2 log(T(chi') / T(chi)).
double torsion_heat_kernel_log_ratio(const Character& chi, const Character& chi_prime, std::complex<double> tau);

// Law on Z + tau Z with mass proportional to exp(-pi |r tau + s|^2 / (2 Im tau)).
struct DiscreteGaussian {
  std::complex<double> tau;
  std::map<HomologyClass, double> p;  // normalized
  double normalization = 0.0;         // sum of the unnormalized weights

  double operator()(HomologyClass h) const {
    auto it = p.find(h);
    return it == p.end() ? 0.0 : it->second;
  }
};
DiscreteGaussian discrete_gaussian(std::complex<double> tau);

}  // namespace dimerlab
