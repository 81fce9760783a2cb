#pragma once

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dimerlab/special_functions.hpp"
#include "dimerlab/twisted_laplacian.hpp"

namespace dimerlab {

// Law of a class in H_1(torus, Z).
struct HeightLaw {
  std::map<HomologyClass, double> p;
  std::complex<double> tau;
  int M = 0;              // character grid size, 0 when not from inversion
  double aliasing = 0.0;  // mass difference against grid M + 2

  double operator()(HomologyClass h) const {
    auto it = p.find(h);
    return it == p.end() ? 0.0 : it->second;
  }
  double total() const;
};

HeightLaw point_mass(HomologyClass h);
HeightLaw from_discrete_gaussian(const DiscreteGaussian& g);

// Z^(chi) = -det D_chi + 1/2 sum_eps det D_(eps chi), returned as a value
// scaled by exp(-shift) so large graphs do not overflow.
std::complex<double> zhat_scaled(GraphPtr g, const Character& chi, double shift);
std::complex<double> zhat(GraphPtr g, const Character& chi);

// Z^(chi) / Z^(1).
std::complex<double> char_fun(GraphPtr g, const Character& chi);

// Inversion of Z^ on the (j/M, k/M) grid for |r|, |s| <= (M-1)/2, with the
// aliasing estimate from grid M + 2.  Throws AliasingError above `max_aliasing`.
HeightLaw height_law_exact(GraphPtr g, int M, double max_aliasing = 1e-6);
// Same, without the M + 2 comparison (aliasing left at 0).
HeightLaw invert_on_grid(GraphPtr g, int M);

class AliasingError : public NumericalError {
 public:
  AliasingError(double estimate, int M);
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

// Law of [m] by exhaustive matching enumeration, weighted by w(m).
HeightLaw enumeration_law(GraphPtr g);

double tv_distance(const HeightLaw& p, const HeightLaw& q);

struct SweepRow {
  int n = 0;
  std::complex<double> tau;
  int M = 0;
  double tv = 0.0;
  double aliasing = 0.0;
  double seconds = 0.0;
};

// Square torus closest to modulus tau at mesh 1/n: shift (round(n Re tau), round(n Im tau)).
std::pair<int, int> shift_for(int n, std::complex<double> tau);

// TV distance between the exact law on the n-torus and the discrete Gaussian
// at that torus' modulus, for each n.
std::vector<SweepRow> convergence_sweep(const std::vector<int>& sizes, std::complex<double> tau, int M);
// True when tv never increases by more than `slack` from one size to the next.
bool tv_nonincreasing(const std::vector<SweepRow>& rows, double slack = 1e-3);

// Header n,tau_re,tau_im,M,tv,aliasing,seconds.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace dimerlab
