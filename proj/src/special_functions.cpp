#include "dimerlab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dimerlab {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr cd I{0.0, 1.0};

void require_upper(cd tau) {
  if (!(tau.imag() > 0.0)) throw PreconditionError("theta functions need Im(tau) > 0");
}

// Calls f(a, b, point) for every a*b1 + b*b2 within distance `radius` of `center`.
template <class F>
void lattice_ball(cd b1, cd b2, cd center, double radius, F&& f) {
  const double cross = std::abs(b1.real() * b2.imag() - b1.imag() * b2.real());
  const double h = cross / std::abs(b1);
  // Coordinate of the center along b2, measured by the height above the b1 line.
  const double yc = (b1.real() * center.imag() - b1.imag() * center.real()) /
                    (b1.real() * b2.imag() - b1.imag() * b2.real());
  const long blo = long(std::floor(yc - radius / h)) - 1;
  const long bhi = long(std::ceil(yc + radius / h)) + 1;
  const double r2 = radius * radius;
  for (long b = blo; b <= bhi; ++b) {
    const cd off = double(b) * b2 - center;
    const double a0 = -(off * std::conj(b1)).real() / std::norm(b1);
    const long alo = long(std::floor(a0 - radius / std::abs(b1))) - 1;
    const long ahi = long(std::ceil(a0 + radius / std::abs(b1))) + 1;
    for (long a = alo; a <= ahi; ++a) {
      const cd x = double(a) * b1 + double(b) * b2;
      if (std::norm(x - center) <= r2) f(a, b, x);
    }
  }
}

double phase_cos(const Character& chi, long r, long s) {
  // Reduce before scaling, as Character does.
  double t = double(r) * chi.u() + double(s) * chi.v();
  t -= std::floor(t);
  return std::cos(2.0 * pi * t);
}

}  // namespace

cd theta_odd(cd w, cd tau) {
  require_upper(tau);
  cd sum = 0.0;
  double largest = 0.0;
  const double turn = std::abs(w.imag()) / tau.imag() + 1.0;
  for (long n = 0;; ++n) {
    double biggest_now = 0.0;
    for (long m : {n, -n - 1}) {
      const double k = double(m) + 0.5;
      const cd term = (m % 2 == 0 ? 1.0 : -1.0) * std::exp(I * pi * tau * k * k + double(2 * m + 1) * I * pi * w);
      sum += term;
      biggest_now = std::max(biggest_now, std::abs(term));
    }
    largest = std::max(largest, biggest_now);
    if (double(n) > turn && biggest_now < 1e-18 * largest) break;
    if (n > 100000) throw NumericalError("theta series did not converge");
  }
  return -I * sum;
}

cd theta_odd_product(cd w, cd tau) {
  require_upper(tau);
  const cd q = std::exp(I * pi * tau);
  const cd z = std::exp(2.0 * I * pi * w);
  cd prod = 2.0 * std::exp(I * pi * tau / 4.0) * std::sin(pi * w);
  const double zmax = std::max(std::abs(z), 1.0 / std::abs(z));
  cd q2n = 1.0;
  for (int n = 1;; ++n) {
    q2n *= q * q;
    prod *= (1.0 - q2n) * (1.0 - q2n * z) * (1.0 - q2n / z);
    if (std::abs(q2n) * zmax < 1e-18) break;
    if (n > 100000) throw NumericalError("theta product did not converge");
  }
  return prod;
}

cd dedekind_eta(cd tau) {
  require_upper(tau);
  const cd q2 = std::exp(2.0 * I * pi * tau);
  cd prod = std::exp(I * pi * tau / 12.0);
  cd q2n = 1.0;
  for (int n = 1;; ++n) {
    q2n *= q2;
    prod *= 1.0 - q2n;
    if (std::abs(q2n) < 1e-18) break;
    if (n > 100000) throw NumericalError("eta product did not converge");
  }
  return prod;
}

double theta_modulus_sq(const Character& chi, cd tau) {
  const double u = chi.u(), v = chi.v();
  return std::norm(std::exp(I * pi * v * v * tau) * theta_odd(u - v * tau, tau));
}

double theta_modulus_sq_swapped(const Character& chi, cd tau) {
  const double u = chi.u(), v = chi.v();
  return std::norm(std::exp(I * pi * v * v * tau) * theta_odd(v - u * tau, tau));
}

double torsion_T(const Character& chi, cd tau) {
  return std::sqrt(theta_modulus_sq(chi, tau)) / std::abs(dedekind_eta(tau));
}

double signed_gaussian_sum(const Character& chi, cd tau) {
  require_upper(tau);
  const double y = tau.imag();
  // Terms below exp(-45) relative to the central one are dropped.
  const double radius = std::sqrt(45.0 * 2.0 * y / pi);
  double sum = 0.0;
  lattice_ball(1.0, tau, 0.0, radius, [&](long s, long r, cd l) {
    const long e = (s - 1) * (r - 1) + 1;
    const double sign = (e % 2 == 0) ? 1.0 : -1.0;
    sum += sign * phase_cos(chi, r, s) * std::exp(-pi * std::norm(l) / (2.0 * y));
  });
  return sum / std::sqrt(2.0 * y);
}

double poisson_identity_residual(const Character& chi, cd tau) {
  return std::abs(theta_modulus_sq(chi, tau) - signed_gaussian_sum(chi, tau));
}

double poisson_identity_residual_swapped(const Character& chi, cd tau) {
  return std::abs(theta_modulus_sq_swapped(chi, tau) - signed_gaussian_sum(chi, tau));
}

double torsion_heat_kernel_log_ratio(const Character& chi, const Character& chi_prime, cd tau) {
  require_upper(tau);
  if (chi.is_trivial() || chi_prime.is_trivial()) throw PreconditionError("heat-kernel ratio needs nontrivial characters");
  if (chi == chi_prime) return 0.0;
  const double y = tau.imag();
  const cd e1 = cd(1.0, -tau.real() / y);
  const cd e2 = cd(0.0, 1.0 / y);
  auto kappa = [&](const Character& c) { return cd(c.v(), (c.u() - c.v() * tau.real()) / y); };
  const cd k0 = kappa(chi), k1 = kappa(chi_prime);

  // Distance from kappa to the dual lattice controls the decay at large t;
  // the shortest lattice vector controls the decay at small t.
  auto dual_gap = [&](cd k) {
    double best = std::numeric_limits<double>::infinity();
    lattice_ball(e1, e2, k, std::abs(e1) + std::abs(e2), [&](long, long, cd x) { best = std::min(best, std::abs(x - k)); });
    return best;
  };
  double shortest = std::numeric_limits<double>::infinity();
  lattice_ball(1.0, tau, 0.0, 1.0 + std::abs(tau), [&](long a, long b, cd x) {
    if (a != 0 || b != 0) shortest = std::min(shortest, std::abs(x));
  });
  const double gap = std::min(dual_gap(k0), dual_gap(k1));
  constexpr double kDecay = 50.0;
  const double s_lo = std::log(shortest * shortest / (2.0 * kDecay));
  const double s_hi = std::log(kDecay / (2.0 * pi * pi * gap * gap));
  const double t_switch = y / (2.0 * pi);

  auto integrand = [&](double t) {
    double sum = 0.0;
    if (t < t_switch) {
      lattice_ball(1.0, tau, 0.0, std::sqrt(2.0 * kDecay * t), [&](long s, long r, cd l) {
        if (r == 0 && s == 0) return;
        sum += (phase_cos(chi_prime, r, s) - phase_cos(chi, r, s)) * std::exp(-std::norm(l) / (2.0 * t));
      });
      return sum / (2.0 * pi * t * t);
    }
    const double radius = std::sqrt(kDecay / (2.0 * pi * pi * t));
    lattice_ball(e1, e2, k1, radius, [&](long, long, cd x) { sum += std::exp(-2.0 * pi * pi * t * std::norm(x - k1)); });
    lattice_ball(e1, e2, k0, radius, [&](long, long, cd x) { sum -= std::exp(-2.0 * pi * pi * t * std::norm(x - k0)); });
    return sum / (t * y);
  };

  // Trapezoid rule in s = log t, refined until two levels agree.
  auto f = [&](double s) {
    const double t = std::exp(s);
    return integrand(t) * t;
  };
  int n = 64;
  double h = (s_hi - s_lo) / n;
  double total = 0.5 * (f(s_lo) + f(s_hi));
  for (int k = 1; k < n; ++k) total += f(s_lo + k * h);
  double estimate = total * h;
  for (int level = 0; level < 16; ++level) {
    for (int k = 0; k < n; ++k) total += f(s_lo + (k + 0.5) * h);
    n *= 2;
    h *= 0.5;
    const double next = total * h;
    if (std::abs(next - estimate) <= 1e-12 * std::max(1.0, std::abs(next))) return -y * next;
    estimate = next;
  }
  throw NumericalError("heat-kernel quadrature did not converge");
}

DiscreteGaussian discrete_gaussian(cd tau) {
  require_upper(tau);
  const double y = tau.imag();
  // exp(-40) per point keeps the discarded tail far below 1e-15.
  const double radius = std::sqrt(40.0 * 2.0 * y / pi);
  DiscreteGaussian g;
  g.tau = tau;
  lattice_ball(1.0, tau, 0.0, radius, [&](long s, long r, cd l) {
    const double w = std::exp(-pi * std::norm(l) / (2.0 * y));
    g.p[HomologyClass{int(r), int(s)}] = w;
    g.normalization += w;
  });
  for (auto& [h, w] : g.p) w /= g.normalization;
  return g;
}

}  // namespace dimerlab
