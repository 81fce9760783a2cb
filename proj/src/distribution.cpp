#include "dimerlab/distribution.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>

#include "dimerlab/dimer_height.hpp"
#include "dimerlab/parallel.hpp"

namespace dimerlab {

namespace {
std::atomic<int> g_threads{0};
}

int default_threads() {
  const int n = g_threads.load();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(int n) { g_threads.store(n); }

double HeightLaw::total() const {
  double s = 0.0;
  for (const auto& [h, x] : p) s += x;
  return s;
}

HeightLaw point_mass(HomologyClass h) {
  HeightLaw law;
  law.p[h] = 1.0;
  return law;
}

HeightLaw from_discrete_gaussian(const DiscreteGaussian& g) {
  HeightLaw law;
  law.p = g.p;
  law.tau = g.tau;
  return law;
}

AliasingError::AliasingError(double estimate, int M)
    : NumericalError("aliasing estimate " + std::to_string(estimate) + " at M=" + std::to_string(M) +
                     " exceeds tolerance; use a larger M"),
      estimate_(estimate) {}

namespace {

// The five determinants behind Z^(chi): chi itself and its four sign twists.
std::array<LogDet, 4> sign_twists(GraphPtr g, const Character& chi) {
  std::array<LogDet, 4> out;
  for (int eb = 0; eb < 2; ++eb)
    for (int ea = 0; ea < 2; ++ea) out[2 * eb + ea] = laplacian_det(g, chi.shifted_by_sign(eb, ea));
  return out;
}

double max_log(const std::array<LogDet, 4>& d) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& x : d)
    if (!x.zero) m = std::max(m, x.log_modulus);
  return m;
}

// Index 0 of sign_twists is chi itself.
std::complex<double> combine(const std::array<LogDet, 4>& d, double shift) {
  std::complex<double> z = -d[0].scaled(shift);
  for (const auto& x : d) z += 0.5 * x.scaled(shift);
  return z;
}

}  // namespace

std::complex<double> zhat_scaled(GraphPtr g, const Character& chi, double shift) {
  return combine(sign_twists(std::move(g), chi), shift);
}

std::complex<double> zhat(GraphPtr g, const Character& chi) { return zhat_scaled(std::move(g), chi, 0.0); }

std::complex<double> char_fun(GraphPtr g, const Character& chi) {
  const auto d1 = sign_twists(g, Character());
  const auto dc = sign_twists(g, chi);
  const double shift = std::max(max_log(d1), max_log(dc));
  const std::complex<double> z1 = combine(d1, shift);
  if (!(z1.real() > 0.0)) throw NumericalError("Z^(1) is not positive");
  return combine(dc, shift) / z1;
}

HeightLaw invert_on_grid(GraphPtr g, int M) {
  if (M < 5 || M % 2 == 0) throw PreconditionError("character grid size M must be odd and at least 5");
  std::vector<std::array<LogDet, 4>> dets(M * M);
  parallel_for(M * M, default_threads(), [&](int idx) {
    dets[idx] = sign_twists(g, Character(double(idx / M) / M, double(idx % M) / M));
  });
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& d : dets) shift = std::max(shift, max_log(d));
  std::vector<std::complex<double>> z(M * M);
  for (int idx = 0; idx < M * M; ++idx) z[idx] = combine(dets[idx], shift);
  const double z1 = z[0].real();
  if (!(z1 > 0.0)) throw NumericalError("Z^(1) is not positive");

  HeightLaw law;
  law.tau = g->modulus().tau();
  law.M = M;
  const int h = (M - 1) / 2;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int r = -h; r <= h; ++r) {
    for (int s = -h; s <= h; ++s) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < M; ++j)
        for (int k = 0; k < M; ++k) {
          // Exact integer phase reduction keeps the sum order-stable.
          const int t = ((r * j + s * k) % M + M) % M;
          acc += z[j * M + k] * std::polar(1.0, -two_pi * t / M);
        }
      law.p[HomologyClass{r, s}] = acc.real() / (double(M) * M * z1);
    }
  }
  const double total = law.total();
  for (auto& [c, x] : law.p) x /= total;
  return law;
}

HeightLaw height_law_exact(GraphPtr g, int M, double max_aliasing) {
  HeightLaw law = invert_on_grid(g, M);
  const HeightLaw wider = invert_on_grid(g, M + 2);
  double diff = 0.0;
  for (const auto& [c, x] : law.p) diff += std::abs(x - wider(c));
  law.aliasing = diff;
  if (diff > max_aliasing) throw AliasingError(diff, M);
  return law;
}

HeightLaw enumeration_law(GraphPtr g) {
  const TemperleyanGraph G(g);
  HeightLaw law;
  law.tau = g->modulus().tau();
  double total = 0.0;
  for (const Matching& m : enumerate_matchings(G)) {
    law.p[class_of(G, m)] += m.weight;
    total += m.weight;
  }
  for (auto& [c, x] : law.p) x /= total;
  return law;
}

double tv_distance(const HeightLaw& p, const HeightLaw& q) {
  double s = 0.0;
  for (const auto& [c, x] : p.p) s += std::abs(x - q(c));
  for (const auto& [c, x] : q.p)
    if (!p.p.count(c)) s += std::abs(x);
  return 0.5 * s;
}

std::pair<int, int> shift_for(int n, std::complex<double> tau) {
  const int sx = int(std::lround(n * tau.real()));
  const int sy = int(std::lround(n * tau.imag()));
  if (sy < 1) throw PreconditionError("mesh too coarse for this modulus");
  return {sx, sy};
}

std::vector<SweepRow> convergence_sweep(const std::vector<int>& sizes, std::complex<double> tau, int M) {
  std::vector<SweepRow> rows;
  for (int n : sizes) {
    const auto start = std::chrono::steady_clock::now();
    const auto [sx, sy] = shift_for(n, tau);
    const GraphPtr g = build_square_torus(n, sx, sy);
    const HeightLaw law = height_law_exact(g, M);
    const HeightLaw target = from_discrete_gaussian(discrete_gaussian(g->modulus().tau()));
    SweepRow row;
    row.n = n;
    row.tau = g->modulus().tau();
    row.M = M;
    row.tv = tv_distance(law, target);
    row.aliasing = law.aliasing;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  return rows;
}

bool tv_nonincreasing(const std::vector<SweepRow>& rows, double slack) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].tv > rows[i - 1].tv + slack) return false;
  return true;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "n,tau_re,tau_im,M,tv,aliasing,seconds\n";
  os << std::setprecision(17);
  for (const auto& r : rows)
    os << r.n << ',' << r.tau.real() << ',' << r.tau.imag() << ',' << r.M << ',' << r.tv << ',' << r.aliasing << ','
       << std::setprecision(6) << r.seconds << std::setprecision(17) << '\n';
}

}  // namespace dimerlab
