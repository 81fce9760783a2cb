#include "dimerlab/monte_carlo.hpp"

#include <cmath>

#include "dimerlab/dimer_height.hpp"
#include "dimerlab/parallel.hpp"
#include "dimerlab/rng.hpp"

namespace dimerlab {

int max_root_cycles(const TorusGraph& g) { return g.vertex_count() / systole(g); }

EmpiricalLaw mc_height_law(GraphPtr g, long samples, std::uint64_t seed, int threads) {
  if (samples < 100) throw PreconditionError("at least 100 samples are required");
  if (!g->symmetric_conductances()) throw PreconditionError("Monte Carlo sampling requires symmetric conductances");
  const TemperleyanGraph G(g);
  const int k_max = max_root_cycles(*g);

  std::vector<HomologyClass> classes(samples);
  std::vector<long> proposals(samples, 0);
  parallel_for(int(samples), threads > 0 ? threads : default_threads(), [&](int i) {
    SplitMix64 rng = SplitMix64::stream(seed, std::uint64_t(i));
    while (true) {
      ++proposals[i];
      Crsf f = wilson_sample(g, rng.next());
      if (rng.uniform() >= std::ldexp(1.0, f.cycle_count() - k_max)) continue;
      std::vector<int> orient(f.cycle_count());
      for (int& o : orient) o = rng.coin() ? 1 : -1;
      const Crsf fs = dual_crsf(f, G.dual(), orient);
      classes[i] = class_of(G, temperley_forward(G, f, fs));
      return;
    }
  });

  EmpiricalLaw out;
  out.samples = samples;
  out.law.tau = g->modulus().tau();
  for (long i = 0; i < samples; ++i) {
    out.law.p[classes[i]] += 1.0;
    out.proposals += proposals[i];
  }
  for (auto& [h, x] : out.law.p) {
    x /= double(samples);
    out.std_error[h] = std::sqrt(x * (1.0 - x) / double(samples));
  }
  return out;
}

}  // namespace dimerlab
