#pragma once

#include <cstdint>
#include <map>

#include "dimerlab/distribution.hpp"

namespace dimerlab {

struct EmpiricalLaw {
  HeightLaw law;
  std::map<HomologyClass, double> std_error;  // binomial standard error per class
  long samples = 0;
  long proposals = 0;  // Wilson samples drawn, including rejected ones
};

// Largest possible number of root cycles: |V| / systole.
int max_root_cycles(const TorusGraph& g);

// Monte Carlo law of [m].  Each sample: Wilson CRSF accepted with probability
// 2^(k - k_max) (the dimer measure weights a CRSF with k cycles by 2^k), then
// uniform dual orientations, Temperley's bijection and class_of.  Sample i
// uses its own stream, so the result does not depend on the thread count.
EmpiricalLaw mc_height_law(GraphPtr g, long samples, std::uint64_t seed, int threads = 0);

}  // namespace dimerlab
