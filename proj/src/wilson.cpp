#include <vector>

#include "dimerlab/crsf.hpp"
#include "dimerlab/rng.hpp"

namespace dimerlab {

Crsf wilson_sample(GraphPtr g, std::uint64_t seed) {
  constexpr long long kStepCap = 1000000000LL;
  const int nv = g->vertex_count();
  SplitMix64 rng(seed);

  std::vector<std::vector<int>> darts(nv);
  std::vector<std::vector<double>> cumulative(nv);
  for (int v = 0; v < nv; ++v) {
    double acc = 0.0;
    for (int d : g->out_darts(v)) {
      if (g->dart(d).conductance <= 0.0) continue;
      acc += g->dart(d).conductance;
      darts[v].push_back(d);
      cumulative[v].push_back(acc);
    }
  }
  auto step = [&](int v) {
    const double x = rng.uniform() * cumulative[v].back();
    std::size_t k = 0;
    while (k + 1 < cumulative[v].size() && x >= cumulative[v][k]) ++k;
    return darts[v][k];
  };

  std::vector<bool> in_forest(nv, false);
  std::vector<int> field(nv, -1);
  std::vector<int> pos(nv, -1);
  std::vector<int> path;                // vertices of the current loop-erased walk
  std::vector<int> path_dart;           // dart taken from path[i]
  std::vector<HomologyClass> path_class;  // class accumulated up to path[i]
  long long steps = 0;

  for (int start = 0; start < nv; ++start) {
    if (in_forest[start]) continue;
    path = {start};
    path_dart.clear();
    path_class = {HomologyClass{}};
    pos[start] = 0;
    while (true) {
      if (++steps > kStepCap) throw NumericalError("Wilson sampler exceeded 1e9 steps");
      const int x = path.back();
      const int d = step(x);
      const int y = g->dart(d).head;
      const HomologyClass h = path_class.back() + g->dart(d).crossing;
      path_dart.push_back(d);
      if (in_forest[y]) break;
      if (pos[y] >= 0) {
        if ((h - path_class[pos[y]]).is_zero()) {
          // Contractible loop: erase it.
          const int keep = pos[y] + 1;
          for (std::size_t i = keep; i < path.size(); ++i) pos[path[i]] = -1;
          path.resize(keep);
          path_class.resize(keep);
          path_dart.resize(keep - 1);
          continue;
        }
        break;  // noncontractible loop: freeze it as a root cycle
      }
      pos[y] = int(path.size());
      path.push_back(y);
      path_class.push_back(h);
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      field[path[i]] = path_dart[i];
      in_forest[path[i]] = true;
      pos[path[i]] = -1;
    }
  }
  return make_crsf(std::move(g), std::move(field));
}

}  // namespace dimerlab
