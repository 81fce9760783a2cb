#include "dimerlab/dimer_height.hpp"

namespace dimerlab {

HeightForm one_form(const TemperleyanGraph& G, const Matching& m) {
  HeightForm w;
  w.value.assign(G.edge_count(), 0);
  for (int e : m.white_edge) w.value[e] = 1;
  return w;
}

std::vector<int> d_omega(const TemperleyanGraph& G, const HeightForm& w) {
  // The dual of (b w), oriented b -> w turned a quarter counterclockwise,
  // runs counterclockwise around b and clockwise around w.
  std::vector<int> out(G.black_count() + G.white_count(), 0);
  for (int e = 0; e < G.edge_count(); ++e) {
    out[G.edge(e).black] += w(e, 1);
    out[G.black_count() + G.edge(e).white] += w(e, -1);
  }
  return out;
}

int integrate_beside(const TemperleyanGraph& G, const HeightForm& w, const std::vector<int>& walk, int side) {
  const TorusGraph& g = *G.primal();
  const int nd = g.dart_count();
  int sum = 0;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const int d = walk[i];
    const int back = g.dart(d).reverse;
    const int next = walk[(i + 1) % walk.size()];
    if (side > 0) {
      sum += w(nd + back, 1);
      for (int x = g.ccw(next); x != back; x = g.ccw(x)) sum += w(x, -1);
    } else {
      sum += w(nd + d, -1);
      for (int x = g.ccw(back); x != next; x = g.ccw(x)) sum += w(x, 1);
    }
  }
  return sum;
}

HomologyClass periods(const TemperleyanGraph& G, const Matching& m, int frame_sign) {
  if (G.basis_cycle_A().empty() || G.basis_cycle_B().empty())
    throw PreconditionError("no positive-conductance primal cycle in a basis class");
  const HeightForm w = one_form(G, m);
  const int along_a = frame_sign * integrate_beside(G, w, G.basis_cycle_A());
  const int along_b = frame_sign * integrate_beside(G, w, G.basis_cycle_B());
  // [m].[A] = -r and [m].[B] = s.
  return {-along_a, along_b};
}

}  // namespace dimerlab
