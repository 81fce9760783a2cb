#include "dimerlab/crsf.hpp"

#include <algorithm>

namespace dimerlab {

double Crsf::weight() const {
  double w = 1.0;
  for (int d : field) w *= graph->dart(d).conductance;
  return w;
}

HomologyClass Crsf::total_class() const {
  HomologyClass h;
  for (auto c : cycle_classes) h += c;
  return h;
}

std::vector<int> Crsf::support() const {
  std::vector<int> s;
  for (int d : field) s.push_back(std::min(d, graph->dart(d).reverse));
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

// Cycles of the functional graph v -> head(field[v]).
void find_cycles(const TorusGraph& g, const std::vector<int>& field, std::vector<std::vector<int>>& cycles) {
  const int nv = g.vertex_count();
  std::vector<int> state(nv, 0);  // 0 new, 1 on current path, 2 done
  std::vector<int> path;
  for (int s = 0; s < nv; ++s) {
    if (state[s]) continue;
    path.clear();
    int x = s;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = g.dart(field[x]).head;
    }
    if (state[x] == 1) {
      // x is on the current path: the cycle is the path suffix from x.
      std::vector<int> verts(std::find(path.begin(), path.end(), x), path.end());
      const auto lo = std::min_element(verts.begin(), verts.end()) - verts.begin();
      std::rotate(verts.begin(), verts.begin() + lo, verts.end());
      std::vector<int> cyc;
      for (int v : verts) cyc.push_back(field[v]);
      cycles.push_back(std::move(cyc));
    }
    for (int v : path) state[v] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [&](const auto& a, const auto& b) { return g.dart(a[0]).tail < g.dart(b[0]).tail; });
}

}  // namespace

Crsf make_crsf(GraphPtr g, std::vector<int> field) {
  if (int(field.size()) != g->vertex_count()) throw InvariantError("vector field size does not match vertex count");
  for (int v = 0; v < g->vertex_count(); ++v)
    if (field[v] < 0 || field[v] >= g->dart_count() || g->dart(field[v]).tail != v)
      throw InvariantError("vector field dart does not leave vertex " + std::to_string(v));
  Crsf f;
  f.graph = std::move(g);
  f.field = std::move(field);
  find_cycles(*f.graph, f.field, f.root_cycles);
  for (const auto& c : f.root_cycles) f.cycle_classes.push_back(f.graph->walk_class(c));
  return f;
}

bool is_incompressible(const Crsf& f) {
  return std::none_of(f.cycle_classes.begin(), f.cycle_classes.end(), [](HomologyClass h) { return h.is_zero(); });
}

double vector_field_count(const TorusGraph& g) {
  double count = 1.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int k = 0;
    for (int d : g.out_darts(v)) k += g.dart(d).conductance > 0.0;
    count *= k;
  }
  return count;
}

std::vector<Crsf> enumerate_crsfs(GraphPtr g) {
  if (vector_field_count(*g) > kCrsfEnumerationLimit)
    throw PreconditionError("CRSF enumeration exceeds the 1e7 vector-field guard");
  const int nv = g->vertex_count();
  std::vector<std::vector<int>> choices(nv);
  for (int v = 0; v < nv; ++v) {
    for (int d : g->out_darts(v))
      if (g->dart(d).conductance > 0.0) choices[v].push_back(d);
    std::sort(choices[v].begin(), choices[v].end());
  }
  std::vector<Crsf> out;
  std::vector<int> digit(nv, 0);
  std::vector<int> field(nv);
  std::vector<std::vector<int>> cycles;
  while (true) {
    for (int v = 0; v < nv; ++v) field[v] = choices[v][digit[v]];
    cycles.clear();
    find_cycles(*g, field, cycles);
    const bool ok = std::none_of(cycles.begin(), cycles.end(), [&](const auto& c) { return g->walk_class(c).is_zero(); });
    if (ok) out.push_back(make_crsf(g, field));
    // Odometer with the last vertex varying fastest: lexicographic order.
    int v = nv - 1;
    while (v >= 0 && ++digit[v] == int(choices[v].size())) digit[v--] = 0;
    if (v < 0) break;
  }
  return out;
}

std::complex<double> forman_sum(GraphPtr g, const Character& chi) {
  std::complex<double> sum = 0.0;
  for (const Crsf& f : enumerate_crsfs(g)) {
    std::complex<double> term = f.weight();
    for (auto h : f.cycle_classes) term *= 1.0 - chi(h);
    sum += term;
  }
  return sum;
}

Crsf dual_crsf(const Crsf& f, GraphPtr dual, const std::vector<int>& orientations) {
  if (!is_incompressible(f)) throw PreconditionError("dual CRSF requires an incompressible CRSF");
  if (int(orientations.size()) != f.cycle_count())
    throw PreconditionError("need one orientation per root cycle");
  const TorusGraph& g = *f.graph;
  if (dual->vertex_count() != g.face_count() || dual->dart_count() != g.dart_count())
    throw PreconditionError("graph passed as dual does not match the forest's graph");

  std::vector<bool> used(g.dart_count(), false);
  for (int d : f.field) used[d] = used[g.dart(d).reverse] = true;

  const int nf = dual->vertex_count();
  // Remaining dual darts at each dual vertex (both directions of each free edge).
  std::vector<std::vector<int>> at(nf);
  std::vector<bool> alive(g.dart_count(), false);
  for (int d = 0; d < g.dart_count(); ++d) {
    if (used[d]) continue;
    alive[d] = true;
    at[dual->dart(d).tail].push_back(d);
  }
  std::vector<int> degree(nf);
  for (int x = 0; x < nf; ++x) degree[x] = int(at[x].size());

  std::vector<int> field(nf, -1);
  std::vector<int> leaves;
  for (int x = 0; x < nf; ++x)
    if (degree[x] == 1) leaves.push_back(x);
  while (!leaves.empty()) {
    const int x = leaves.back();
    leaves.pop_back();
    if (degree[x] != 1) continue;
    int out = -1;
    for (int d : at[x])
      if (alive[d]) out = d;
    if (out < 0) throw InvariantError("dual forest peeling lost an edge");
    field[x] = out;
    alive[out] = alive[dual->dart(out).reverse] = false;
    degree[x] = 0;
    const int y = dual->dart(out).head;
    if (--degree[y] == 1) leaves.push_back(y);
  }

  // What is left is a disjoint union of cycles.
  const HomologyClass ref = f.cycle_classes.front();
  std::vector<int> done(nf, 0);
  int k = 0;
  for (int s = 0; s < nf; ++s) {
    if (field[s] >= 0 || done[s]) continue;
    if (degree[s] != 2) throw InvariantError("complement of a CRSF is not a dual CRSF");
    std::vector<int> walk;
    int x = s;
    int came = -1;
    do {
      int next = -1;
      for (int d : at[x])
        if (alive[d] && (came < 0 || d != dual->dart(came).reverse)) {
          next = d;
          break;
        }
      if (next < 0) throw InvariantError("broken dual cycle");
      walk.push_back(next);
      done[x] = 1;
      came = next;
      x = dual->dart(next).head;
    } while (x != s);
    if (k >= int(orientations.size())) throw InvariantError("dual forest has more cycles than the primal");
    const HomologyClass h = dual->walk_class(walk);
    int sign;
    if (h == ref) sign = 1;
    else if (h == -ref) sign = -1;
    else throw InvariantError("dual root cycle is not parallel to the primal root cycles");
    if (sign != orientations[k]) {
      std::reverse(walk.begin(), walk.end());
      for (int& d : walk) d = dual->dart(d).reverse;
    }
    for (int d : walk) field[dual->dart(d).tail] = d;
    ++k;
  }
  if (k != f.cycle_count()) throw InvariantError("dual forest has a different number of root cycles");
  return make_crsf(std::move(dual), std::move(field));
}

}  // namespace dimerlab
