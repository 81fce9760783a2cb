#include "dimerlab/torus_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

namespace dimerlab {

namespace {

using Key = std::tuple<int, int, int, int>;

void pair_reverses(std::vector<Dart>& darts) {
  const bool given = std::all_of(darts.begin(), darts.end(), [](const Dart& d) { return d.reverse >= 0; });
  if (given) {
    for (int d = 0; d < int(darts.size()); ++d) {
      const int r = darts[d].reverse;
      if (r >= int(darts.size()) || r == d || darts[r].reverse != d || darts[r].tail != darts[d].head ||
          darts[r].head != darts[d].tail || darts[r].crossing != -darts[d].crossing)
        throw InvariantError("inconsistent reverse dart for edge " + std::to_string(d));
    }
    return;
  }
  std::map<Key, std::deque<int>> pending;
  for (int d = 0; d < int(darts.size()); ++d) {
    darts[d].reverse = -1;
    const auto& e = darts[d];
    Key want{e.head, e.tail, -e.crossing.r, -e.crossing.s};
    auto it = pending.find(want);
    if (it != pending.end() && !it->second.empty()) {
      const int r = it->second.front();
      it->second.pop_front();
      darts[d].reverse = r;
      darts[r].reverse = d;
    } else {
      pending[Key{e.tail, e.head, e.crossing.r, e.crossing.s}].push_back(d);
    }
  }
  for (int d = 0; d < int(darts.size()); ++d)
    if (darts[d].reverse < 0) throw InvariantError("missing reverse of edge " + std::to_string(d));
}

}  // namespace

std::complex<double> TorusGraph::dart_vector(int d) const {
  const Dart& e = darts_[d];
  return positions_[e.head] + modulus_.lift(e.crossing) - positions_[e.tail];
}

HomologyClass TorusGraph::walk_class(const std::vector<int>& walk) const {
  HomologyClass h;
  for (int d : walk) h += darts_[d].crossing;
  return h;
}

bool TorusGraph::symmetric_conductances() const {
  for (const Dart& d : darts_)
    if (d.conductance != darts_[d.reverse].conductance) return false;
  return true;
}

std::shared_ptr<const TorusGraph> TorusGraph::create(Input in) {
  std::shared_ptr<TorusGraph> g(new TorusGraph(Modulus(in.tau)));
  const int nv = int(in.positions.size());
  if (nv == 0) throw InvariantError("graph has no vertices");
  for (int d = 0; d < int(in.darts.size()); ++d) {
    const Dart& e = in.darts[d];
    if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv)
      throw InvariantError("edge " + std::to_string(d) + " references an unknown vertex");
    if (!(e.conductance >= 0.0) || !std::isfinite(e.conductance))
      throw InvariantError("negative conductance on edge " + std::to_string(d));
  }
  pair_reverses(in.darts);
  g->positions_ = std::move(in.positions);
  g->darts_ = std::move(in.darts);
  g->lattice_ = in.lattice;
  const int nd = g->dart_count();

  std::vector<std::vector<int>> around(nv);
  for (int d = 0; d < nd; ++d) around[g->darts_[d].tail].push_back(d);

  // next_in_face[d]: successor of d along the face on its left.
  std::vector<int> next_in_face(nd, -1);
  if (in.faces.empty()) {
    for (int v = 0; v < nv; ++v) {
      auto& ds = around[v];
      std::vector<double> angle(nd);
      for (int d : ds) angle[d] = std::arg(g->dart_vector(d));
      std::sort(ds.begin(), ds.end(), [&](int a, int b) { return angle[a] < angle[b]; });
      for (std::size_t i = 0; i + 1 < ds.size(); ++i)
        if (angle[ds[i]] == angle[ds[i + 1]])
          throw InvariantError("degenerate rotation: overlapping edges at vertex " + std::to_string(v));
    }
    // Arriving along d at v, the face on the left continues with the dart
    // immediately clockwise of reverse(d).
    for (int d = 0; d < nd; ++d) {
      const int r = g->darts_[d].reverse;
      const auto& ds = around[g->darts_[d].head];
      const auto pos = std::find(ds.begin(), ds.end(), r) - ds.begin();
      next_in_face[d] = ds[(pos + ds.size() - 1) % ds.size()];
    }
    std::vector<bool> seen(nd, false);
    for (int d = 0; d < nd; ++d) {
      if (seen[d]) continue;
      std::vector<int> face;
      for (int x = d; !seen[x]; x = next_in_face[x]) {
        seen[x] = true;
        face.push_back(x);
      }
      g->faces_.push_back(std::move(face));
    }
  } else {
    g->faces_ = std::move(in.faces);
    std::vector<int> count(nd, 0);
    for (const auto& f : g->faces_) {
      if (f.empty()) throw InvariantError("empty face boundary");
      for (std::size_t i = 0; i < f.size(); ++i) {
        const int d = f[i];
        const int nx = f[(i + 1) % f.size()];
        if (d < 0 || d >= nd) throw InvariantError("face references an unknown edge");
        if (g->darts_[d].head != g->darts_[nx].tail) throw InvariantError("face boundary is not a closed walk");
        ++count[d];
        next_in_face[d] = nx;
      }
    }
    for (int d = 0; d < nd; ++d)
      if (count[d] != 1) throw InvariantError("faces do not partition the edges");
  }

  const int nf = int(g->faces_.size());
  g->left_face_.assign(nd, -1);
  g->face_offset_.assign(nd, {});
  for (int f = 0; f < nf; ++f) {
    HomologyClass acc;
    for (int d : g->faces_[f]) {
      g->left_face_[d] = f;
      g->face_offset_[d] = acc;
      acc += g->darts_[d].crossing;
    }
    if (!acc.is_zero()) throw InvariantError("non-contractible face " + std::to_string(f));
  }

  // Rotation: ccw(y) = reverse(prev_in_face(y)).
  std::vector<int> prev_in_face(nd);
  for (int d = 0; d < nd; ++d) prev_in_face[next_in_face[d]] = d;
  g->ccw_.assign(nd, -1);
  for (int d = 0; d < nd; ++d) g->ccw_[d] = g->darts_[prev_in_face[d]].reverse;
  g->out_darts_.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    if (around[v].empty()) throw InvariantError("isolated vertex " + std::to_string(v));
    const int start = *std::min_element(around[v].begin(), around[v].end());
    int x = start;
    do {
      g->out_darts_[v].push_back(x);
      x = g->ccw_[x];
    } while (x != start && g->out_darts_[v].size() <= around[v].size());
    if (g->out_darts_[v].size() != around[v].size())
      throw InvariantError("non-cellular face: rotation at vertex " + std::to_string(v) + " is not a single cycle");
  }

  if (nv - g->edge_count() + nf != 0) throw InvariantError("non-cellular face: Euler characteristic is not 0");
  if (!is_irreducible(*g)) throw InvariantError("reducible graph");
  return g;
}

bool is_irreducible(const TorusGraph& g) {
  const int nv = g.vertex_count();
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<bool> seen(nv, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int d : g.out_darts(v)) {
        // Backward pass walks incoming positive-conductance edges.
        const Dart& e = g.dart(pass == 0 ? d : g.dart(d).reverse);
        if (e.conductance <= 0.0) continue;
        const int w = g.dart(d).head;
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count != nv) return false;
  }
  return true;
}

GraphPtr build_square_torus(int n, int shift_x, int shift_y, const std::vector<double>* conductances) {
  if (shift_y <= 0) throw PreconditionError("square torus needs shift_y >= 1");
  if (n <= 1) throw PreconditionError("square torus needs n >= 2");
  const int nv = n * shift_y;
  if (conductances && int(conductances->size()) != 4 * nv)
    throw PreconditionError("conductance table must have 4 entries per vertex");

  TorusGraph::Input in;
  in.tau = std::complex<double>(shift_x, shift_y) / double(n);
  in.lattice = SquareLattice{n, shift_x, shift_y, conductances == nullptr};
  in.positions.resize(nv);
  for (int j = 0; j < shift_y; ++j)
    for (int i = 0; i < n; ++i) in.positions[j * n + i] = std::complex<double>(i, j) / double(n);

  auto floor_div = [](int x, int m) { return (x >= 0) ? x / m : -((-x + m - 1) / m); };
  const int step[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int j = 0; j < shift_y; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < 4; ++k) {
        int x = i + step[k][0];
        int y = j + step[k][1];
        const int b = floor_div(y, shift_y);
        x -= b * shift_x;
        y -= b * shift_y;
        const int a = floor_div(x, n);
        x -= a * n;
        Dart d;
        d.tail = j * n + i;
        d.head = y * n + x;
        d.crossing = HomologyClass::from_cuts(a, b);
        d.conductance = conductances ? (*conductances)[4 * d.tail + k] : 0.25;
        in.darts.push_back(d);
      }
    }
  }
  return TorusGraph::create(std::move(in));
}

GraphPtr dual_graph(const TorusGraph& g) {
  TorusGraph::Input in;
  in.tau = g.modulus().tau();
  in.positions.resize(g.face_count());
  for (int f = 0; f < g.face_count(); ++f) {
    std::complex<double> sum = 0.0;
    for (int d : g.faces()[f]) sum += g.positions()[g.dart(d).tail] + g.modulus().lift(g.face_offset(d));
    in.positions[f] = sum / double(g.faces()[f].size());
  }
  in.darts.resize(g.dart_count());
  for (int d = 0; d < g.dart_count(); ++d) {
    const int r = g.dart(d).reverse;
    Dart& e = in.darts[d];
    e.tail = g.right_face(d);
    e.head = g.left_face(d);
    e.conductance = 1.0;
    e.crossing = g.face_offset(r) - g.dart(d).crossing - g.face_offset(d);
    e.reverse = r;
  }
  // The dual face around primal vertex v is the ccw sequence of duals of its out-darts.
  in.faces.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) in.faces[v] = g.out_darts(v);
  return TorusGraph::create(std::move(in));
}

namespace {

struct CoverState {
  int v;
  HomologyClass h;
  auto operator<=>(const CoverState&) const = default;
};

}  // namespace

std::vector<int> shortest_cycle_in_class(const TorusGraph& g, int base, HomologyClass target,
                                         const std::vector<bool>& forbidden, int max_length) {
  if (!forbidden.empty() && forbidden[base]) return {};
  const int bound = std::max(std::abs(target.r), std::abs(target.s)) + 1;
  std::map<CoverState, int> parent_dart;
  std::deque<std::pair<CoverState, int>> queue;
  const CoverState start{base, {}};
  parent_dart[start] = -1;
  queue.push_back({start, 0});
  while (!queue.empty()) {
    auto [st, len] = queue.front();
    queue.pop_front();
    if (len >= max_length) continue;
    for (int d : g.out_darts(st.v)) {
      const Dart& e = g.dart(d);
      if (e.conductance <= 0.0) continue;
      if (!forbidden.empty() && forbidden[e.head]) continue;
      const CoverState nx{e.head, st.h + e.crossing};
      if (std::abs(nx.h.r) > bound || std::abs(nx.h.s) > bound) continue;
      if (parent_dart.count(nx)) continue;
      parent_dart[nx] = d;
      if (nx.v == base && nx.h == target) {
        std::vector<int> walk;
        CoverState cur = nx;
        while (parent_dart[cur] >= 0) {
          const int pd = parent_dart[cur];
          walk.push_back(pd);
          cur = CoverState{g.dart(pd).tail, cur.h - g.dart(pd).crossing};
        }
        std::reverse(walk.begin(), walk.end());
        return walk;
      }
      queue.push_back({nx, len + 1});
    }
  }
  return {};
}

bool is_simple_cycle(const TorusGraph& g, const std::vector<int>& walk) {
  if (walk.empty()) return false;
  std::vector<int> seen;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const int nx = walk[(i + 1) % walk.size()];
    if (g.dart(walk[i]).head != g.dart(nx).tail) return false;
    seen.push_back(g.dart(walk[i]).tail);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

std::vector<int> find_simple_cycle(const TorusGraph& g, HomologyClass target) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto c = shortest_cycle_in_class(g, v, target, {}, 2 * g.vertex_count() + 2);
    if (!c.empty() && is_simple_cycle(g, c)) return c;
  }
  return {};
}

int systole(const TorusGraph& g) {
  int best = std::numeric_limits<int>::max();
  for (int base = 0; base < g.vertex_count(); ++base) {
    std::map<CoverState, int> dist;
    std::deque<CoverState> queue{CoverState{base, {}}};
    dist[queue.front()] = 0;
    while (!queue.empty()) {
      const CoverState st = queue.front();
      queue.pop_front();
      const int len = dist[st];
      if (len + 1 >= best) break;
      for (int d : g.out_darts(st.v)) {
        const Dart& e = g.dart(d);
        if (e.conductance <= 0.0) continue;
        const CoverState nx{e.head, st.h + e.crossing};
        if (nx.v == base && !nx.h.is_zero()) {
          best = std::min(best, len + 1);
          continue;
        }
        if (dist.count(nx)) continue;
        dist[nx] = len + 1;
        queue.push_back(nx);
      }
    }
  }
  return best;
}

}  // namespace dimerlab
