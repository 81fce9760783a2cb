#include <algorithm>

#include "dimerlab/dimer_height.hpp"

namespace dimerlab {

TemperleyanGraph::TemperleyanGraph(GraphPtr primal) : primal_(std::move(primal)), dual_(dual_graph(*primal_)) {
  const TorusGraph& g = *primal_;
  const int nv = g.vertex_count();
  const int nd = g.dart_count();
  white_of_dart_.assign(nd, -1);
  for (int d = 0; d < nd; ++d) {
    const int r = g.dart(d).reverse;
    if (d < r) {
      white_of_dart_[d] = white_of_dart_[r] = int(white_dart_.size());
      white_dart_.push_back(d);
    }
  }
  // Whites sit on the canonical dart's edge, in the frame of its tail.
  edges_.resize(2 * nd);
  for (int d = 0; d < nd; ++d) {
    const int r = g.dart(d).reverse;
    const bool canonical = d < r;
    GEdge& p = edges_[d];
    p.black = g.dart(d).tail;
    p.white = white_of_dart_[d];
    p.weight = g.dart(d).conductance;
    p.crossing = canonical ? HomologyClass{} : g.dart(d).crossing;
    GEdge& q = edges_[nd + d];
    q.black = nv + dual_->dart(d).tail;
    q.white = white_of_dart_[d];
    q.weight = 1.0;
    q.crossing = canonical ? g.face_offset(r) - g.dart(d).crossing : g.face_offset(r);
  }
  white_edges_.assign(white_count(), {});
  black_edges_.assign(black_count(), {});
  for (int e = 0; e < edge_count(); ++e) {
    white_edges_[edges_[e].white].push_back(e);
    black_edges_[edges_[e].black].push_back(e);
  }
  for (int d = 0; d < nd; ++d) {
    const int c = g.ccw(d);
    faces_.push_back({d, nd + g.dart(d).reverse, nd + c, c});
  }
  cycle_a_ = find_simple_cycle(g, kClassA);
  cycle_b_ = find_simple_cycle(g, kClassB);
}

std::vector<int> Matching::black_edge(const TemperleyanGraph& G) const {
  std::vector<int> out(G.black_count(), -1);
  for (int e : white_edge)
    if (e >= 0) out[G.edge(e).black] = e;
  return out;
}

std::vector<std::pair<int, int>> Matching::pairs(const TemperleyanGraph& G) const {
  std::vector<std::pair<int, int>> out;
  for (int w = 0; w < int(white_edge.size()); ++w) out.push_back({w, G.edge(white_edge[w]).black});
  return out;
}

Matching make_matching(const TemperleyanGraph& G, std::vector<int> white_edge) {
  if (int(white_edge.size()) != G.white_count()) throw InvariantError("matching does not cover every white vertex");
  std::vector<int> cover(G.black_count(), 0);
  Matching m;
  m.weight = 1.0;
  for (int w = 0; w < G.white_count(); ++w) {
    const int e = white_edge[w];
    if (e < 0 || e >= G.edge_count() || G.edge(e).white != w)
      throw InvariantError("white vertex " + std::to_string(w) + " is not matched along one of its edges");
    ++cover[G.edge(e).black];
    m.weight *= G.edge(e).weight;
  }
  for (int b = 0; b < G.black_count(); ++b)
    if (cover[b] != 1) throw InvariantError("black vertex " + std::to_string(b) + " is covered " + std::to_string(cover[b]) + " times");
  m.white_edge = std::move(white_edge);
  return m;
}

std::vector<Matching> enumerate_matchings(const TemperleyanGraph& G, const std::vector<double>* weights) {
  const int nw = G.white_count();
  if (nw > kMatchingEnumerationLimit) throw PreconditionError("matching enumeration is limited to 24 white vertices");
  auto weight = [&](int e) { return weights ? (*weights)[e] : G.edge(e).weight; };
  std::vector<Matching> out;
  std::vector<int> chosen(nw, -1);
  std::vector<bool> used(G.black_count(), false);
  auto rec = [&](auto&& self, int w, double acc) -> void {
    if (w == nw) {
      out.push_back(Matching{chosen, acc});
      return;
    }
    for (int e : G.white_edges(w)) {
      const int b = G.edge(e).black;
      if (used[b] || !(weight(e) > 0.0)) continue;
      used[b] = true;
      chosen[w] = e;
      self(self, w + 1, acc * weight(e));
      used[b] = false;
    }
    chosen[w] = -1;
  };
  if (G.white_count() == G.black_count()) rec(rec, 0, 1.0);
  return out;
}

CrsfPair temperley_back(const TemperleyanGraph& G, const Matching& m) {
  const int nv = G.primal()->vertex_count();
  const int nd = G.primal()->dart_count();
  const auto at_black = m.black_edge(G);
  std::vector<int> f(nv), fs(G.dual()->vertex_count());
  for (int b = 0; b < G.black_count(); ++b) {
    const int e = at_black[b];
    if (e < 0) throw InvariantError("matching leaves a black vertex uncovered");
    if (b < nv) f[b] = e;
    else fs[b - nv] = e - nd;
  }
  CrsfPair p{make_crsf(G.primal(), std::move(f)), make_crsf(G.dual(), std::move(fs))};
  if (!is_incompressible(p.primal) || !is_incompressible(p.dual))
    throw InvariantError("Temperley image has a contractible root cycle");
  if (p.primal.cycle_count() != p.dual.cycle_count())
    throw InvariantError("Temperley image has unequal root-cycle counts");
  return p;
}

Matching temperley_forward(const TemperleyanGraph& G, const Crsf& f, const Crsf& fstar) {
  if (f.graph != G.primal() || fstar.graph != G.dual())
    throw PreconditionError("forests do not live on this Temperleyan graph");
  const int nd = G.primal()->dart_count();
  std::vector<int> white_edge(G.white_count(), -1);
  auto place = [&](int e) {
    int& slot = white_edge[G.edge(e).white];
    if (slot >= 0) throw InvariantError("forests are not dual: white vertex " + std::to_string(G.edge(e).white) + " covered twice");
    slot = e;
  };
  for (int d : f.field) place(d);
  for (int d : fstar.field) place(nd + d);
  for (int w = 0; w < G.white_count(); ++w)
    if (white_edge[w] < 0) throw InvariantError("forests are not dual: white vertex " + std::to_string(w) + " uncovered");
  return make_matching(G, std::move(white_edge));
}

HomologyClass class_of_pair(const CrsfPair& p) {
  const HomologyClass h = p.primal.total_class() + p.dual.total_class();
  if (!h.is_even()) throw InvariantError("root-cycle classes of a CRSF pair sum to an odd class");
  return {h.r / 2, h.s / 2};
}

HomologyClass class_of(const TemperleyanGraph& G, const Matching& m) {
  const HomologyClass h = class_of_pair(temperley_back(G, m));
  if (h != periods(G, m)) throw InvariantError("class from root cycles disagrees with the periods of omega");
  return h;
}

}  // namespace dimerlab
