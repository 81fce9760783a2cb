#pragma once

#include <utility>
#include <vector>

#include "dimerlab/crsf.hpp"

namespace dimerlab {

// Superposition of a graph and its dual.  Black vertices: primal vertex v has
// id v, dual vertex f has id V + f.  White vertex w stands for one undirected
// primal edge.  Edge ids: primal dart d gives edge d = (tail d, white of d),
// dual dart d* gives edge D + d = (V + tail d*, white of d).
struct GEdge {
  int black = 0;
  int white = 0;
  double weight = 0.0;
  HomologyClass crossing;  // from the black endpoint to the white endpoint
};

class TemperleyanGraph {
 public:
  explicit TemperleyanGraph(GraphPtr primal);

  const GraphPtr& primal() const { return primal_; }
  const GraphPtr& dual() const { return dual_; }
  int black_count() const { return primal_->vertex_count() + dual_->vertex_count(); }
  int white_count() const { return int(white_dart_.size()); }
  int edge_count() const { return int(edges_.size()); }
  const std::vector<GEdge>& edges() const { return edges_; }
  const GEdge& edge(int e) const { return edges_[e]; }

  // Canonical (lower-id) primal dart of white vertex w.
  int white_dart(int w) const { return white_dart_[w]; }
  int white_of_dart(int d) const { return white_of_dart_[d]; }
  // Edges at white w: d, reverse d, D + d, D + reverse d.
  const std::vector<int>& white_edges(int w) const { return white_edges_[w]; }
  const std::vector<int>& black_edges(int b) const { return black_edges_[b]; }
  // Quadrilateral faces, one per primal dart d, as edge ids in boundary order
  // (v, w(d)), (left d, w(d)), (left d, w(ccw d)), (v, w(ccw d)).
  const std::vector<std::vector<int>>& faces() const { return faces_; }

  // Simple positive-conductance primal cycles in classes A and B used by
  // periods(); empty when none exists.
  const std::vector<int>& basis_cycle_A() const { return cycle_a_; }
  const std::vector<int>& basis_cycle_B() const { return cycle_b_; }

 private:
  GraphPtr primal_;
  GraphPtr dual_;
  std::vector<GEdge> edges_;
  std::vector<int> white_dart_;
  std::vector<int> white_of_dart_;
  std::vector<std::vector<int>> white_edges_;
  std::vector<std::vector<int>> black_edges_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> cycle_a_;
  std::vector<int> cycle_b_;
};

// Perfect matching, stored as the matched edge of each white vertex.
struct Matching {
  std::vector<int> white_edge;
  double weight = 0.0;

  // Matched edge at black vertex b, or -1.
  std::vector<int> black_edge(const TemperleyanGraph& G) const;
  std::vector<std::pair<int, int>> pairs(const TemperleyanGraph& G) const;  // (white, black)
  bool operator==(const Matching& o) const { return white_edge == o.white_edge; }
};

// Throws InvariantError unless every vertex is covered exactly once.
Matching make_matching(const TemperleyanGraph& G, std::vector<int> white_edge);

inline constexpr int kMatchingEnumerationLimit = 24;
// All positive-weight perfect matchings, by backtracking over white vertices
// in id order.  `weights` optionally overrides the edge weights.
std::vector<Matching> enumerate_matchings(const TemperleyanGraph& G, const std::vector<double>* weights = nullptr);

// Height 1-form on the dual of G: value[e] is omega on the dual edge of e
// oriented as the counterclockwise rotation of black -> white.
struct HeightForm {
  std::vector<int> value;
  // omega on the dual of e traversed with the given orientation (+1 / -1).
  int operator()(int e, int orientation) const { return orientation * value[e]; }
};

HeightForm one_form(const TemperleyanGraph& G, const Matching& m);
// d omega on the dual face around each vertex of G: blacks first (ids as
// above), then whites at offset black_count().
std::vector<int> d_omega(const TemperleyanGraph& G, const HeightForm& w);

// Integral of omega along the cycle of G* running immediately to the left
// (side = +1) or right (side = -1) of a closed primal walk.
int integrate_beside(const TemperleyanGraph& G, const HeightForm& w, const std::vector<int>& walk, int side = 1);

// The class [m] recovered from the integrals of omega along cycles beside
// positive-conductance primal cycles in classes A and B.  frame_sign = -1
// flips the direct-frame convention (used only as a mutation check).
HomologyClass periods(const TemperleyanGraph& G, const Matching& m, int frame_sign = 1);

struct CrsfPair {
  Crsf primal;
  Crsf dual;
};

CrsfPair temperley_back(const TemperleyanGraph& G, const Matching& m);
// Throws InvariantError when some white vertex is covered zero or two times.
Matching temperley_forward(const TemperleyanGraph& G, const Crsf& f, const Crsf& fstar);

// [m] = ([F] + [F*]) / 2, cross-checked against periods().
HomologyClass class_of(const TemperleyanGraph& G, const Matching& m);
// The same without the cross-check.
HomologyClass class_of_pair(const CrsfPair& p);

}  // namespace dimerlab
