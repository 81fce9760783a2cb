#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dimerlab/torus_graph.hpp"

namespace dimerlab {

// Oriented cycle-rooted spanning forest, stored as a vector field: field[v] is
// the dart leaving v.  Darts rather than neighbours, since small tori carry
// parallel edges.
struct Crsf {
  GraphPtr graph;
  std::vector<int> field;
  std::vector<std::vector<int>> root_cycles;  // dart sequences, each starting at its lowest vertex
  std::vector<HomologyClass> cycle_classes;

  double weight() const;
  int cycle_count() const { return int(root_cycles.size()); }
  // Sum of the oriented root-cycle classes.
  HomologyClass total_class() const;
  // Undirected edge support, as the sorted list of lower dart ids.
  std::vector<int> support() const;

  bool operator==(const Crsf& o) const { return graph == o.graph && field == o.field; }
};

// Builds a Crsf from a vector field, extracting the cycles of the functional
// graph.  Throws InvariantError if a dart does not leave its vertex.
Crsf make_crsf(GraphPtr g, std::vector<int> field);

// True iff every root cycle has a nonzero class.
bool is_incompressible(const Crsf& f);

// All oriented incompressible CRSFs using positive-conductance darts, in
// lexicographic order of the field.  Guarded at 1e7 vector fields.
std::vector<Crsf> enumerate_crsfs(GraphPtr g);
inline constexpr double kCrsfEnumerationLimit = 1e7;

// Number of vector fields enumerate_crsfs would visit.
double vector_field_count(const TorusGraph& g);

// Sum over oriented incompressible CRSFs of w(F) prod (1 - chi(cycle)).
std::complex<double> forman_sum(GraphPtr g, const Character& chi);

// The dual CRSF on `dual` (which must be dual_graph of f.graph) using the
// edges not in f.  Dual root cycles are ordered by lowest vertex; orientation
// +1 gives a cycle the class of f's first root cycle.
Crsf dual_crsf(const Crsf& f, GraphPtr dual, const std::vector<int>& orientations);

// Cycle-popping sampler: contractible loops are erased, noncontractible loops
// become root cycles.  The law is proportional to w(F).
Crsf wilson_sample(GraphPtr g, std::uint64_t seed);

}  // namespace dimerlab
