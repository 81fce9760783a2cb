#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dimerlab/homology.hpp"

namespace dimerlab {

// Directed edge ("dart") of a graph on the torus.  Every dart has a reverse
// dart; conductances of a dart and its reverse are independent.
struct Dart {
  int tail = 0;
  int head = 0;
  double conductance = 0.0;
  HomologyClass crossing;
  int reverse = -1;

  bool operator==(const Dart&) const = default;
};

// Present on graphs produced by build_square_torus; enables the spectral
// determinant path when the conductances are uniform.
struct SquareLattice {
  int n = 0;
  int shift_x = 0;
  int shift_y = 0;
  bool uniform = true;

  bool operator==(const SquareLattice&) const = default;
};

// Immutable, validated weighted graph cellularly embedded on C/(Z + tau Z).
//
// Faces are stored as cyclic dart sequences with the face on the left of each
// dart (counterclockwise traversal).  The rotation system at each vertex is
// derived from the faces.
class TorusGraph {
 public:
  struct Input {
    std::complex<double> tau;
    std::vector<std::complex<double>> positions;
    std::vector<Dart> darts;  // reverse fields may be -1; they are paired here
    // When empty, faces are traced from the geometric rotation system.
    std::vector<std::vector<int>> faces;
    std::optional<SquareLattice> lattice;
  };

  // Validates all invariants; throws InvariantError naming the violation.
  static std::shared_ptr<const TorusGraph> create(Input in);

  const Modulus& modulus() const { return modulus_; }
  int vertex_count() const { return int(positions_.size()); }
  int dart_count() const { return int(darts_.size()); }
  int edge_count() const { return int(darts_.size()) / 2; }
  int face_count() const { return int(faces_.size()); }

  const std::vector<std::complex<double>>& positions() const { return positions_; }
  const std::vector<Dart>& darts() const { return darts_; }
  const Dart& dart(int d) const { return darts_[d]; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::optional<SquareLattice>& lattice() const { return lattice_; }

  // Darts leaving v in counterclockwise order.
  const std::vector<int>& out_darts(int v) const { return out_darts_[v]; }
  // Next dart counterclockwise around tail(d).
  int ccw(int d) const { return ccw_[d]; }
  int left_face(int d) const { return left_face_[d]; }
  int right_face(int d) const { return left_face_[darts_[d].reverse]; }
  // Displacement of tail(d) inside the lift of left_face(d) anchored at the
  // tail of the face's first dart.
  HomologyClass face_offset(int d) const { return face_offset_[d]; }

  // Sum of crossing classes along a closed walk of darts.
  HomologyClass walk_class(const std::vector<int>& walk) const;
  // Lifted geometric vector of dart d.
  std::complex<double> dart_vector(int d) const;

  bool symmetric_conductances() const;

 private:
  TorusGraph(Modulus m) : modulus_(m) {}

  Modulus modulus_;
  std::vector<std::complex<double>> positions_;
  std::vector<Dart> darts_;
  std::vector<std::vector<int>> faces_;
  std::optional<SquareLattice> lattice_;
  std::vector<std::vector<int>> out_darts_;
  std::vector<int> ccw_;
  std::vector<int> left_face_;
  std::vector<HomologyClass> face_offset_;
};

using GraphPtr = std::shared_ptr<const TorusGraph>;

// Quotient of (1/n) Z^2 by the lattice spanned by 1 and (sx + i sy)/n.
// Vertex (i, j), 0 <= i < n, 0 <= j < sy, has id j*n + i and out-darts in the
// order east, north, west, south.  `conductances`, when given, is indexed by
// dart id (4 per vertex); otherwise every dart has conductance 1/4.
GraphPtr build_square_torus(int n, int shift_x, int shift_y,
                            const std::vector<double>* conductances = nullptr);

// Dual graph: vertex f per face of g, dart k of the dual is (dart k of g)*,
// crossing dart k from its right face to its left face, conductance 1.
GraphPtr dual_graph(const TorusGraph& g);

// Text format: "torus re im", "v id x y", "e tail head c a b", '#' comments.
GraphPtr load_graph(const std::string& path);
GraphPtr parse_graph(const std::string& text);
std::string format_graph(const TorusGraph& g);
void save_graph(const TorusGraph& g, const std::string& path);

// Strong connectivity through positive-conductance darts.
bool is_irreducible(const TorusGraph& g);

// Shortest closed walk of positive-conductance darts through `base` with class
// `target`, avoiding the vertices flagged in `forbidden`.  Returns an empty
// vector when none exists within `max_length` steps.
std::vector<int> shortest_cycle_in_class(const TorusGraph& g, int base, HomologyClass target,
                                         const std::vector<bool>& forbidden, int max_length);
bool is_simple_cycle(const TorusGraph& g, const std::vector<int>& walk);

// A simple positive-conductance cycle of class `target`, trying base vertices in id order.
std::vector<int> find_simple_cycle(const TorusGraph& g, HomologyClass target);

// Length of the shortest non-contractible positive-conductance closed walk.
int systole(const TorusGraph& g);

}  // namespace dimerlab
