#pragma once

#include <complex>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "dimerlab/torus_graph.hpp"

namespace dimerlab {

// Determinant in overflow-safe form: exp(log_modulus) * phase, or zero.
struct LogDet {
  double log_modulus = 0.0;
  std::complex<double> phase = 1.0;
  bool zero = false;

  static LogDet zero_value() { return {0.0, 0.0, true}; }
  std::complex<double> value() const { return zero ? 0.0 : std::exp(log_modulus) * phase; }
  // Value scaled by exp(-shift), for combining determinants of similar size.
  std::complex<double> scaled(double shift) const { return zero ? 0.0 : std::exp(log_modulus - shift) * phase; }
  LogDet operator*(const LogDet& o) const;
  LogDet operator/(const LogDet& o) const;
};

// Complex log of a/b with the imaginary part in (-pi, pi].
std::complex<double> log_ratio(const LogDet& a, const LogDet& b);

struct TwistedLaplacian {
  Eigen::MatrixXcd matrix;
  Character chi;
  GraphPtr graph;
};

inline constexpr int kDenseVertexLimit = 20000;

// Diagonal: total out-conductance.  Off-diagonal (x, y): minus the sum over
// darts x -> y of c * chi(crossing).
TwistedLaplacian assemble(GraphPtr g, const Character& chi);

// Partial-pivoting LU.  A pivot below 1e-12 of the largest row norm reports zero.
LogDet determinant(const TwistedLaplacian& L);
LogDet determinant(const Eigen::MatrixXcd& m);

// Closed-form eigenvalue product for the uniform square torus quotient.
LogDet det_spectral(int n, int shift_x, int shift_y, const Character& chi);

// det(Delta_chi) through the spectral path when g is a uniform square torus,
// otherwise dense LU.
LogDet laplacian_det(GraphPtr g, const Character& chi);

struct DeterminantRow {
  Character chi;
  LogDet det;
};
// Columns u,v,log_modulus,phase_re,phase_im,zero_flag.
void write_determinant_csv(std::ostream& os, const std::vector<DeterminantRow>& rows);

}  // namespace dimerlab
