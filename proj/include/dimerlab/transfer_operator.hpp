#pragma once

#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "dimerlab/twisted_laplacian.hpp"

namespace dimerlab {

// Two vertex-disjoint simple cycles of class +-A, as dart walks.
struct CyclePair {
  std::vector<int> gamma1;
  std::vector<int> gamma2;

  std::vector<int> vertices1(const TorusGraph& g) const;
  std::vector<int> vertices2(const TorusGraph& g) const;
};

// Rows nearest heights 0 and Im(tau)/2 on square tori, otherwise shortest
// A-cycles through the vertices nearest those heights.
CyclePair choose_cycles(const TorusGraph& g);

// Twisted transition matrix P(x, y) = sum over darts x -> y of c / c(x) * chi(crossing).
Eigen::MatrixXcd transition_matrix(const TorusGraph& g, const Character& chi);

struct TransferMatrices {
  Eigen::MatrixXcd Q;  // gamma1 -> first hit of gamma2
  Eigen::MatrixXcd R;  // gamma2 -> first hit of gamma1
  Eigen::MatrixXcd S;  // Q * R: gamma1 -> gamma2 -> gamma1
};

TransferMatrices poisson_matrices(const TorusGraph& g, const Character& chi, const CyclePair& cp);

LogDet fredholm_det(const TransferMatrices& tm);
double op_norm_inf(const Eigen::MatrixXcd& m);
inline double op_norm_inf(const TransferMatrices& tm) { return op_norm_inf(tm.S); }

// |log(det D_chi' / det D_chi) - log(det(I - S_chi') / det(I - S_chi))| with
// the imaginary part wrapped.  Requires chi(A) = chi'(A), both nontrivial.
double verify_fred(GraphPtr g, const Character& chi, const Character& chi_prime);
double verify_fred(GraphPtr g, const Character& chi, const Character& chi_prime, const CyclePair& cp);

// -log det(I - S) against sum_{k <= K} tr(S^k) / k.
struct TraceExpansion {
  std::complex<double> minus_log_det;
  std::complex<double> series;
  double remainder_bound;  // m ||S||^(K+1) / ((K+1)(1 - ||S||))
};
TraceExpansion trace_expansion(const Eigen::MatrixXcd& S, int K);

struct TransferRow {
  Character chi;
  double norm_inf;
  std::complex<double> logdet;
  double fred_residual;
};
// Columns u,v,norm_inf,logdet_re,logdet_im,fred_residual.
void write_transfer_csv(std::ostream& os, const std::vector<TransferRow>& rows);

}  // namespace dimerlab
