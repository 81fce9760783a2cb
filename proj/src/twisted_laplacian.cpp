#include "dimerlab/twisted_laplacian.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>

namespace dimerlab {

LogDet LogDet::operator*(const LogDet& o) const {
  if (zero || o.zero) return zero_value();
  return {log_modulus + o.log_modulus, phase * o.phase, false};
}

LogDet LogDet::operator/(const LogDet& o) const {
  if (o.zero) throw NumericalError("division by a zero determinant");
  if (zero) return zero_value();
  return {log_modulus - o.log_modulus, phase / o.phase, false};
}

std::complex<double> log_ratio(const LogDet& a, const LogDet& b) {
  if (a.zero || b.zero) throw NumericalError("log ratio of a zero determinant");
  return {a.log_modulus - b.log_modulus, std::arg(a.phase / b.phase)};
}

TwistedLaplacian assemble(GraphPtr g, const Character& chi) {
  const int nv = g->vertex_count();
  if (nv > kDenseVertexLimit)
    throw PreconditionError("dense Laplacian limited to 20000 vertices; use the spectral path for square tori");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nv, nv);
  for (const Dart& d : g->darts()) {
    m(d.tail, d.tail) += d.conductance;
    m(d.tail, d.head) -= d.conductance * chi(d.crossing);
  }
  return {std::move(m), chi, std::move(g)};
}

LogDet determinant(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return {};
  const double scale = m.rowwise().norm().maxCoeff();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const auto& f = lu.matrixLU();
  LogDet out;
  out.phase = double(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    const std::complex<double> p = f(i, i);
    const double a = std::abs(p);
    if (a <= 1e-12 * scale) return LogDet::zero_value();
    out.log_modulus += std::log(a);
    out.phase *= p / a;
  }
  out.phase /= std::abs(out.phase);
  return out;
}

LogDet determinant(const TwistedLaplacian& L) { return determinant(L.matrix); }

LogDet det_spectral(int n, int shift_x, int shift_y, const Character& chi) {
  // Eigenfunctions exp(i(alpha x + beta y)) on the grid: going once around the
  // 1-period picks up chi(A), around the tau-period chi(B).
  constexpr double two_pi = 2.0 * std::numbers::pi;
  LogDet out;
  for (int p = 0; p < n; ++p) {
    const double alpha = two_pi * (chi.v() + p) / n;
    for (int q = 0; q < shift_y; ++q) {
      const double beta = (two_pi * (chi.u() + q) - alpha * shift_x) / shift_y;
      const double sa = std::sin(0.5 * alpha);
      const double sb = std::sin(0.5 * beta);
      const double lambda = sa * sa + sb * sb;
      if (lambda == 0.0) return LogDet::zero_value();
      out.log_modulus += std::log(lambda);
    }
  }
  return out;
}

LogDet laplacian_det(GraphPtr g, const Character& chi) {
  if (g->lattice() && g->lattice()->uniform)
    return det_spectral(g->lattice()->n, g->lattice()->shift_x, g->lattice()->shift_y, chi);
  return determinant(assemble(std::move(g), chi));
}

void write_determinant_csv(std::ostream& os, const std::vector<DeterminantRow>& rows) {
  os << "u,v,log_modulus,phase_re,phase_im,zero_flag\n";
  os << std::setprecision(17);
  for (const auto& r : rows)
    os << r.chi.u() << ',' << r.chi.v() << ',' << r.det.log_modulus << ',' << r.det.phase.real() << ','
       << r.det.phase.imag() << ',' << (r.det.zero ? 1 : 0) << '\n';
}

}  // namespace dimerlab
