#include "dimerlab/transfer_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>

namespace dimerlab {

namespace {

std::vector<int> walk_vertices(const TorusGraph& g, const std::vector<int>& walk) {
  std::vector<int> out;
  for (int d : walk) out.push_back(g.dart(d).tail);
  return out;
}

std::vector<int> lattice_row(const TorusGraph& g, int j) {
  const int n = g.lattice()->n;
  std::vector<int> walk;
  for (int i = 0; i < n; ++i) walk.push_back(4 * (j * n + i));
  return walk;
}

// Shortest simple A-cycle through a vertex, trying vertices by distance of
// their height to `height`.
std::vector<int> cycle_near(const TorusGraph& g, double height, const std::vector<bool>& forbidden) {
  const double period = g.modulus().tau().imag();
  std::vector<std::pair<double, int>> order;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!forbidden.empty() && forbidden[v]) continue;
    double dy = std::fmod(std::abs(g.positions()[v].imag() - height), period);
    dy = std::min(dy, period - dy);
    order.push_back({dy, v});
  }
  std::sort(order.begin(), order.end());
  for (auto [dy, v] : order) {
    for (HomologyClass target : {kClassA, -kClassA}) {
      auto c = shortest_cycle_in_class(g, v, target, forbidden, g.vertex_count() + 1);
      if (!c.empty() && is_simple_cycle(g, c)) return c;
    }
  }
  return {};
}

}  // namespace

std::vector<int> CyclePair::vertices1(const TorusGraph& g) const { return walk_vertices(g, gamma1); }
std::vector<int> CyclePair::vertices2(const TorusGraph& g) const { return walk_vertices(g, gamma2); }

CyclePair choose_cycles(const TorusGraph& g) {
  CyclePair cp;
  if (g.lattice() && g.lattice()->shift_y >= 2) {
    // Dart 4v is the east dart of v; rows wrap once through the A-cut.
    cp.gamma1 = lattice_row(g, 0);
    cp.gamma2 = lattice_row(g, g.lattice()->shift_y / 2);
  } else {
    cp.gamma1 = cycle_near(g, 0.0, {});
    if (cp.gamma1.empty()) throw PreconditionError("no simple A-cycle found");
    std::vector<bool> forbidden(g.vertex_count(), false);
    for (int d : cp.gamma1) forbidden[g.dart(d).tail] = true;
    cp.gamma2 = cycle_near(g, 0.5 * g.modulus().tau().imag(), forbidden);
    if (cp.gamma2.empty()) throw PreconditionError("no pair of disjoint simple A-cycles found");
  }
  for (const auto* c : {&cp.gamma1, &cp.gamma2}) {
    const HomologyClass h = g.walk_class(*c);
    if (!is_simple_cycle(g, *c) || (h != kClassA && h != -kClassA))
      throw InvariantError("chosen transfer cycle is not a simple A-cycle");
  }
  return cp;
}

Eigen::MatrixXcd transition_matrix(const TorusGraph& g, const Character& chi) {
  const int nv = g.vertex_count();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(nv, nv);
  std::vector<double> total(nv, 0.0);
  for (const Dart& d : g.darts()) total[d.tail] += d.conductance;
  for (const Dart& d : g.darts()) p(d.tail, d.head) += d.conductance / total[d.tail] * chi(d.crossing);
  return p;
}

namespace {

// Twisted hitting distribution of `target`, started from `sources`, where the
// walk must take at least one step.
Eigen::MatrixXcd hitting(const Eigen::MatrixXcd& P, const std::vector<int>& sources, const std::vector<int>& target) {
  const int nv = int(P.rows());
  std::vector<int> index(nv, -1);
  for (int k = 0; k < int(target.size()); ++k) index[target[k]] = -2 - k;
  std::vector<int> interior;
  for (int v = 0; v < nv; ++v)
    if (index[v] == -1) {
      index[v] = int(interior.size());
      interior.push_back(v);
    }
  const int ni = int(interior.size());
  const int nt = int(target.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(ni, ni);
  Eigen::MatrixXcd B(ni, nt);
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < ni; ++j) A(i, j) -= P(interior[i], interior[j]);
    for (int k = 0; k < nt; ++k) B(i, k) = P(interior[i], target[k]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::MatrixXcd H = lu.solve(B);
  if (!H.allFinite()) throw NumericalError("singular interior system in hitting solve");
  Eigen::MatrixXcd out(sources.size(), nt);
  for (int s = 0; s < int(sources.size()); ++s) {
    if (index[sources[s]] < 0) throw PreconditionError("source vertex lies on the absorbing cycle");
    out.row(s) = H.row(index[sources[s]]);
  }
  return out;
}

}  // namespace

TransferMatrices poisson_matrices(const TorusGraph& g, const Character& chi, const CyclePair& cp) {
  const Eigen::MatrixXcd P = transition_matrix(g, chi);
  const auto v1 = cp.vertices1(g);
  const auto v2 = cp.vertices2(g);
  TransferMatrices tm;
  tm.Q = hitting(P, v1, v2);
  tm.R = hitting(P, v2, v1);
  tm.S = tm.Q * tm.R;
  return tm;
}

LogDet fredholm_det(const TransferMatrices& tm) {
  const auto m = tm.S.rows();
  return determinant(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(m, m) - tm.S));
}

double op_norm_inf(const Eigen::MatrixXcd& m) { return m.rows() ? m.cwiseAbs().rowwise().sum().maxCoeff() : 0.0; }

double verify_fred(GraphPtr g, const Character& chi, const Character& chi_prime, const CyclePair& cp) {
  if (chi.is_trivial() || chi_prime.is_trivial()) throw PreconditionError("Fredholm check needs nontrivial characters");
  if (std::abs(chi.on_A() - chi_prime.on_A()) > 1e-12)
    throw PreconditionError("Fredholm check needs chi(A) = chi'(A)");
  const auto lhs = log_ratio(laplacian_det(g, chi_prime), laplacian_det(g, chi));
  const auto rhs = log_ratio(fredholm_det(poisson_matrices(*g, chi_prime, cp)), fredholm_det(poisson_matrices(*g, chi, cp)));
  const double dmod = lhs.real() - rhs.real();
  const double dphase = std::remainder(lhs.imag() - rhs.imag(), 2.0 * std::numbers::pi);
  return std::hypot(dmod, dphase);
}

double verify_fred(GraphPtr g, const Character& chi, const Character& chi_prime) {
  const CyclePair cp = choose_cycles(*g);
  return verify_fred(std::move(g), chi, chi_prime, cp);
}

TraceExpansion trace_expansion(const Eigen::MatrixXcd& S, int K) {
  const auto m = S.rows();
  TraceExpansion out;
  const LogDet d = determinant(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(m, m) - S));
  if (d.zero) throw NumericalError("I - S is singular");
  out.minus_log_det = -std::complex<double>(d.log_modulus, std::arg(d.phase));
  out.series = 0.0;
  Eigen::MatrixXcd power = S;
  for (int k = 1; k <= K; ++k) {
    out.series += power.trace() / double(k);
    power = power * S;
  }
  const double norm = op_norm_inf(S);
  out.remainder_bound = norm < 1.0 ? double(m) * std::pow(norm, K + 1) / ((K + 1) * (1.0 - norm))
                                   : std::numeric_limits<double>::infinity();
  return out;
}

void write_transfer_csv(std::ostream& os, const std::vector<TransferRow>& rows) {
  os << "u,v,norm_inf,logdet_re,logdet_im,fred_residual\n";
  os << std::setprecision(17);
  for (const auto& r : rows)
    os << r.chi.u() << ',' << r.chi.v() << ',' << r.norm_inf << ',' << r.logdet.real() << ',' << r.logdet.imag()
       << ',' << r.fred_residual << '\n';
}

}  // namespace dimerlab
