#include "wplab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace wplab {

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

NormEstimate block_norm(const SpaceSpec& space, const PolyMatrix& m, int N, double tol) {
  return operator_norm(block_mult_matrix(space, m.rows(), m.cols(), m.entries(), N), tol);
}

}  // namespace

std::vector<Poly> binomial_family(int n, int d) {
  if (n < 0) throw InvalidArgument("binomial_family needs n >= 0");
  if (d < 2 && n > 0) throw InvalidArgument("binomial_family needs at least two variables");
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    std::vector<int> e(static_cast<std::size_t>(std::max(d, 1)), 0);
    e[0] = k;
    if (d >= 2) e[1] = n - k;
    out.push_back(Poly::monomial(MultiIndex(std::move(e)), std::sqrt(binomial(n, k))));
  }
  return out;
}

GapReport column_row_gap(const SpaceSpec& space, const std::vector<Poly>& phis, int N, double tol) {
  GapReport rep;
  rep.n = static_cast<int>(phis.size()) - 1;
  rep.truncation = N;
  rep.col_norm = operator_norm(tuple_mult_matrix(space, phis, TupleShape::Column, N), tol);
  rep.row_norm = operator_norm(tuple_mult_matrix(space, phis, TupleShape::Row, N), tol);
  rep.ratio = rep.row_norm.value > 0.0 ? rep.col_norm.value / rep.row_norm.value : 0.0;
  rep.expected_ratio = std::sqrt(static_cast<double>(phis.size()));
  return rep;
}

TransposeGap transpose_gap_experiment(const SpaceSpec& space, int n, int N, double tol, double cert_tol) {
  if (space.family() != Family::DruryArveson || space.dim() < 2) {
    throw InvalidArgument("transpose gap experiment needs a Drury-Arveson space with d >= 2");
  }
  if (n < 0) throw InvalidArgument("transpose gap experiment needs n >= 0");
  const int m = n + 1;
  const PolyMatrix psi = PolyMatrix::row(binomial_family(n, space.dim()));
  PolyMatrix phi(1, m, space.dim());
  phi(0, 0) = Poly::constant(space.dim(), 1.0);
  PolyMatrix theta = psi_T_phi(psi, phi);

  TransposeGap out{GapReport{}, theta, certify_mult_factorization(space, theta, phi, psi, N, cert_tol)};
  out.report.n = n;
  out.report.truncation = N;
  out.report.row_norm = out.certificate.psi_norm;
  out.report.col_norm = block_norm(space, theta, N, tol);
  out.report.ratio = out.report.row_norm.value > 0.0 ? out.report.col_norm.value / out.report.row_norm.value : 0.0;
  out.report.expected_ratio = std::sqrt(static_cast<double>(m));
  return out;
}

TransposeBound transpose_bound_check(const SpaceSpec& space, const PolyMatrix& psi, int N, double slack) {
  TransposeBound out;
  out.n = psi.cols();
  out.psi_norm = block_norm(space, psi, N, kDefaultNormTol).value;
  const PolyMatrix psi_t = psi.transpose();
  out.psi_t_norm = block_norm(space, psi_t, N, kDefaultNormTol).value;
  for (int i = 0; i < psi.cols(); ++i) {
    std::vector<Poly> column;
    for (int k = 0; k < psi.rows(); ++k) column.push_back(psi(k, i));
    const double col = operator_norm(tuple_mult_matrix(space, column, TupleShape::Column, N)).value;
    const double row = operator_norm(tuple_mult_matrix(space, column, TupleShape::Row, N)).value;
    out.row_norm_sq_sum += row * row;
    out.max_row_norm = std::max(out.max_row_norm, row);
    if (col > 0.0) out.kappa = std::max(out.kappa, row / col);
  }
  const double lhs = out.psi_t_norm * out.psi_t_norm;
  const double mid = out.n * out.max_row_norm * out.max_row_norm;
  const double rhs = out.n * out.kappa * out.kappa * out.psi_norm * out.psi_norm;
  out.holds = lhs <= out.row_norm_sq_sum * (1.0 + slack) + slack && out.row_norm_sq_sum <= mid * (1.0 + slack) + slack &&
              mid <= rhs * (1.0 + slack) + slack;
  return out;
}

}  // namespace wplab
