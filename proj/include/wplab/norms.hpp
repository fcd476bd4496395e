#pragma once

#include <vector>

#include "wplab/operators.hpp"
#include "wplab/poly_matrix.hpp"
#include "wplab/weak_product.hpp"

namespace wplab {

// psi_k = C(n,k)^{1/2} z_1^k z_2^{n-k}, k = 0..n, in d >= 2 variables.
// Parameter n yields n + 1 functions, each of unit norm in Drury-Arveson space;
// column norm sqrt(n+1), row norm 1.
std::vector<Poly> binomial_family(int n, int d = 2);

struct GapReport {
  int n = 0;
  int truncation = 0;
  NormEstimate row_norm;
  NormEstimate col_norm;
  double ratio = 0.0;
  double expected_ratio = 0.0;
};

// Truncated row and column norms of a multiplier tuple. expected_ratio is
// sqrt(#phis), the extremal value reached by binomial_family.
GapReport column_row_gap(const SpaceSpec& space, const std::vector<Poly>& phis, int N,
                         double tol = kDefaultNormTol);

struct TransposeGap {
  GapReport report;  // row_norm = ||Psi||, col_norm = ||Psi^T Phi|| in M_{n+1}(Mult)
  PolyMatrix theta;
  FactorizationCertificate certificate;
};

// Psi = row of binomial_family(n), Phi = [1, 0, ..., 0]; Theta = Psi^T Phi
// carries binomial_family(n) in its first column. Requires Drury-Arveson, d >= 2.
TransposeGap transpose_gap_experiment(const SpaceSpec& space, int n, int N, double tol = kDefaultNormTol,
                                      double cert_tol = 1e-9);

// Numerical chain ||Psi^T||^2 <= sum_i ||R_i||^2 <= n max_i ||R_i||^2 <= n kappa^2 ||Psi||^2
// on truncations, where R_i is column i of Psi laid out as a row and kappa is the
// largest observed row/column ratio among the columns.
struct TransposeBound {
  double psi_norm = 0.0;
  double psi_t_norm = 0.0;
  double row_norm_sq_sum = 0.0;
  double max_row_norm = 0.0;
  double kappa = 0.0;
  int n = 0;
  bool holds = false;
};

TransposeBound transpose_bound_check(const SpaceSpec& space, const PolyMatrix& psi, int N,
                                     double slack = 1e-9);

}  // namespace wplab
