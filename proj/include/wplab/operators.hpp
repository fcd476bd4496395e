#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

#include "wplab/error.hpp"
#include "wplab/poly.hpp"
#include "wplab/space.hpp"

namespace wplab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense matrix of a truncated operator in orthonormalized monomial coordinates.
//
// Rows are indexed by codomain_blocks copies of the codomain basis, columns by
// domain_blocks copies of the domain basis (block-major). When conj_codomain is
// set, the codomain is the conjugate space and row beta stands for the unit
// vector conj(z^beta)/||z^beta||.
struct OpMatrix {
  Matrix entries;
  std::shared_ptr<const GradedBasis> domain;
  std::shared_ptr<const GradedBasis> codomain;
  int domain_blocks = 1;
  int codomain_blocks = 1;
  bool conj_codomain = false;
  // Every nonzero entry of the full operator is present (true for Hankel
  // matrices with min(n_dom, n_cod) >= deg b).
  bool exact = false;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

enum class NormKind { ExactOnTruncation, LowerBoundOfFullNorm };

struct NormEstimate {
  double value = 0.0;
  NormKind kind = NormKind::ExactOnTruncation;
  int truncation = 0;
  double residual = 0.0;
  int iterations = 0;
};

// Thrown by operator_norm when max_iter is exhausted; carries the last iterate.
class NonConvergence : public NumericalFailure {
 public:
  NonConvergence(const std::string& what, NormEstimate best)
      : NumericalFailure(what), best_(best) {}
  const NormEstimate& best() const { return best_; }

 private:
  NormEstimate best_;
};

inline constexpr double kDefaultNormTol = 1e-10;
inline constexpr int kDefaultNormMaxIter = 100000;

// Coordinates of f in the orthonormal basis z^alpha/||z^alpha|| (terms outside
// the basis are an InvalidArgument).
Vector to_coords(const GradedBasis& basis, const Poly& f);
Poly from_coords(const GradedBasis& basis, const Eigen::Ref<const Vector>& x);

// f -> phi f from degree <= N into degree <= N + deg phi.
OpMatrix mult_matrix(const SpaceSpec& space, const Poly& phi, int N);

enum class TupleShape { Column, Row };

// Column: H -> H (x) C^m stacked vertically. Row: H^m -> H side by side.
OpMatrix tuple_mult_matrix(const SpaceSpec& space, std::span<const Poly> phis, TupleShape shape, int N);

// Block multiplication operator of a rows x cols polynomial matrix, H^cols -> H^rows.
// `entries` is row-major.
OpMatrix block_mult_matrix(const SpaceSpec& space, int rows, int cols, std::span<const Poly> entries, int N);

// Largest singular value by power iteration on M^*M from a fixed pseudo-random
// unit vector. Stops when successive estimates differ by at most tol and the
// geometric extrapolation of the remaining growth is below tol too.
NormEstimate operator_norm(const OpMatrix& m, double tol = kDefaultNormTol, int max_iter = kDefaultNormMaxIter);
NormEstimate operator_norm(const Eigen::Ref<const Matrix>& m, double tol = kDefaultNormTol,
                           int max_iter = kDefaultNormMaxIter);

// Singular values by a full SVD, descending. Used where a second route or the
// whole spectrum is required.
Eigen::VectorXd singular_values(const Eigen::Ref<const Matrix>& m);

// Hankel operator H_b from degree <= n_dom into the conjugate space, degree <= n_cod.
// Entry (beta, alpha) = conj(b_{alpha+beta}) ||z^{alpha+beta}||^2 / (||z^alpha|| ||z^beta||).
OpMatrix hankel_matrix(const SpaceSpec& space, const Poly& b, int n_dom, int n_cod);

// || H_b T_psi - T_{conj psi}^* H_b || on degree <= N, with both sides sized so
// that no truncation loss occurs.
double intertwining_residual(const SpaceSpec& space, const Poly& b, const Poly& psi, int N);

struct KernelRankCheck {
  double second_singular_value = 0.0;
  double factor_residual = 0.0;  // max_alpha || H e_alpha - e_alpha(w) conj(k_w) ||
};

// H_{k_w} restricted to degree <= N is the rank-one map f -> f(w) conj(k_w).
KernelRankCheck kernel_hankel_rank_check(const SpaceSpec& space, std::span<const Complex> w, int N);

// || H_{k_w} T_theta - theta(w) H_{k_w} || on degree <= N. The left side is the
// dual action of multiplication by theta on the kernel Hankel operator.
double kernel_dagger_residual(const SpaceSpec& space, const Poly& theta, std::span<const Complex> w, int N);

// || (H_b T_phi) T_theta - (H_b T_theta) T_phi || on degree <= N: the dual
// action of multiplication by theta commutes with right multiplication by T_phi.
double dagger_commutation_residual(const SpaceSpec& space, const Poly& b, const Poly& theta, const Poly& phi,
                                   int N);

}  // namespace wplab
