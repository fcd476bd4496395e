#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wplab/operators.hpp"
#include "wplab/poly_matrix.hpp"

namespace wplab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct FactorPair {
  Poly f;
  Poly g;
};

// A representation target = sum f_i g_i (possibly inexact; see defect).
struct Factorization {
  std::vector<FactorPair> pairs;
  Poly target;
  double defect = 0.0;  // coefficient_distance(target, sum f_i g_i)
  double cost = 0.0;    // sum ||f_i|| ||g_i||
};

Factorization make_factorization(const SpaceSpec& space, const Poly& target, std::vector<FactorPair> pairs);

// [h, H_b] = <h, b> for polynomial h.
Complex pairing(const SpaceSpec& space, const Poly& h, const Poly& b);

struct LowerBoundOptions {
  int max_sweeps = 200;
  int random_starts = 2;
  double initial_step = 0.5;
  double min_step = 1e-6;
  std::uint64_t seed = kDefaultSeed;
};

struct LowerBound {
  double value = 0.0;
  std::optional<Poly> witness;  // symbol b; empty when h = 0
  double hankel_norm = 0.0;     // ||H_b|| of the witness (full SVD)
  Complex pairing = 0.0;
  int evaluations = 0;
};

// max over deg b <= D of |<h,b>| / ||H_b||, by coordinate ascent. The returned
// value is recomputed for the witness with a full SVD, so it is a certified
// lower bound of ||h|| in the weak product.
LowerBound wp_lower_bound(const SpaceSpec& space, const Poly& h, int D, const LowerBoundOptions& opts = {});

struct UpperBoundOptions {
  int restarts = 4;             // seeded random starts in addition to the seeded/heuristic ones
  int max_iter = 2000;          // per start, minimum-norm phase
  int feasibility_iter = 500;   // per start, Levenberg-Marquardt phase
  double tol = 1e-12;           // relative improvement stopping rule
  double feasibility_tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  std::vector<FactorPair> initial;  // optional seed factorization (size <= r)
};

struct UpperBound {
  Factorization factorization;
  double value = 0.0;  // == factorization.cost
  int iterations = 0;
  bool converged = false;
  std::vector<double> cost_history;  // balanced cost after every minimum-norm sweep of the winning start
};

// Minimizes sum ||f_i|| ||g_i|| over sum_{i<=r} f_i g_i = h with deg f_i, deg g_i <= D
// by alternating minimum-norm solves and per-pair balancing. Throws Infeasible
// when no start reaches an exact representation.
UpperBound wp_upper_bound(const SpaceSpec& space, const Poly& h, int r, int D, const UpperBoundOptions& opts = {});

struct BracketOptions {
  LowerBoundOptions lower;
  UpperBoundOptions upper;
  double inversion_tol = 1e-8;
};

struct NormBracket {
  double lower = 0.0;
  std::optional<Poly> lower_witness;
  double upper = 0.0;
  Factorization upper_witness;
  int degree = 0;
  int rank = 0;
  int iterations = 0;
  std::optional<double> h1_oracle;  // Hardy space only
};

// Throws BracketInversion when lower > upper + inversion_tol.
NormBracket wp_bracket(const SpaceSpec& space, const Poly& h, int r, int D, const BracketOptions& opts = {});

struct H1Quadrature {
  double value = 0.0;
  int nodes = 0;
  bool converged = false;
};

// (1/2pi) int |h(e^{it})| dt by the trapezoid rule, doubling the node count from
// max(Q, 8(deg h + 1)) until successive values differ by less than 1e-9.
H1Quadrature hardy_h1_quadrature_report(const Poly& h, int Q);
double hardy_h1_quadrature(const Poly& h, int Q);

enum class Verdict { Consistent, Refuted, IdentityFailed };

const char* to_string(Verdict v);

// Certificate for Theta = Psi^T Phi with Phi, Psi contractive as block
// multipliers H^n -> H^k. The scalar case is n = 1 with column inputs.
struct FactorizationCertificate {
  PolyMatrix theta;
  PolyMatrix phi;
  PolyMatrix psi;
  int truncation = 0;
  NormEstimate phi_norm;
  NormEstimate psi_norm;
  double identity_defect = 0.0;
  Verdict verdict = Verdict::IdentityFailed;
};

FactorizationCertificate certify_mult_factorization(const SpaceSpec& space, const PolyMatrix& theta,
                                                    const PolyMatrix& phi, const PolyMatrix& psi, int N, double tol);
FactorizationCertificate certify_mult_factorization(const SpaceSpec& space, const Poly& theta,
                                                    const std::vector<Poly>& phis, const std::vector<Poly>& psis,
                                                    int N, double tol);

}  // namespace wplab
