#include "wplab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace wplab {

namespace {

int effective_degree(const Poly& p) { return std::max(p.degree(), 0); }

std::shared_ptr<const GradedBasis> make_basis(const SpaceSpec& space, int degree) {
  return std::make_shared<const GradedBasis>(space, degree);
}

// Writes T_phi from `dom` into `cod` at block offset (row0, col0).
void fill_mult_block(Matrix& out, Eigen::Index row0, Eigen::Index col0, const Poly& phi, const GradedBasis& dom,
                     const GradedBasis& cod) {
  for (std::size_t j = 0; j < dom.size(); ++j) {
    for (const auto& [gamma, c] : phi.terms()) {
      const auto i = cod.index_of(gamma + dom[j]);
      if (!i) throw InvalidArgument("codomain basis too small for multiplication operator");
      out(row0 + static_cast<Eigen::Index>(*i), col0 + static_cast<Eigen::Index>(j)) += c * cod.norm(*i) / dom.norm(j);
    }
  }
}

void check_space(const SpaceSpec& space, const Poly& p) {
  if (p.dim() != space.dim()) throw InvalidArgument("polynomial dimension does not match space");
}

NormEstimate power_iterate(const Eigen::Ref<const Matrix>& m, Vector v, double tol, int max_iter) {
  NormEstimate est;
  double prev = -1.0;
  double prev_delta = -1.0;
  for (int k = 1; k <= max_iter; ++k) {
    const Vector w = m * v;
    const double sigma = w.norm();
    est.value = sigma;
    est.iterations = k;
    if (sigma == 0.0) {
      est.residual = 0.0;
      return est;
    }
    if (prev >= 0.0) {
      const double delta = std::abs(sigma - prev);
      est.residual = delta;
      if (delta <= tol) {
        // Estimates grow geometrically towards the norm; stop only once the
        // extrapolated remaining growth is below tol as well.
        const bool at_noise = delta <= 64.0 * std::numeric_limits<double>::epsilon() * sigma;
        const double rho = prev_delta > 0.0 ? delta / prev_delta : 1.0;
        const double tail = rho < 1.0 ? delta * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
        if (at_noise || tail <= tol) {
          est.residual = at_noise ? delta : std::max(delta, tail);
          return est;
        }
      }
      prev_delta = delta;
    } else {
      est.residual = std::numeric_limits<double>::infinity();
    }
    prev = sigma;
    Vector u = m.adjoint() * w;
    const double un = u.norm();
    if (un == 0.0) {
      est.residual = 0.0;
      return est;
    }
    v = u / un;
  }
  throw NonConvergence("power iteration did not converge within " + std::to_string(max_iter) + " iterations", est);
}

// Fixed pseudo-random complex start; a structured start such as the all-ones
// vector can be orthogonal to the top singular vector of a Toeplitz block.
Vector start_vector(Eigen::Index n) {
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double re = u(rng);
    const double im = u(rng);
    v(j) = Complex(re, im);
  }
  return v.normalized();
}

}  // namespace

Vector to_coords(const GradedBasis& basis, const Poly& f) {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [a, c] : f.terms()) {
    const auto i = basis.index_of(a);
    if (!i) throw InvalidArgument("polynomial term outside the truncation basis");
    x(static_cast<Eigen::Index>(*i)) = c * basis.norm(*i);
  }
  return x;
}

Poly from_coords(const GradedBasis& basis, const Eigen::Ref<const Vector>& x) {
  Poly f(basis.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex c = x(static_cast<Eigen::Index>(i));
    if (c != Complex(0.0)) f.set(basis[i], c / basis.norm(i));
  }
  return f;
}

OpMatrix mult_matrix(const SpaceSpec& space, const Poly& phi, int N) {
  return block_mult_matrix(space, 1, 1, std::span<const Poly>(&phi, 1), N);
}

OpMatrix tuple_mult_matrix(const SpaceSpec& space, std::span<const Poly> phis, TupleShape shape, int N) {
  if (phis.empty()) throw InvalidArgument("multiplier tuple must be non-empty");
  const int m = static_cast<int>(phis.size());
  return shape == TupleShape::Column ? block_mult_matrix(space, m, 1, phis, N)
                                     : block_mult_matrix(space, 1, m, phis, N);
}

OpMatrix block_mult_matrix(const SpaceSpec& space, int rows, int cols, std::span<const Poly> entries, int N) {
  if (rows < 1 || cols < 1 || entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InvalidArgument("block multiplier shape does not match entry count");
  }
  if (N < 0) throw InvalidArgument("truncation degree must be non-negative");
  int max_deg = 0;
  for (const Poly& p : entries) {
    check_space(space, p);
    max_deg = std::max(max_deg, effective_degree(p));
  }
  OpMatrix out;
  out.domain = make_basis(space, N);
  out.codomain = make_basis(space, N + max_deg);
  out.domain_blocks = cols;
  out.codomain_blocks = rows;
  const auto nd = static_cast<Eigen::Index>(out.domain->size());
  const auto nc = static_cast<Eigen::Index>(out.codomain->size());
  out.entries = Matrix::Zero(nc * rows, nd * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      fill_mult_block(out.entries, nc * r, nd * c, entries[static_cast<std::size_t>(r * cols + c)], *out.domain,
                      *out.codomain);
    }
  }
  return out;
}

NormEstimate operator_norm(const Eigen::Ref<const Matrix>& m, double tol, int max_iter) {
  if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("operator_norm needs tol > 0 and max_iter >= 1");
  if (m.size() == 0) return NormEstimate{};
  return power_iterate(m, start_vector(m.cols()), tol, max_iter);
}

NormEstimate operator_norm(const OpMatrix& m, double tol, int max_iter) {
  NormEstimate est = operator_norm(m.entries, tol, max_iter);
  est.kind = m.exact ? NormKind::ExactOnTruncation : NormKind::LowerBoundOfFullNorm;
  est.truncation = m.domain ? m.domain->max_degree() : 0;
  return est;
}

Eigen::VectorXd singular_values(const Eigen::Ref<const Matrix>& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

OpMatrix hankel_matrix(const SpaceSpec& space, const Poly& b, int n_dom, int n_cod) {
  check_space(space, b);
  if (n_dom < 0 || n_cod < 0) throw InvalidArgument("truncation degrees must be non-negative");
  OpMatrix out;
  out.domain = make_basis(space, n_dom);
  out.codomain = make_basis(space, n_cod);
  out.conj_codomain = true;
  out.exact = std::min(n_dom, n_cod) >= b.degree();
  const GradedBasis& dom = *out.domain;
  const GradedBasis& cod = *out.codomain;
  out.entries = Matrix::Zero(static_cast<Eigen::Index>(cod.size()), static_cast<Eigen::Index>(dom.size()));
  for (const auto& [gamma, c] : b.terms()) {
    const double w = monomial_norm_sq(space, gamma);
    for (std::size_t j = 0; j < dom.size(); ++j) {
      const MultiIndex& alpha = dom[j];
      if (alpha.degree() > gamma.degree() || !alpha.divides(gamma)) continue;
      const auto i = cod.index_of(gamma - alpha);
      if (!i) continue;
      out.entries(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) =
          std::conj(c) * w / (dom.norm(j) * cod.norm(*i));
    }
  }
  return out;
}

double intertwining_residual(const SpaceSpec& space, const Poly& b, const Poly& psi, int N) {
  check_space(space, psi);
  const int db = effective_degree(b);
  const int dp = effective_degree(psi);
  // H_b T_psi: degree N -> N + deg psi -> conjugate degree deg b.
  const Matrix lhs = hankel_matrix(space, b, N + dp, db).entries * mult_matrix(space, psi, N).entries;
  // T_{conj psi}^* H_b: its matrix is the transpose of T_psi in conjugate coordinates.
  const Matrix rhs = mult_matrix(space, psi, db).entries.transpose() * hankel_matrix(space, b, N, db + dp).entries;
  return operator_norm(Matrix(lhs - rhs)).value;
}

KernelRankCheck kernel_hankel_rank_check(const SpaceSpec& space, std::span<const Complex> w, int N) {
  const Poly k = kernel_polynomial(space, w, 2 * N);
  const OpMatrix h = hankel_matrix(space, k, N, N);
  KernelRankCheck out;
  const Eigen::VectorXd sv = singular_values(h.entries);
  out.second_singular_value = sv.size() > 1 ? sv(1) : 0.0;

  // e_alpha(w) and the conjugate-coordinates of conj(k_w) coincide: w^alpha / ||z^alpha||.
  const GradedBasis& basis = *h.domain;
  Vector u(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Poly mono = Poly::monomial(basis[i]);
    u(static_cast<Eigen::Index>(i)) = evaluate(mono, w) / basis.norm(i);
  }
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    out.factor_residual = std::max(out.factor_residual, (h.entries.col(j) - u(j) * u).norm());
  }
  return out;
}

double kernel_dagger_residual(const SpaceSpec& space, const Poly& theta, std::span<const Complex> w, int N) {
  check_space(space, theta);
  const int dt = effective_degree(theta);
  const Poly k = kernel_polynomial(space, w, 2 * N + dt);
  const Matrix lhs = hankel_matrix(space, k, N + dt, N).entries * mult_matrix(space, theta, N).entries;
  const Matrix rhs = evaluate(theta, w) * hankel_matrix(space, k, N, N).entries;
  return operator_norm(Matrix(lhs - rhs)).value;
}

double dagger_commutation_residual(const SpaceSpec& space, const Poly& b, const Poly& theta, const Poly& phi,
                                   int N) {
  const int db = effective_degree(b);
  const int dt = effective_degree(theta);
  const int dp = effective_degree(phi);
  const Matrix hb = hankel_matrix(space, b, N + dt + dp, db).entries;
  const Matrix lhs = hb * mult_matrix(space, phi, N + dt).entries * mult_matrix(space, theta, N).entries;
  const Matrix rhs = hb * mult_matrix(space, theta, N + dp).entries * mult_matrix(space, phi, N).entries;
  return operator_norm(Matrix(lhs - rhs)).value;
}

}  // namespace wplab
