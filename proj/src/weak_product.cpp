#include "wplab/weak_product.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>

namespace wplab {

namespace {

void check_space(const SpaceSpec& space, const Poly& p) {
  if (p.dim() != space.dim()) throw InvalidArgument("polynomial dimension does not match space");
}

Vector random_coords(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = scale * Complex(re, im);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Bilinear structure of (f, g) -> f g on degree <= D, in orthonormal coordinates.

struct ProductTerm {
  Eigen::Index out;
  Eigen::Index a;
  Eigen::Index b;
  double weight;  // ||z^{a+b}|| / (||z^a|| ||z^b||)
};

class ProductMap {
 public:
  ProductMap(const SpaceSpec& space, int D) : in_(space, D), out_(space, 2 * D) {
    for (std::size_t a = 0; a < in_.size(); ++a) {
      for (std::size_t b = 0; b < in_.size(); ++b) {
        const auto g = out_.index_of(in_[a] + in_[b]);
        terms_.push_back({static_cast<Eigen::Index>(*g), static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b),
                          out_.norm(*g) / (in_.norm(a) * in_.norm(b))});
      }
    }
  }

  const GradedBasis& in() const { return in_; }
  const GradedBasis& out() const { return out_; }
  Eigen::Index m() const { return static_cast<Eigen::Index>(in_.size()); }

  // Linear map x -> sum_i prod(x_i, other_i) with `other` held fixed; the map is
  // symmetric in its two arguments, so the same matrix serves both half-steps.
  Matrix linear_in(const std::vector<Vector>& other) const {
    const Eigen::Index m = this->m();
    Matrix A = Matrix::Zero(static_cast<Eigen::Index>(out_.size()), m * static_cast<Eigen::Index>(other.size()));
    for (std::size_t i = 0; i < other.size(); ++i) {
      const Eigen::Index off = m * static_cast<Eigen::Index>(i);
      for (const ProductTerm& t : terms_) A(t.out, off + t.a) += other[i](t.b) * t.weight;
    }
    return A;
  }

 private:
  GradedBasis in_;
  GradedBasis out_;
  std::vector<ProductTerm> terms_;
};

struct PairState {
  std::vector<Vector> x;  // f_i coordinates
  std::vector<Vector> y;  // g_i coordinates
};

Vector stack(const std::vector<Vector>& parts, Eigen::Index m) {
  Vector v(m * static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v.segment(m * static_cast<Eigen::Index>(i), m) = parts[i];
  return v;
}

std::vector<Vector> unstack(const Vector& v, Eigen::Index m) {
  std::vector<Vector> parts(static_cast<std::size_t>(v.size() / m));
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = v.segment(m * static_cast<Eigen::Index>(i), m);
  return parts;
}

Vector min_norm_solve(const Matrix& A, const Vector& t) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
  return cod.solve(t);
}

void balance(PairState& s) {
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double nf = s.x[i].norm();
    const double ng = s.y[i].norm();
    if (nf == 0.0 || ng == 0.0) {
      s.x[i].setZero();
      s.y[i].setZero();
      continue;
    }
    const double t = std::sqrt(ng / nf);
    s.x[i] *= t;
    s.y[i] /= t;
  }
}

double pair_cost(const PairState& s) {
  double c = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) c += s.x[i].norm() * s.y[i].norm();
  return c;
}

// Raw-coefficient defect of target - sum f_i g_i, computed from coordinates.
double coord_defect(const ProductMap& pm, const PairState& s, const Vector& target) {
  const Matrix A = pm.linear_in(s.y);
  const Vector r = A * stack(s.x, pm.m()) - target;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    acc += std::norm(r(i) / pm.out().norm(static_cast<std::size_t>(i)));
  }
  return std::sqrt(acc);
}

// Levenberg-Marquardt on the joint residual (x, y) -> A(y) x - target. The
// residual is holomorphic, so the complex Jacobian [A(y) | A(x)] is exact.
bool find_feasible(const ProductMap& pm, PairState& s, const Vector& target, const UpperBoundOptions& opts,
                   int& iters) {
  const Eigen::Index m = pm.m();
  const Eigen::Index nx = m * static_cast<Eigen::Index>(s.x.size());
  auto residual = [&](const PairState& st) { return Vector(pm.linear_in(st.y) * stack(st.x, m) - target); };
  Vector r = residual(s);
  double lambda = 1e-3 * std::max(1.0, target.squaredNorm());
  // Drive the residual to rounding level: near-solutions of degenerate
  // factorizations carry cost errors much larger than their defect.
  const double floor = 1e-15 * std::max(1.0, target.norm());
  for (int it = 0; it < opts.feasibility_iter; ++it) {
    if (r.norm() <= floor) break;
    ++iters;
    Matrix J(r.size(), 2 * nx);
    J.leftCols(nx) = pm.linear_in(s.y);
    J.rightCols(nx) = pm.linear_in(s.x);
    const Matrix G = J.adjoint() * J;
    const Vector rhs = -(J.adjoint() * r);
    bool accepted = false;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      Matrix Gd = G;
      Gd.diagonal().array() += lambda;
      const Vector delta = Gd.ldlt().solve(rhs);
      PairState trial = s;
      const auto dx = unstack(delta.head(nx), m);
      const auto dy = unstack(delta.tail(nx), m);
      for (std::size_t i = 0; i < trial.x.size(); ++i) {
        trial.x[i] += dx[i];
        trial.y[i] += dy[i];
      }
      const Vector rt = residual(trial);
      if (rt.norm() < r.norm() * (1.0 - 1e-6)) {
        s = std::move(trial);
        r = rt;
        lambda = std::max(lambda / 3.0, 1e-15);
        accepted = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted) break;
    balance(s);
    r = residual(s);
  }
  return coord_defect(pm, s, target) <= opts.feasibility_tol;
}

struct RunResult {
  PairState state;
  double cost = 0.0;
  bool converged = false;
  std::vector<double> history;
};

// Alternating minimum-norm sweeps from a feasible point; every accepted sweep
// keeps the representation exact and does not increase the balanced cost.
RunResult descend(const ProductMap& pm, PairState s, const Vector& target, const UpperBoundOptions& opts, int& iters) {
  const Eigen::Index m = pm.m();
  balance(s);
  RunResult res;
  double cost = pair_cost(s);
  res.history.push_back(cost);
  for (int it = 0; it < opts.max_iter; ++it) {
    ++iters;
    PairState next = s;
    next.x = unstack(min_norm_solve(pm.linear_in(next.y), target), m);
    next.y = unstack(min_norm_solve(pm.linear_in(next.x), target), m);
    balance(next);
    if (coord_defect(pm, next, target) > opts.feasibility_tol) break;
    const double c = pair_cost(next);
    if (c > cost) break;
    const bool small = cost - c <= opts.tol * std::max(c, 1e-300);
    s = std::move(next);
    cost = c;
    res.history.push_back(cost);
    if (small) {
      res.converged = true;
      break;
    }
  }
  res.state = std::move(s);
  res.cost = cost;
  return res;
}

PairState random_state(std::mt19937_64& rng, int r, Eigen::Index m, double scale) {
  PairState s;
  for (int i = 0; i < r; ++i) {
    s.x.push_back(random_coords(rng, m, scale));
    s.y.push_back(random_coords(rng, m, scale));
  }
  return s;
}

// One-variable h: over all splittings of its roots into two groups of at most D
// factors each, the pair (c * prod_S (z - rho), prod_rest (z - rho)) of least cost.
std::optional<FactorPair> best_root_split(const SpaceSpec& space, const Poly& h, int D) {
  const int n = h.degree();
  if (n < 1 || n > 16 || n > 2 * D) return std::nullopt;
  std::vector<Complex> coeff(static_cast<std::size_t>(n) + 1);
  for (const auto& [a, c] : h.terms()) coeff[static_cast<std::size_t>(a[0])] = c;
  const Complex lead = coeff.back();
  Matrix companion = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeff[static_cast<std::size_t>(i)] / lead;
  const Eigen::ComplexEigenSolver<Matrix> es(companion, false);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Vector roots = es.eigenvalues();

  std::optional<FactorPair> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k > D || n - k > D) continue;
    Poly f = Poly::constant(1, lead);
    Poly g = Poly::constant(1, 1.0);
    for (int i = 0; i < n; ++i) {
      const Poly factor = Poly::variable(1, 0) - Poly::constant(1, roots(i));
      if (mask & (1u << i)) {
        f *= factor;
      } else {
        g *= factor;
      }
    }
    const double cost = norm(space, f) * norm(space, g);
    if (cost < best_cost) {
      best_cost = cost;
      best = FactorPair{std::move(f), std::move(g)};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Hankel symbols parameterized by orthonormal coordinates c of b (deg b <= D).

class HankelFamily {
 public:
  HankelFamily(const SpaceSpec& space, int D) : basis_(space, D) {
    const auto n = basis_.size();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto g = basis_.index_of(basis_[i] + basis_[j]);
        if (!g) continue;
        slots_.push_back({static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(*g),
                          basis_.norm(*g) / (basis_.norm(i) * basis_.norm(j))});
      }
    }
  }

  const GradedBasis& basis() const { return basis_; }

  Matrix matrix(const Vector& c) const {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    Matrix H = Matrix::Zero(n, n);
    for (const Slot& s : slots_) H(s.row, s.col) = std::conj(c(s.symbol)) * s.weight;
    return H;
  }

  double norm(const Vector& c) const {
    const Eigen::VectorXd sv = singular_values(matrix(c));
    return sv.size() > 0 ? sv(0) : 0.0;
  }

 private:
  struct Slot {
    Eigen::Index row, col, symbol;
    double weight;
  };
  GradedBasis basis_;
  std::vector<Slot> slots_;
};

}  // namespace

Factorization make_factorization(const SpaceSpec& space, const Poly& target, std::vector<FactorPair> pairs) {
  check_space(space, target);
  Factorization out;
  out.target = target;
  Poly sum(space.dim());
  for (const FactorPair& p : pairs) {
    check_space(space, p.f);
    check_space(space, p.g);
    sum += p.f * p.g;
    out.cost += norm(space, p.f) * norm(space, p.g);
  }
  out.defect = coefficient_distance(target, sum);
  out.pairs = std::move(pairs);
  return out;
}

Complex pairing(const SpaceSpec& space, const Poly& h, const Poly& b) { return inner_product(space, h, b); }

LowerBound wp_lower_bound(const SpaceSpec& space, const Poly& h, int D, const LowerBoundOptions& opts) {
  check_space(space, h);
  if (D < 0) throw InvalidArgument("symbol degree must be non-negative");
  LowerBound best;
  if (h.is_zero()) return best;

  const HankelFamily fam(space, D);
  const GradedBasis& basis = fam.basis();
  Poly h_low(space.dim());
  for (const auto& [a, c] : h.terms()) {
    if (a.degree() <= D) h_low.set(a, c);
  }
  if (h_low.is_zero()) return best;  // no symbol of degree <= D sees h
  const Vector ht = to_coords(basis, h_low);

  int evals = 0;
  auto objective = [&](const Vector& c) {
    ++evals;
    const double hn = fam.norm(c);
    return hn > 0.0 ? std::abs(c.dot(ht)) / hn : 0.0;  // c.dot(ht) = sum conj(c) ht = <h, b>
  };

  std::vector<Vector> starts;
  starts.push_back(ht);
  for (const auto& [a, c] : h_low.terms()) {
    Vector e = Vector::Zero(ht.size());
    e(static_cast<Eigen::Index>(*basis.index_of(a))) = c * basis.norm(*basis.index_of(a));
    starts.push_back(std::move(e));
  }
  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < opts.random_starts; ++s) starts.push_back(random_coords(rng, ht.size(), 1.0));

  Vector best_c;
  double best_val = -1.0;
  for (Vector c : starts) {
    double val = objective(c);
    double step = opts.initial_step;
    for (int sweep = 0; sweep < opts.max_sweeps && step >= opts.min_step; ++sweep) {
      const double scale = c.cwiseAbs().maxCoeff();
      bool improved = false;
      for (Eigen::Index j = 0; j < 2 * c.size(); ++j) {
        const Complex dir = (j % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
        for (double sign : {1.0, -1.0}) {
          Vector trial = c;
          trial(j / 2) += sign * step * scale * dir;
          const double tv = objective(trial);
          if (tv > val * (1.0 + 1e-13)) {
            c = std::move(trial);
            val = tv;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (val > best_val) {
      best_val = val;
      best_c = c;
    }
  }

  best.witness = from_coords(basis, best_c);
  best.hankel_norm = fam.norm(best_c);
  best.pairing = pairing(space, h, *best.witness);
  best.value = best.hankel_norm > 0.0 ? std::abs(best.pairing) / best.hankel_norm : 0.0;
  best.evaluations = evals;
  return best;
}

UpperBound wp_upper_bound(const SpaceSpec& space, const Poly& h, int r, int D, const UpperBoundOptions& opts) {
  check_space(space, h);
  if (r < 1) throw InvalidArgument("rank must be at least 1");
  if (D < 0) throw InvalidArgument("factor degree must be non-negative");
  if (opts.initial.size() > static_cast<std::size_t>(r)) throw InvalidArgument("seed factorization exceeds rank");
  UpperBound out;
  if (h.is_zero()) {
    out.factorization = make_factorization(space, h, {});
    out.converged = true;
    out.cost_history = {0.0};
    return out;
  }
  if (h.degree() > 2 * D) {
    throw Infeasible("deg h = " + std::to_string(h.degree()) + " exceeds 2D = " + std::to_string(2 * D));
  }

  const ProductMap pm(space, D);
  const Eigen::Index m = pm.m();
  const Vector target = to_coords(pm.out(), h);
  const double scale = std::sqrt(target.norm() / (r * static_cast<double>(m)));
  std::mt19937_64 rng(opts.seed);

  std::vector<RunResult> runs;
  int iters = 0;

  if (!opts.initial.empty()) {
    PairState s;
    for (const FactorPair& p : opts.initial) {
      s.x.push_back(to_coords(pm.in(), p.f));
      s.y.push_back(to_coords(pm.in(), p.g));
    }
    while (static_cast<int>(s.x.size()) < r) {
      s.x.push_back(Vector::Zero(m));
      s.y.push_back(Vector::Zero(m));
    }
    if (coord_defect(pm, s, target) <= opts.feasibility_tol || find_feasible(pm, s, target, opts, iters)) {
      runs.push_back(descend(pm, std::move(s), target, opts, iters));
    }
  }

  std::vector<PairState> starts;
  if (h.degree() <= D) {
    // (h, 1) in the first slot, small noise elsewhere.
    PairState s = random_state(rng, r, m, 1e-3 * scale);
    s.x[0] = to_coords(pm.in(), h);
    s.y[0] = to_coords(pm.in(), Poly::constant(space.dim(), 1.0));
    starts.push_back(std::move(s));
  }
  // Exact splits h = (h / z^beta) z^beta for monomials beta dividing every term.
  std::vector<int> common(static_cast<std::size_t>(space.dim()), std::numeric_limits<int>::max());
  for (const auto& [a, c] : h.terms()) {
    for (int i = 0; i < space.dim(); ++i) {
      auto& e = common[static_cast<std::size_t>(i)];
      e = std::min(e, a[i]);
    }
  }
  const MultiIndex g(common);
  for (const MultiIndex& beta : enumerate_multi_indices(space.dim(), D)) {
    if (beta.degree() == 0 || !beta.divides(g) || h.degree() - beta.degree() > D) continue;
    Poly q(space.dim());
    for (const auto& [a, c] : h.terms()) q.set(a - beta, c);
    PairState s;
    s.x.assign(static_cast<std::size_t>(r), Vector::Zero(m));
    s.y.assign(static_cast<std::size_t>(r), Vector::Zero(m));
    s.x[0] = to_coords(pm.in(), q);
    s.y[0] = to_coords(pm.in(), Poly::monomial(beta));
    starts.push_back(std::move(s));
  }
  if (space.dim() == 1) {
    if (auto split = best_root_split(space, h, D)) {
      PairState s;
      s.x.assign(static_cast<std::size_t>(r), Vector::Zero(m));
      s.y.assign(static_cast<std::size_t>(r), Vector::Zero(m));
      s.x[0] = to_coords(pm.in(), split->f);
      s.y[0] = to_coords(pm.in(), split->g);
      starts.push_back(std::move(s));
    }
  }
  for (int k = 0; k < opts.restarts; ++k) starts.push_back(random_state(rng, r, m, scale));

  for (PairState& s : starts) {
    if (find_feasible(pm, s, target, opts, iters)) runs.push_back(descend(pm, std::move(s), target, opts, iters));
  }
  if (runs.empty()) {
    throw Infeasible("no exact representation sum_{i<=" + std::to_string(r) + "} f_i g_i = h with degree <= " +
                     std::to_string(D) + " was found");
  }

  const auto best = std::min_element(runs.begin(), runs.end(),
                                     [](const RunResult& a, const RunResult& b) { return a.cost < b.cost; });
  std::vector<FactorPair> pairs;
  for (std::size_t i = 0; i < best->state.x.size(); ++i) {
    if (best->state.x[i].norm() == 0.0) continue;
    pairs.push_back({from_coords(pm.in(), best->state.x[i]), from_coords(pm.in(), best->state.y[i])});
  }
  out.factorization = make_factorization(space, h, std::move(pairs));
  out.value = out.factorization.cost;
  out.iterations = iters;
  out.converged = best->converged;
  out.cost_history = best->history;
  return out;
}

NormBracket wp_bracket(const SpaceSpec& space, const Poly& h, int r, int D, const BracketOptions& opts) {
  NormBracket out;
  out.degree = D;
  out.rank = r;
  const LowerBound lo = wp_lower_bound(space, h, D, opts.lower);
  const UpperBound up = wp_upper_bound(space, h, r, D, opts.upper);
  out.lower = lo.value;
  out.lower_witness = lo.witness;
  out.upper = up.value;
  out.upper_witness = up.factorization;
  out.iterations = up.iterations;
  const bool hardy_kernel = space.dim() == 1 &&
                            (space.family() == Family::Hardy || space.family() == Family::DruryArveson);
  if (hardy_kernel) out.h1_oracle = hardy_h1_quadrature(h, 8 * (std::max(h.degree(), 0) + 1));
  if (out.lower > out.upper + opts.inversion_tol) {
    throw BracketInversion("weak product bracket inverted: lower " + std::to_string(out.lower) + " > upper " +
                           std::to_string(out.upper));
  }
  return out;
}

H1Quadrature hardy_h1_quadrature_report(const Poly& h, int Q) {
  if (h.dim() != 1) throw InvalidArgument("H^1 quadrature needs a single-variable polynomial");
  H1Quadrature out;
  if (h.is_zero()) {
    out.converged = true;
    return out;
  }
  std::vector<Complex> c(static_cast<std::size_t>(h.degree()) + 1, 0.0);
  for (const auto& [a, v] : h.terms()) c[static_cast<std::size_t>(a[0])] = v;
  auto trapezoid = [&](int nodes) {
    double sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
      Complex acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
      sum += std::abs(acc);
    }
    return sum / nodes;
  };
  int nodes = std::max(Q, 8 * (h.degree() + 1));
  double prev = trapezoid(nodes);
  constexpr int kMaxNodes = 1 << 24;
  while (nodes < kMaxNodes) {
    nodes *= 2;
    const double cur = trapezoid(nodes);
    const bool done = std::abs(cur - prev) < 1e-9;
    prev = cur;
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.value = prev;
  out.nodes = nodes;
  return out;
}

double hardy_h1_quadrature(const Poly& h, int Q) { return hardy_h1_quadrature_report(h, Q).value; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent:
      return "CONSISTENT";
    case Verdict::Refuted:
      return "REFUTED";
    case Verdict::IdentityFailed:
      return "IDENTITY-FAILED";
  }
  return "IDENTITY-FAILED";
}

FactorizationCertificate certify_mult_factorization(const SpaceSpec& space, const PolyMatrix& theta,
                                                    const PolyMatrix& phi, const PolyMatrix& psi, int N, double tol) {
  if (phi.rows() != psi.rows() || phi.cols() != psi.cols()) {
    throw InvalidArgument("certificate factors Phi and Psi must have the same shape");
  }
  if (theta.rows() != psi.cols() || theta.cols() != phi.cols()) {
    throw InvalidArgument("Theta shape does not match Psi^T Phi");
  }
  FactorizationCertificate cert{theta, phi, psi, N, {}, {}, 0.0, Verdict::IdentityFailed};
  const PolyMatrix product = psi_T_phi(psi, phi);
  double acc = 0.0;
  for (int i = 0; i < theta.rows(); ++i) {
    for (int j = 0; j < theta.cols(); ++j) {
      const double d = coefficient_distance(theta(i, j), product(i, j));
      acc += d * d;
    }
  }
  cert.identity_defect = std::sqrt(acc);
  cert.phi_norm = operator_norm(block_mult_matrix(space, phi.rows(), phi.cols(), phi.entries(), N));
  cert.psi_norm = operator_norm(block_mult_matrix(space, psi.rows(), psi.cols(), psi.entries(), N));
  if (cert.identity_defect > tol) {
    cert.verdict = Verdict::IdentityFailed;
  } else if (cert.phi_norm.value > 1.0 + tol || cert.psi_norm.value > 1.0 + tol) {
    cert.verdict = Verdict::Refuted;
  } else {
    cert.verdict = Verdict::Consistent;
  }
  return cert;
}

FactorizationCertificate certify_mult_factorization(const SpaceSpec& space, const Poly& theta,
                                                    const std::vector<Poly>& phis, const std::vector<Poly>& psis,
                                                    int N, double tol) {
  if (phis.size() != psis.size()) throw InvalidArgument("factor lists differ in length");
  if (phis.empty()) throw InvalidArgument("factor lists must be non-empty");
  PolyMatrix th(1, 1, theta.dim());
  th(0, 0) = theta;
  return certify_mult_factorization(space, th, PolyMatrix::column(phis), PolyMatrix::column(psis), N, tol);
}

}  // namespace wplab
