#include "wplab/space.hpp"

#include <cmath>
#include <string>

#include "wplab/error.hpp"

namespace wplab {

SpaceSpec::SpaceSpec(Family family, int d, std::vector<double> coeffs)
    : family_(family), dim_(d), coeffs_(std::move(coeffs)) {}

SpaceSpec SpaceSpec::hardy() { return SpaceSpec(Family::Hardy, 1, {}); }

SpaceSpec SpaceSpec::drury_arveson(int d) {
  if (d < 1) throw InvalidArgument("Drury-Arveson space needs d >= 1");
  return SpaceSpec(Family::DruryArveson, d, {});
}

SpaceSpec SpaceSpec::dirichlet() { return SpaceSpec(Family::Dirichlet, 1, {}); }

SpaceSpec SpaceSpec::custom(int d, std::vector<double> coeffs) {
  if (d < 1) throw InvalidArgument("custom space needs d >= 1");
  if (coeffs.empty() || coeffs.front() != 1.0) throw InvalidArgument("kernel coefficients must start with a_0 = 1");
  for (double a : coeffs) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("kernel coefficients must be positive and finite");
  }
  return SpaceSpec(Family::Custom, d, std::move(coeffs));
}

double SpaceSpec::kernel_coeff(int n) const {
  if (n < 0) throw InvalidArgument("negative kernel coefficient index");
  switch (family_) {
    case Family::Hardy:
    case Family::DruryArveson:
      return 1.0;
    case Family::Dirichlet:
      return 1.0 / (n + 1);
    case Family::Custom:
      if (static_cast<std::size_t>(n) >= coeffs_.size()) {
        throw ConfigError("kernel coefficient a_" + std::to_string(n) + " not supplied (custom space has " +
                          std::to_string(coeffs_.size()) + ")");
      }
      return coeffs_[static_cast<std::size_t>(n)];
  }
  return 1.0;
}

std::optional<int> SpaceSpec::max_coeff_degree() const {
  if (family_ == Family::Custom) return static_cast<int>(coeffs_.size()) - 1;
  return std::nullopt;
}

std::string SpaceSpec::name() const {
  switch (family_) {
    case Family::Hardy:
      return "hardy";
    case Family::DruryArveson:
      return "da" + std::to_string(dim_);
    case Family::Dirichlet:
      return "dirichlet";
    case Family::Custom:
      return "custom";
  }
  return "custom";
}

double monomial_norm_sq(const SpaceSpec& space, const MultiIndex& alpha) {
  if (alpha.dim() != space.dim()) throw InvalidArgument("multi-index length does not match space dimension");
  return 1.0 / (space.kernel_coeff(alpha.degree()) * alpha.multinomial());
}

double monomial_norm(const SpaceSpec& space, const MultiIndex& alpha) {
  return std::sqrt(monomial_norm_sq(space, alpha));
}

GradedBasis::GradedBasis(const SpaceSpec& space, int max_degree)
    : dim_(space.dim()), max_degree_(max_degree), indices_(enumerate_multi_indices(space.dim(), max_degree)) {
  norms_.reserve(indices_.size());
  lookup_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    norms_.push_back(monomial_norm(space, indices_[i]));
    lookup_.emplace(indices_[i], i);
  }
}

std::optional<std::size_t> GradedBasis::index_of(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Complex inner_product(const SpaceSpec& space, const Poly& f, const Poly& g) {
  if (f.dim() != space.dim() || g.dim() != space.dim()) throw InvalidArgument("inner product dimension mismatch");
  Complex sum = 0.0;
  // Both maps iterate in the same order; merge instead of lookups.
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  while (it != f.terms().end() && jt != g.terms().end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      sum += it->second * std::conj(jt->second) * monomial_norm_sq(space, it->first);
      ++it;
      ++jt;
    }
  }
  return sum;
}

double norm(const SpaceSpec& space, const Poly& f) { return std::sqrt(inner_product(space, f, f).real()); }

CnpCheck cnp_coefficient_check(std::span<const double> a, int N) {
  if (N < 1) throw InvalidArgument("CNP check needs N >= 1");
  if (a.empty() || a[0] != 1.0) throw InvalidArgument("kernel coefficients must start with a_0 = 1");
  auto coeff = [&](int n) { return static_cast<std::size_t>(n) < a.size() ? a[static_cast<std::size_t>(n)] : 0.0; };
  // c = 1/k termwise: c_0 = 1, c_n = -sum_{j=1..n} a_j c_{n-j}; then b_n = -c_n.
  std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
  c[0] = 1.0;
  CnpCheck out;
  out.pass = true;
  out.b.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += coeff(j) * c[static_cast<std::size_t>(n - j)];
    c[static_cast<std::size_t>(n)] = -s;
    out.b.push_back(s);
    if (s < -kCnpTolerance) out.pass = false;
  }
  return out;
}

CnpCheck cnp_coefficient_check(const SpaceSpec& space, int N) {
  if (space.family() == Family::Custom) return cnp_coefficient_check(space.custom_coeffs(), N);
  std::vector<double> a(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) a[static_cast<std::size_t>(n)] = space.kernel_coeff(n);
  return cnp_coefficient_check(a, N);
}

Poly kernel_polynomial(const SpaceSpec& space, std::span<const Complex> w, int N) {
  if (static_cast<int>(w.size()) != space.dim()) throw InvalidArgument("point dimension does not match space");
  Poly k(space.dim());
  for (const MultiIndex& alpha : enumerate_multi_indices(space.dim(), N)) {
    Complex c = space.kernel_coeff(alpha.degree()) * alpha.multinomial();
    for (int i = 0; i < alpha.dim(); ++i) {
      for (int e = 0; e < alpha[i]; ++e) c *= std::conj(w[static_cast<std::size_t>(i)]);
    }
    k.set(alpha, c);
  }
  return k;
}

}  // namespace wplab
