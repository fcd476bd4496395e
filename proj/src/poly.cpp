#include "wplab/poly.hpp"

#include <cmath>
#include <random>

#include "wplab/error.hpp"

namespace wplab {

Poly::Poly(int d) : dim_(d) {
  if (d < 1) throw InvalidArgument("polynomial dimension must be positive");
}

Poly Poly::constant(int d, Complex c) {
  Poly p(d);
  p.set(MultiIndex::zero(d), c);
  return p;
}

Poly Poly::monomial(const MultiIndex& alpha, Complex c) {
  Poly p(alpha.dim());
  p.set(alpha, c);
  return p;
}

Poly Poly::variable(int d, int var) {
  if (var < 0 || var >= d) throw InvalidArgument("variable index out of range");
  return monomial(MultiIndex::unit(d, var));
}

int Poly::degree() const {
  // Graded order: the last key has the highest degree.
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Complex Poly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void Poly::set(const MultiIndex& alpha, Complex c) {
  check_dim(alpha);
  if (c == Complex(0.0)) {
    terms_.erase(alpha);
  } else {
    terms_[alpha] = c;
  }
}

void Poly::add_term(const MultiIndex& alpha, Complex c) {
  check_dim(alpha);
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  check_dim(other);
  for (const auto& [a, c] : other.terms_) add_term(a, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_dim(other);
  for (const auto& [a, c] : other.terms_) add_term(a, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_dim(b);
  Poly out(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second == Complex(0.0) ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw InvalidArgument("negative polynomial power");
  Poly result = constant(dim_, 1.0);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Poly Poly::lift(int d) const {
  if (d < dim_) throw InvalidArgument("cannot lift to fewer variables");
  Poly out(d);
  for (const auto& [a, c] : terms_) {
    std::vector<int> e(a.exponents().begin(), a.exponents().end());
    e.resize(static_cast<std::size_t>(d), 0);
    out.set(MultiIndex(std::move(e)), c);
  }
  return out;
}

void Poly::check_dim(const MultiIndex& alpha) const {
  if (alpha.dim() != dim_) throw InvalidArgument("multi-index length does not match polynomial dimension");
}

void Poly::check_dim(const Poly& other) const {
  if (other.dim_ != dim_) throw InvalidArgument("polynomial dimension mismatch");
}

Complex evaluate(const Poly& f, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != f.dim()) throw InvalidArgument("point dimension does not match polynomial");
  Complex sum = 0.0;
  for (const auto& [a, c] : f.terms()) {
    Complex m = c;
    for (int i = 0; i < a.dim(); ++i) {
      for (int k = 0; k < a[i]; ++k) m *= z[static_cast<std::size_t>(i)];
    }
    sum += m;
  }
  return sum;
}

Poly random_poly(int d, int max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> numer(1, 8);
  Poly p(d);
  for (const MultiIndex& a : enumerate_multi_indices(d, max_degree)) {
    if (coin(rng) == 0) continue;
    const int k = numer(rng) * (coin(rng) == 0 ? -1 : 1);
    p.set(a, k / 4.0);
  }
  return p;
}

double coefficient_distance(const Poly& a, const Poly& b) {
  const Poly diff = a - b;
  double s = 0.0;
  for (const auto& [e, c] : diff.terms()) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace wplab
