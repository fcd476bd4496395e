#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wplab/multi_index.hpp"

namespace wplab {

using Complex = std::complex<double>;

// Finitely supported coefficient map alpha -> c_alpha in d variables.
// Exact zeros are never stored; terms iterate in graded lexicographic order.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Complex>;

  explicit Poly(int d = 1);
  static Poly constant(int d, Complex c);
  static Poly monomial(const MultiIndex& alpha, Complex c = 1.0);
  // The coordinate function z_{var}, 0-based.
  static Poly variable(int d, int var);

  int dim() const { return dim_; }
  // -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Complex coeff(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, Complex c);
  void add_term(const MultiIndex& alpha, Complex c);
  const TermMap& terms() const { return terms_; }

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(Complex s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, Complex s) { return a *= s; }
  friend Poly operator*(Complex s, Poly a) { return a *= s; }
  Poly operator-() const { return *this * Complex(-1.0); }

  Poly pow(int k) const;

  // Embeds into a space with more variables (new variables get exponent 0).
  Poly lift(int d) const;

  bool operator==(const Poly& other) const = default;

 private:
  void check_dim(const MultiIndex& alpha) const;
  void check_dim(const Poly& other) const;

  int dim_;
  TermMap terms_;
};

Complex evaluate(const Poly& f, std::span<const Complex> z);

// Each monomial of degree <= max_degree is present with probability 1/2 and
// coefficient k/4, k uniform in [-8, 8] \ {0}. Deterministic for a given seed.
Poly random_poly(int d, int max_degree, std::uint64_t seed);

// Euclidean norm of the raw coefficient difference.
double coefficient_distance(const Poly& a, const Poly& b);

}  // namespace wplab
