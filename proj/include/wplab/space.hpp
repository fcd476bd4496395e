#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wplab/multi_index.hpp"
#include "wplab/poly.hpp"

namespace wplab {

enum class Family { Hardy, DruryArveson, Dirichlet, Custom };

// A diagonal normalized CNP space with kernel k(z,w) = sum_n a_n <z,w>^n.
//
// Hardy:         d = 1, a_n = 1
// DruryArveson:  d >= 1, a_n = 1
// Dirichlet:     d = 1, a_n = 1/(n+1)
// Custom:        user-supplied a_0 = 1, a_1, ..., a_M with every a_n > 0.
//
// A custom space knows only the coefficients it was given; asking for a
// norm that needs a_n with n > M raises ConfigError.
class SpaceSpec {
 public:
  static SpaceSpec hardy();
  static SpaceSpec drury_arveson(int d);
  static SpaceSpec dirichlet();
  static SpaceSpec custom(int d, std::vector<double> coeffs);

  Family family() const { return family_; }
  int dim() const { return dim_; }

  // a_n; throws ConfigError when unavailable.
  double kernel_coeff(int n) const;
  // Highest n with a known a_n, or nullopt when the sequence is unbounded.
  std::optional<int> max_coeff_degree() const;
  // Supplied coefficients for a custom space (empty otherwise).
  const std::vector<double>& custom_coeffs() const { return coeffs_; }

  // Short name: "hardy", "da2", "dirichlet", "custom".
  std::string name() const;

  bool operator==(const SpaceSpec& other) const = default;

 private:
  SpaceSpec(Family family, int d, std::vector<double> coeffs);

  Family family_;
  int dim_;
  std::vector<double> coeffs_;
};

// ||z^alpha||^2 = alpha! / (a_{|alpha|} |alpha|!).
double monomial_norm_sq(const SpaceSpec& space, const MultiIndex& alpha);
double monomial_norm(const SpaceSpec& space, const MultiIndex& alpha);

// Multi-indices of degree <= max_degree in graded lex order, with their norms.
class GradedBasis {
 public:
  GradedBasis(const SpaceSpec& space, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  double norm(std::size_t i) const { return norms_[i]; }
  double norm_sq(std::size_t i) const { return norms_[i] * norms_[i]; }
  std::optional<std::size_t> index_of(const MultiIndex& alpha) const;

 private:
  int dim_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::vector<double> norms_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> lookup_;
};

// sum_alpha f_alpha conj(g_alpha) ||z^alpha||^2.
Complex inner_product(const SpaceSpec& space, const Poly& f, const Poly& g);
double norm(const SpaceSpec& space, const Poly& f);

struct CnpCheck {
  std::vector<double> b;  // b_1 .. b_N, Taylor coefficients of 1 - 1/k
  bool pass = false;
};

inline constexpr double kCnpTolerance = 1e-12;

// Taylor coefficients of 1 - 1/(sum a_n s^n) up to degree N; passes iff all
// are >= -kCnpTolerance. Entries of `a` beyond its length are taken as zero.
CnpCheck cnp_coefficient_check(std::span<const double> a, int N);
// Custom spaces are zero-padded past their supplied coefficients.
CnpCheck cnp_coefficient_check(const SpaceSpec& space, int N);

// Degree <= N truncation of k_w: coefficient of z^alpha is a_{|alpha|} (|alpha|!/alpha!) conj(w)^alpha.
Poly kernel_polynomial(const SpaceSpec& space, std::span<const Complex> w, int N);

}  // namespace wplab
