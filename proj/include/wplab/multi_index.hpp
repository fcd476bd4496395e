#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

namespace wplab {

// Exponent tuple of a monomial z^alpha in d variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }
  static MultiIndex unit(int d, int var);

  int dim() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  std::span<const int> exponents() const { return exps_; }

  MultiIndex operator+(const MultiIndex& other) const;
  // Componentwise difference; valid only when other <= *this componentwise.
  MultiIndex operator-(const MultiIndex& other) const;
  bool divides(const MultiIndex& other) const;

  // |alpha|! / alpha! as a double (exact while it fits in 53 bits).
  double multinomial() const;

  bool operator==(const MultiIndex& other) const { return exps_ == other.exps_; }
  // Graded lexicographic: lower degree first; within a degree, larger leading exponent first.
  std::strong_ordering operator<=>(const MultiIndex& other) const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const noexcept;
};

// Number of multi-indices in d variables with degree <= n, i.e. C(n+d, d).
std::size_t graded_count(int d, int n);

// All alpha with |alpha| <= n, in graded lexicographic order.
std::vector<MultiIndex> enumerate_multi_indices(int d, int n);

}  // namespace wplab
