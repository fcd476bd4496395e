#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the formulas it is used to check.

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <vector>

#include "wplab/poly.hpp"
#include "wplab/space.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

// Taylor coefficients b_1..b_N of 1 - 1/(sum a_n s^n), exact.
inline std::vector<Rational> cnp_series(const std::vector<Rational>& a, int N) {
  std::vector<Rational> c(static_cast<std::size_t>(N) + 1);
  c[0] = 1;
  for (int n = 1; n <= N; ++n) {
    Rational s = 0;
    for (int j = 1; j <= n && j < static_cast<int>(a.size()); ++j) s += a[j] * c[n - j];
    c[n] = -s;
  }
  std::vector<Rational> b;
  for (int n = 1; n <= N; ++n) b.push_back(-c[n]);
  return b;
}

// Number of ordered tuples in {0..d-1}^n whose letter counts equal alpha: the
// coefficient of z^alpha conj(w)^alpha in <z,w>^n, by enumeration.
inline long long ordered_tuple_count(const wplab::MultiIndex& alpha) {
  const int d = alpha.dim();
  const int n = alpha.degree();
  long long count = 0;
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      std::vector<int> hist(static_cast<std::size_t>(d), 0);
      for (int t : tuple) ++hist[static_cast<std::size_t>(t)];
      for (int i = 0; i < d; ++i) {
        if (hist[static_cast<std::size_t>(i)] != alpha[i]) return;
      }
      ++count;
      return;
    }
    for (int v = 0; v < d; ++v) {
      tuple[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

// Unit vector z^alpha/||z^alpha|| as a polynomial.
inline wplab::Poly unit_monomial(const wplab::SpaceSpec& space, const wplab::MultiIndex& alpha) {
  return wplab::Poly::monomial(alpha, 1.0 / wplab::norm(space, wplab::Poly::monomial(alpha)));
}

// <H_b e_alpha, conj(e_beta)> = <e_alpha e_beta, b>: the defining identity of H_b.
inline wplab::Complex hankel_entry(const wplab::SpaceSpec& space, const wplab::Poly& b,
                                   const wplab::MultiIndex& beta, const wplab::MultiIndex& alpha) {
  return wplab::inner_product(space, unit_monomial(space, alpha) * unit_monomial(space, beta), b);
}

// <phi e_alpha, e_beta>.
inline wplab::Complex mult_entry(const wplab::SpaceSpec& space, const wplab::Poly& phi,
                                 const wplab::MultiIndex& beta, const wplab::MultiIndex& alpha) {
  return wplab::inner_product(space, phi * unit_monomial(space, alpha), unit_monomial(space, beta));
}

}  // namespace oracle
