#include <cmath>
#include <random>

#include "doctest.h"
#include "wplab/error.hpp"
#include "wplab/expr.hpp"
#include "wplab/norms.hpp"
#include "wplab/weak_product.hpp"

using namespace wplab;

namespace {

Poly hp(const char* text) { return parse_poly(text, 1); }

// Independent quadrature at a fixed, generous node count.
double h1_reference(const Poly& h, int nodes) {
  double acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const Complex z = std::polar(1.0, 2.0 * M_PI * j / nodes);
    const Complex pt[] = {z};
    acc += std::abs(evaluate(h, pt));
  }
  return acc / nodes;
}

UpperBoundOptions light(std::uint64_t seed) {
  UpperBoundOptions o;
  o.restarts = 1;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("pairing examples") {
  CHECK(pairing(SpaceSpec::hardy(), hp("(1+z)^2"), hp("z^2")) == Complex(1.0));
  for (const auto& s : {SpaceSpec::hardy(), SpaceSpec::drury_arveson(2), SpaceSpec::dirichlet()}) {
    CHECK(pairing(s, Poly::constant(s.dim(), 1.0), Poly::constant(s.dim(), 1.0)) == Complex(1.0));
  }
  CHECK(pairing(SpaceSpec::hardy(), hp("z"), hp("z^3")) == Complex(0.0));
}

TEST_CASE("wp_lower_bound examples") {
  const auto hardy = SpaceSpec::hardy();
  const LowerBound z2 = wp_lower_bound(hardy, hp("z^2"), 2);
  CHECK(z2.value == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(z2.witness.has_value());
  CHECK(std::abs(z2.pairing) / z2.hankel_norm == doctest::Approx(z2.value));

  const LowerBound zero = wp_lower_bound(hardy, Poly(1), 3);
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.witness.has_value());

  CHECK(wp_lower_bound(hardy, hp("(1+z)^2"), 4).value >= 1.5);
  CHECK_THROWS_AS(wp_lower_bound(hardy, hp("z"), -1), InvalidArgument);
}

TEST_CASE("lower bound witnesses re-verify") {
  const auto da2 = SpaceSpec::drury_arveson(2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Poly h = random_poly(2, 3, seed);
    const LowerBound lb = wp_lower_bound(da2, h, 3);
    if (!lb.witness) continue;
    const Complex p = pairing(da2, h, *lb.witness);
    const double hn = singular_values(hankel_matrix(da2, *lb.witness, 3, 3).entries)(0);
    CHECK(std::abs(std::abs(p) / hn - lb.value) < 1e-9);
  }
}

TEST_CASE("wp_upper_bound examples") {
  const auto hardy = SpaceSpec::hardy();
  const UpperBound sq = wp_upper_bound(hardy, hp("(1+z)^2"), 1, 1);
  CHECK(std::abs(sq.value - 2.0) <= 1e-8);
  CHECK(sq.factorization.defect <= 1e-9);
  const auto& pair = sq.factorization.pairs.at(0);
  CHECK(std::abs(norm(hardy, pair.f) - norm(hardy, pair.g)) < 1e-8);
  CHECK(std::abs(pair.f.coeff(MultiIndex{1}) / pair.f.coeff(MultiIndex{0}) - 1.0) < 1e-6);

  const UpperBound z4 = wp_upper_bound(hardy, hp("z^4"), 1, 2);
  CHECK(std::abs(z4.value - 1.0) <= 1e-8);

  const auto da2 = SpaceSpec::drury_arveson(2);
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const Poly f = random_poly(2, 2, seed) + Poly::constant(2, 1.0);
    const Poly g = random_poly(2, 2, seed + 100) + Poly::constant(2, 1.0);
    UpperBoundOptions o = light(seed);
    o.initial = {{f, g}};
    const UpperBound ub = wp_upper_bound(da2, f * g, 1, std::max(f.degree(), g.degree()), o);
    CHECK(ub.value <= norm(da2, f) * norm(da2, g) + 1e-9);
    CHECK(ub.factorization.defect <= 1e-9);
  }
}

TEST_CASE("wp_upper_bound reports infeasible problems") {
  CHECK_THROWS_AS(wp_upper_bound(SpaceSpec::hardy(), hp("z^5"), 2, 2), Infeasible);
  CHECK_THROWS_AS(wp_upper_bound(SpaceSpec::drury_arveson(3), parse_poly("z1^2 + z2^2 + z3^2", 3), 1, 1, light(1)),
                  Infeasible);
  CHECK_THROWS_AS(wp_upper_bound(SpaceSpec::hardy(), hp("z"), 0, 1), InvalidArgument);
  UpperBoundOptions too_many;
  too_many.initial = {{hp("1"), hp("z")}, {hp("1"), hp("z")}};
  CHECK_THROWS_AS(wp_upper_bound(SpaceSpec::hardy(), hp("z"), 1, 1, too_many), InvalidArgument);
  const UpperBound zero = wp_upper_bound(SpaceSpec::hardy(), Poly(1), 2, 2);
  CHECK(zero.value == 0.0);
}

TEST_CASE("wp_bracket examples") {
  const auto hardy = SpaceSpec::hardy();
  for (int k = 0; k <= 8; ++k) {
    const Poly h = Poly::monomial(MultiIndex{k});
    const int D = std::max(k, 1);
    const NormBracket b = wp_bracket(hardy, h, 1, D);
    CHECK(b.lower >= 1.0 - 1e-8);
    CHECK(b.upper <= 1.0 + 1e-8);
    REQUIRE(b.h1_oracle.has_value());
    CHECK(*b.h1_oracle == doctest::Approx(1.0).epsilon(1e-9));
  }
  BracketOptions opts;
  opts.upper.restarts = 2;
  const NormBracket sq = wp_bracket(hardy, hp("(1+z)^2"), 2, 3, opts);
  CHECK(sq.lower >= 1.5);
  CHECK(sq.lower <= 2.0 + 1e-9);
  CHECK(sq.upper >= 2.0 - 1e-9);
  CHECK(sq.h1_oracle.value() == doctest::Approx(2.0).epsilon(1e-9));

  const NormBracket zero = wp_bracket(hardy, Poly(1), 1, 1);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);

  CHECK_FALSE(wp_bracket(SpaceSpec::dirichlet(), hp("z"), 1, 1).h1_oracle.has_value());

  BracketOptions strict;
  strict.inversion_tol = -0.5;
  CHECK_THROWS_AS(wp_bracket(hardy, hp("z"), 1, 1, strict), BracketInversion);
}

TEST_CASE("hardy_h1_quadrature examples") {
  CHECK(std::abs(hardy_h1_quadrature(hp("1"), 8) - 1.0) <= 1e-9);
  CHECK(std::abs(hardy_h1_quadrature(hp("(1+z)^2"), 8) - 2.0) <= 1e-9);
  CHECK(std::abs(hardy_h1_quadrature(hp("z^7"), 8) - 1.0) <= 1e-9);
  CHECK(hardy_h1_quadrature(Poly(1), 8) == 0.0);
  const auto rep = hardy_h1_quadrature_report(hp("1 - 0.3 z + 2i z^3"), 4);
  CHECK(rep.converged);
  CHECK(std::abs(rep.value - h1_reference(hp("1 - 0.3 z + 2i z^3"), 1 << 16)) < 1e-9);
  CHECK_THROWS_AS(hardy_h1_quadrature(parse_poly("z1", 2), 8), InvalidArgument);
}

TEST_CASE("certify_mult_factorization examples") {
  const auto da2 = SpaceSpec::drury_arveson(2);
  const Poly z1 = parse_poly("z1", 2);
  const Poly z2 = parse_poly("z2", 2);
  const Complex s = 1.0 / std::sqrt(2.0);

  // Unit-norm column (z1, z2)/sqrt(2).
  const auto ok = certify_mult_factorization(da2, parse_poly("(z1^2 + z2^2)/2", 2), {s * z1, s * z2},
                                             {s * z1, s * z2}, 4, 1e-9);
  CHECK(ok.verdict == Verdict::Consistent);
  CHECK(ok.phi_norm.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ok.identity_defect < 1e-15);

  // The column (z1, z2) itself has norm sqrt(2).
  const auto big = certify_mult_factorization(da2, parse_poly("z1^2 + z2^2", 2), {z1, z2}, {z1, z2}, 4, 1e-9);
  CHECK(big.verdict == Verdict::Refuted);
  CHECK(big.phi_norm.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  const auto one = certify_mult_factorization(da2, Poly::constant(2, 1.0), {Poly::constant(2, 1.0)},
                                              {Poly::constant(2, 1.0)}, 3, 1e-9);
  CHECK(one.verdict == Verdict::Consistent);

  const auto scaled = certify_mult_factorization(da2, parse_poly("z1^2 + z2^2", 2), {2.0 * z1, 2.0 * z2},
                                                 {0.5 * z1, 0.5 * z2}, 4, 1e-6);
  CHECK(scaled.identity_defect < 1e-15);
  CHECK(scaled.verdict == Verdict::Refuted);

  const auto wrong = certify_mult_factorization(da2, parse_poly("z1^2", 2), {s * z1, s * z2}, {s * z1, s * z2}, 4,
                                                1e-9);
  CHECK(wrong.verdict == Verdict::IdentityFailed);

  CHECK_THROWS_AS(certify_mult_factorization(da2, z1, {z1}, {z1, z2}, 2, 1e-9), InvalidArgument);
  CHECK(std::string(to_string(Verdict::IdentityFailed)) == "IDENTITY-FAILED");
}

TEST_CASE("duality sandwich on random instances") {
  std::mt19937_64 rng(0x5EED);
  int violations = 0;
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 2;
    const SpaceSpec space = d == 1 ? (t % 4 == 0 ? SpaceSpec::dirichlet() : SpaceSpec::hardy())
                                   : SpaceSpec::drury_arveson(2);
    Poly h = random_poly(d, 2, rng());
    if (h.is_zero()) h = Poly::constant(d, 1.0);
    const Poly b = random_poly(d, 3, rng());
    const UpperBound ub = wp_upper_bound(space, h, 2, 2, light(rng()));
    const double hb = operator_norm(hankel_matrix(space, b, 2, 2)).value;
    if (std::abs(pairing(space, h, b)) > ub.value * hb * (1.0 + 1e-9) + 1e-9) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("minimum-norm sweeps never increase the cost") {
  std::uint64_t seed = 71;
  for (const auto& space : {SpaceSpec::hardy(), SpaceSpec::drury_arveson(2)}) {
    for (int t = 0; t < 6; ++t) {
      Poly h = random_poly(space.dim(), 3, seed++);
      if (h.is_zero()) continue;
      const UpperBound ub = wp_upper_bound(space, h, 2, 2, light(seed));
      for (std::size_t i = 1; i < ub.cost_history.size(); ++i) {
        CHECK(ub.cost_history[i] <= ub.cost_history[i - 1] * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("H1 norm lies inside every Hardy bracket") {
  const auto hardy = SpaceSpec::hardy();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Poly h = random_poly(1, 1 + static_cast<int>(seed % 6), seed * 31);
    if (h.is_zero()) continue;
    const double h1 = hardy_h1_quadrature(h, 8);
    const UpperBound ub = wp_upper_bound(hardy, h, 4, 6, light(seed));
    const LowerBound lb = wp_lower_bound(hardy, h, 6);
    CHECK(h1 <= ub.value + 1e-6);
    CHECK(h1 >= lb.value - 1e-6);
  }
}

TEST_CASE("multiplying by a certified contraction does not increase the cost") {
  const auto da2 = SpaceSpec::drury_arveson(2);
  const Complex s = 1.0 / std::sqrt(2.0);
  const std::vector<Poly> phis = {s * parse_poly("z1", 2), s * parse_poly("z2", 2)};
  const Poly theta = parse_poly("(z1^2 + z2^2)/2", 2);
  REQUIRE(certify_mult_factorization(da2, theta, phis, phis, 4, 1e-9).verdict == Verdict::Consistent);
  for (std::uint64_t seed = 200; seed < 205; ++seed) {
    const Poly f = random_poly(2, 1, seed) + Poly::constant(2, 1.0);
    const Poly g = random_poly(2, 1, seed + 50) + Poly::constant(2, 1.0);
    const double c = norm(da2, f) * norm(da2, g);
    UpperBoundOptions o = light(seed);
    for (const auto& p : phis) o.initial.push_back({p * f, p * g});
    const UpperBound ub = wp_upper_bound(da2, theta * (f * g), 2, 2, o);
    CHECK(ub.value <= c + 1e-6);
  }
}
