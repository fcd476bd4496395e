#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "wplab/wplab.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  wplab_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("spaces and polynomials through the C interface") {
  wplab_space* space = nullptr;
  REQUIRE(wplab_space_from_name("da2", &space) == WPLAB_OK);
  CHECK(wplab_space_dim(space) == 2);
  char* text = nullptr;
  REQUIRE(wplab_space_to_json(space, &text) == WPLAB_OK);
  CHECK(take(text) == R"({"family":"da","d":2})");

  wplab_space* bad = nullptr;
  CHECK(wplab_space_from_name("bergman", &bad) == WPLAB_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(wplab_last_error()).find("bergman") != std::string::npos);
  CHECK(wplab_space_from_json("{not json", &bad) == WPLAB_ERR_INVALID_ARGUMENT);
  CHECK(wplab_space_from_json(R"({"family":"custom","d":1,"coeffs":[2.0]})", &bad) == WPLAB_ERR_INVALID_ARGUMENT);

  wplab_poly* p = nullptr;
  REQUIRE(wplab_poly_parse("(1+z1)^2", 2, &p) == WPLAB_OK);
  CHECK(wplab_poly_degree(p) == 2);
  REQUIRE(wplab_poly_to_json(p, &text) == WPLAB_OK);
  const std::string json = take(text);
  wplab_poly* q = nullptr;
  REQUIRE(wplab_poly_from_json(json.c_str(), 2, &q) == WPLAB_OK);
  REQUIRE(wplab_poly_to_json(q, &text) == WPLAB_OK);
  CHECK(take(text) == json);
  CHECK(wplab_poly_parse("(1+", 1, &q) == WPLAB_ERR_INVALID_ARGUMENT);

  wplab_poly* r1 = nullptr;
  wplab_poly* r2 = nullptr;
  REQUIRE(wplab_poly_random(2, 3, 42, &r1) == WPLAB_OK);
  REQUIRE(wplab_poly_random(2, 3, 42, &r2) == WPLAB_OK);
  char* a = nullptr;
  char* b = nullptr;
  wplab_poly_to_json(r1, &a);
  wplab_poly_to_json(r2, &b);
  CHECK(take(a) == take(b));

  wplab_poly_free(r1);
  wplab_poly_free(r2);
  wplab_poly_free(p);
  wplab_poly_free(q);
  wplab_space_free(space);
  CHECK(std::string(wplab_version()) == "0.3.0");
}

TEST_CASE("numerical entry points") {
  wplab_space* hardy = nullptr;
  wplab_space* da2 = nullptr;
  wplab_space_from_name("hardy", &hardy);
  wplab_space_from_name("da2", &da2);

  wplab_poly* z = nullptr;
  wplab_poly_parse("z", 1, &z);
  wplab_norm_result nr{};
  REQUIRE(wplab_mult_norm(hardy, z, 5, 1e-10, 100000, &nr) == WPLAB_OK);
  CHECK(std::abs(nr.value - 1.0) <= 1e-10);
  CHECK(nr.truncation == 5);
  CHECK(wplab_mult_norm(hardy, z, -1, 1e-10, 100000, &nr) == WPLAB_ERR_INVALID_ARGUMENT);

  char* text = nullptr;
  REQUIRE(wplab_hankel_matrix_json(hardy, z, 1, 1, &text) == WPLAB_OK);
  const auto m = nlohmann::json::parse(take(text));
  CHECK(m["rows"] == 2);
  CHECK(m["conj_codomain"] == true);
  CHECK(m["entries"][1][0] == 1.0);
  REQUIRE(wplab_mult_matrix_json(hardy, z, 2, &text) == WPLAB_OK);
  CHECK(nlohmann::json::parse(take(text))["rows"] == 4);

  wplab_gap_result gap{};
  REQUIRE(wplab_transpose_gap(da2, 2, 6, 1e-10, &gap) == WPLAB_OK);
  CHECK(std::abs(gap.col_norm - std::sqrt(3.0)) <= 1e-8);
  CHECK(gap.certificate_ok == 1);
  CHECK(wplab_transpose_gap(hardy, 2, 6, 1e-10, &gap) == WPLAB_ERR_INVALID_ARGUMENT);

  wplab_poly* z1 = nullptr;
  wplab_poly* z2 = nullptr;
  wplab_poly_parse("z1", 2, &z1);
  wplab_poly_parse("z2", 2, &z2);
  const wplab_poly* tuple[] = {z1, z2};
  REQUIRE(wplab_column_row_gap(da2, tuple, 2, 0, 1e-10, &gap) == WPLAB_OK);
  CHECK(std::abs(gap.col_norm - std::sqrt(2.0)) <= 1e-9);
  CHECK(std::abs(gap.row_norm - 1.0) <= 1e-9);

  wplab_space* dir = nullptr;
  wplab_space_from_name("dirichlet", &dir);
  double coeffs[50];
  int pass = 0;
  REQUIRE(wplab_cnp_check(dir, 50, coeffs, &pass) == WPLAB_OK);
  CHECK(pass == 1);
  CHECK(coeffs[0] == doctest::Approx(0.5));
  wplab_space* custom = nullptr;
  REQUIRE(wplab_space_from_json(R"({"family":"custom","d":1,"coeffs":[1,1,10]})", &custom) == WPLAB_OK);
  REQUIRE(wplab_cnp_check(custom, 3, nullptr, &pass) == WPLAB_OK);
  CHECK(pass == 0);

  wplab_poly* b = nullptr;
  wplab_poly_parse("z1^2 z2", 2, &b);
  double res = 1.0;
  REQUIRE(wplab_intertwining_residual(da2, b, z2, 3, &res) == WPLAB_OK);
  CHECK(res <= 1e-12);
  const double w_re[] = {0.3, 0.0};
  const double w_im[] = {0.0, 0.4};
  double s2 = 1.0;
  double fr = 1.0;
  REQUIRE(wplab_kernel_hankel_rank_check(da2, w_re, w_im, 3, &s2, &fr) == WPLAB_OK);
  CHECK(s2 <= 1e-12);
  CHECK(fr <= 1e-10);
  REQUIRE(wplab_kernel_dagger_residual(da2, b, w_re, w_im, 3, &res) == WPLAB_OK);
  CHECK(res <= 1e-10);

  wplab_poly* h = nullptr;
  wplab_poly_parse("(1+z)^2", 1, &h);
  wplab_wp_options opts;
  wplab_wp_options_default(&opts);
  CHECK(opts.seed == 0x5EED);
  REQUIRE(wplab_wp_bracket_json(hardy, h, 1, 1, &opts, &text) == WPLAB_OK);
  const auto br = nlohmann::json::parse(take(text));
  CHECK(std::abs(br["upper"].get<double>() - 2.0) <= 1e-8);
  CHECK(std::abs(br["h1_oracle"].get<double>() - 2.0) <= 1e-9);
  CHECK(br["pairs"].size() == 1);
  wplab_poly* z5 = nullptr;
  wplab_poly_parse("z^5", 1, &z5);
  CHECK(wplab_wp_bracket_json(hardy, z5, 1, 1, &opts, &text) == WPLAB_ERR_INFEASIBLE);
  CHECK(wplab_wp_bracket_json(hardy, z1, 1, 1, &opts, &text) == WPLAB_ERR_INVALID_ARGUMENT);
  CHECK(wplab_mult_norm(nullptr, z, 2, 1e-10, 10, &nr) == WPLAB_ERR_INVALID_ARGUMENT);

  for (wplab_poly* p : {z, z1, z2, b, h, z5}) wplab_poly_free(p);
  for (wplab_space* s : {hardy, da2, dir, custom}) wplab_space_free(s);
}
