#include "wplab/wplab.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "wplab/error.hpp"
#include "wplab/expr.hpp"
#include "wplab/json_io.hpp"
#include "wplab/norms.hpp"
#include "wplab/operators.hpp"
#include "wplab/weak_product.hpp"

struct wplab_space {
  wplab::SpaceSpec spec;
};

struct wplab_poly {
  wplab::Poly poly;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
wplab_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return WPLAB_OK;
  } catch (const wplab::InvalidArgument& e) {
    g_last_error = e.what();
    return WPLAB_ERR_INVALID_ARGUMENT;
  } catch (const wplab::ConfigError& e) {
    g_last_error = e.what();
    return WPLAB_ERR_CONFIG;
  } catch (const wplab::Infeasible& e) {
    g_last_error = e.what();
    return WPLAB_ERR_INFEASIBLE;
  } catch (const wplab::NumericalFailure& e) {
    g_last_error = e.what();
    return WPLAB_ERR_NUMERICAL;
  } catch (const wplab::BracketInversion& e) {
    g_last_error = e.what();
    return WPLAB_ERR_BRACKET_INVERSION;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("JSON error: ") + e.what();
    return WPLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WPLAB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return WPLAB_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw wplab::InvalidArgument(what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<wplab::Complex> point(const wplab_space* space, const double* re, const double* im) {
  require(re != nullptr && im != nullptr, "point coordinates must not be NULL");
  std::vector<wplab::Complex> w;
  for (int i = 0; i < space->spec.dim(); ++i) w.emplace_back(re[i], im[i]);
  return w;
}

void fill_gap(const wplab::GapReport& rep, wplab_gap_result* out) {
  out->n = rep.n;
  out->trunc = rep.truncation;
  out->row_norm = rep.row_norm.value;
  out->col_norm = rep.col_norm.value;
  out->ratio = rep.ratio;
  out->expected_ratio = rep.expected_ratio;
}

}  // namespace

extern "C" {

const char* wplab_version(void) { return "0.3.0"; }

const char* wplab_last_error(void) { return g_last_error.c_str(); }

void wplab_string_free(char* s) { std::free(s); }

wplab_status wplab_space_from_name(const char* name, wplab_space** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "NULL argument");
    *out = new wplab_space{wplab::space_from_name(name)};
  });
}

wplab_status wplab_space_from_json(const char* json, wplab_space** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    *out = new wplab_space{wplab::space_from_json(wplab::Json::parse(json))};
  });
}

wplab_status wplab_space_to_json(const wplab_space* space, char** out) {
  return guarded([&] {
    require(space != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(wplab::space_to_json(space->spec).dump());
  });
}

int wplab_space_dim(const wplab_space* space) { return space ? space->spec.dim() : 0; }

void wplab_space_free(wplab_space* space) { delete space; }

wplab_status wplab_poly_parse(const char* expr, int d, wplab_poly** out) {
  return guarded([&] {
    require(expr != nullptr && out != nullptr, "NULL argument");
    *out = new wplab_poly{wplab::parse_poly(expr, d)};
  });
}

wplab_status wplab_poly_from_json(const char* json, int d, wplab_poly** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    *out = new wplab_poly{wplab::poly_from_json(wplab::Json::parse(json), d)};
  });
}

wplab_status wplab_poly_random(int d, int max_degree, uint64_t seed, wplab_poly** out) {
  return guarded([&] {
    require(out != nullptr, "NULL argument");
    *out = new wplab_poly{wplab::random_poly(d, max_degree, seed)};
  });
}

wplab_status wplab_poly_to_json(const wplab_poly* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(wplab::poly_to_json(p->poly).dump());
  });
}

int wplab_poly_degree(const wplab_poly* p) { return p ? p->poly.degree() : -1; }

void wplab_poly_free(wplab_poly* p) { delete p; }

wplab_status wplab_mult_norm(const wplab_space* space, const wplab_poly* phi, int trunc, double tol, int max_iter,
                             wplab_norm_result* out) {
  return guarded([&] {
    require(space && phi && out, "NULL argument");
    const wplab::NormEstimate est = wplab::operator_norm(wplab::mult_matrix(space->spec, phi->poly, trunc), tol, max_iter);
    *out = {est.value, est.residual, est.iterations, est.truncation,
            est.kind == wplab::NormKind::ExactOnTruncation ? 1 : 0};
  });
}

wplab_status wplab_mult_matrix_json(const wplab_space* space, const wplab_poly* phi, int trunc, char** out) {
  return guarded([&] {
    require(space && phi && out, "NULL argument");
    *out = dup_string(wplab::op_matrix_to_json(wplab::mult_matrix(space->spec, phi->poly, trunc)).dump());
  });
}

wplab_status wplab_hankel_matrix_json(const wplab_space* space, const wplab_poly* b, int n_dom, int n_cod,
                                      char** out) {
  return guarded([&] {
    require(space && b && out, "NULL argument");
    *out = dup_string(wplab::op_matrix_to_json(wplab::hankel_matrix(space->spec, b->poly, n_dom, n_cod)).dump());
  });
}

wplab_status wplab_transpose_gap(const wplab_space* space, int n, int trunc, double tol, wplab_gap_result* out) {
  return guarded([&] {
    require(space && out, "NULL argument");
    const wplab::TransposeGap gap = wplab::transpose_gap_experiment(space->spec, n, trunc, tol);
    fill_gap(gap.report, out);
    out->certificate_ok = gap.certificate.verdict == wplab::Verdict::Consistent ? 1 : 0;
  });
}

wplab_status wplab_column_row_gap(const wplab_space* space, const wplab_poly* const* phis, size_t count, int trunc,
                                  double tol, wplab_gap_result* out) {
  return guarded([&] {
    require(space && phis && out, "NULL argument");
    std::vector<wplab::Poly> list;
    for (size_t i = 0; i < count; ++i) {
      require(phis[i] != nullptr, "NULL polynomial in tuple");
      list.push_back(phis[i]->poly);
    }
    fill_gap(wplab::column_row_gap(space->spec, list, trunc, tol), out);
    out->certificate_ok = 0;
  });
}

wplab_status wplab_cnp_check(const wplab_space* space, int n_max, double* coeffs, int* pass) {
  return guarded([&] {
    require(space && pass, "NULL argument");
    const wplab::CnpCheck res = wplab::cnp_coefficient_check(space->spec, n_max);
    if (coeffs) std::copy(res.b.begin(), res.b.end(), coeffs);
    *pass = res.pass ? 1 : 0;
  });
}

wplab_status wplab_intertwining_residual(const wplab_space* space, const wplab_poly* b, const wplab_poly* psi,
                                         int trunc, double* out) {
  return guarded([&] {
    require(space && b && psi && out, "NULL argument");
    *out = wplab::intertwining_residual(space->spec, b->poly, psi->poly, trunc);
  });
}

wplab_status wplab_kernel_hankel_rank_check(const wplab_space* space, const double* w_re, const double* w_im,
                                            int trunc, double* second_singular_value, double* factor_residual) {
  return guarded([&] {
    require(space && second_singular_value && factor_residual, "NULL argument");
    const auto res = wplab::kernel_hankel_rank_check(space->spec, point(space, w_re, w_im), trunc);
    *second_singular_value = res.second_singular_value;
    *factor_residual = res.factor_residual;
  });
}

wplab_status wplab_kernel_dagger_residual(const wplab_space* space, const wplab_poly* theta, const double* w_re,
                                          const double* w_im, int trunc, double* out) {
  return guarded([&] {
    require(space && theta && out, "NULL argument");
    *out = wplab::kernel_dagger_residual(space->spec, theta->poly, point(space, w_re, w_im), trunc);
  });
}

void wplab_wp_options_default(wplab_wp_options* opts) {
  if (!opts) return;
  const wplab::UpperBoundOptions up;
  const wplab::LowerBoundOptions lo;
  opts->restarts = up.restarts;
  opts->max_iter = up.max_iter;
  opts->tol = up.tol;
  opts->seed = up.seed;
  opts->search_sweeps = lo.max_sweeps;
  opts->search_random_starts = lo.random_starts;
}

wplab_status wplab_wp_bracket_json(const wplab_space* space, const wplab_poly* h, int rank, int degree,
                                   const wplab_wp_options* opts, char** out) {
  return guarded([&] {
    require(space && h && out, "NULL argument");
    wplab_wp_options o;
    wplab_wp_options_default(&o);
    if (opts) o = *opts;
    wplab::BracketOptions bo;
    bo.upper.restarts = o.restarts;
    bo.upper.max_iter = o.max_iter;
    bo.upper.tol = o.tol;
    bo.upper.seed = o.seed;
    bo.lower.max_sweeps = o.search_sweeps;
    bo.lower.random_starts = o.search_random_starts;
    bo.lower.seed = o.seed;
    const wplab::NormBracket br = wplab::wp_bracket(space->spec, h->poly, rank, degree, bo);

    wplab::Json j;
    j["h"] = wplab::poly_to_json(h->poly);
    j["lower"] = br.lower;
    j["lower_witness"] = br.lower_witness ? wplab::poly_to_json(*br.lower_witness) : wplab::Json(nullptr);
    j["upper"] = br.upper;
    wplab::Json pairs = wplab::Json::array();
    for (const auto& p : br.upper_witness.pairs) {
      wplab::Json pj;
      pj["f"] = wplab::poly_to_json(p.f);
      pj["g"] = wplab::poly_to_json(p.g);
      pairs.push_back(std::move(pj));
    }
    j["pairs"] = std::move(pairs);
    j["h1_oracle"] = br.h1_oracle ? wplab::Json(*br.h1_oracle) : wplab::Json(nullptr);
    j["iters"] = br.iterations;
    *out = dup_string(j.dump());
  });
}

}  // extern "C"
