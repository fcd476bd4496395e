#include "wplab/json_io.hpp"

#include <string>

#include "wplab/error.hpp"

namespace wplab {

Json poly_to_json(const Poly& f) {
  Json arr = Json::array();
  for (const auto& [a, c] : f.terms()) {
    Json t;
    t["e"] = std::vector<int>(a.exponents().begin(), a.exponents().end());
    t["re"] = c.real();
    t["im"] = c.imag();
    arr.push_back(std::move(t));
  }
  return arr;
}

Poly poly_from_json(const Json& j, int d) {
  if (!j.is_array()) throw InvalidArgument("polynomial JSON must be an array of terms");
  if (d < 0) d = j.empty() ? 1 : static_cast<int>(j.front().at("e").size());
  Poly p(d);
  try {
    for (const auto& t : j) {
      MultiIndex a(t.at("e").get<std::vector<int>>());
      if (a.dim() != d) throw InvalidArgument("term exponent length does not match d");
      const double re = t.contains("re") ? t.at("re").get<double>() : 0.0;
      const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
      p.add_term(a, Complex(re, im));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed polynomial JSON: ") + e.what());
  }
  return p;
}

Json space_to_json(const SpaceSpec& space) {
  Json j;
  switch (space.family()) {
    case Family::Hardy:
      j["family"] = "hardy";
      break;
    case Family::DruryArveson:
      j["family"] = "da";
      break;
    case Family::Dirichlet:
      j["family"] = "dirichlet";
      break;
    case Family::Custom:
      j["family"] = "custom";
      break;
  }
  j["d"] = space.dim();
  if (space.family() == Family::Custom) j["coeffs"] = space.custom_coeffs();
  return j;
}

SpaceSpec space_from_json(const Json& j) {
  try {
    const std::string family = j.at("family").get<std::string>();
    const int d = j.contains("d") ? j.at("d").get<int>() : 1;
    if (family == "hardy") {
      if (d != 1) throw InvalidArgument("hardy space requires d = 1");
      return SpaceSpec::hardy();
    }
    if (family == "dirichlet") {
      if (d != 1) throw InvalidArgument("dirichlet space requires d = 1");
      return SpaceSpec::dirichlet();
    }
    if (family == "da") return SpaceSpec::drury_arveson(d);
    if (family == "custom") return SpaceSpec::custom(d, j.at("coeffs").get<std::vector<double>>());
    throw InvalidArgument("unknown space family '" + family + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed space JSON: ") + e.what());
  }
}

SpaceSpec space_from_name(std::string_view name) {
  if (name == "hardy") return SpaceSpec::hardy();
  if (name == "dirichlet") return SpaceSpec::dirichlet();
  if (name.starts_with("da") && name.size() > 2) {
    int d = 0;
    const std::string digits(name.substr(2));
    std::size_t used = 0;
    try {
      d = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && d >= 1) return SpaceSpec::drury_arveson(d);
  }
  throw InvalidArgument("unknown space '" + std::string(name) + "' (expected hardy, dirichlet or da<d>)");
}

Json op_matrix_to_json(const OpMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["domain_degree"] = m.domain->max_degree();
  j["codomain_degree"] = m.codomain->max_degree();
  j["conj_codomain"] = m.conj_codomain;
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex v = m.entries(r, c);
      entries.push_back(Json::array({v.real(), v.imag()}));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace wplab
