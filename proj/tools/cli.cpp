#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wplab/wplab.h"

namespace wplab::cli {

namespace {

// Failure raised inside a cell, tagged with the C status that produced it.
class CellError : public std::runtime_error {
 public:
  CellError(wplab_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  wplab_status status() const { return status_; }

 private:
  wplab_status status_;
};

void check(wplab_status s) {
  if (s != WPLAB_OK) throw CellError(s, wplab_last_error());
}

std::string take(char* s) {
  std::string out(s);
  wplab_string_free(s);
  return out;
}

struct SpaceDeleter {
  void operator()(wplab_space* s) const { wplab_space_free(s); }
};
struct PolyDeleter {
  void operator()(wplab_poly* p) const { wplab_poly_free(p); }
};
using SpacePtr = std::unique_ptr<wplab_space, SpaceDeleter>;
using PolyPtr = std::unique_ptr<wplab_poly, PolyDeleter>;

SpacePtr open_space(const std::string& json) {
  wplab_space* s = nullptr;
  check(wplab_space_from_json(json.c_str(), &s));
  return SpacePtr(s);
}

PolyPtr parse(const std::string& text, int d) {
  wplab_poly* p = nullptr;
  check(wplab_poly_parse(text.c_str(), d, &p));
  return PolyPtr(p);
}

PolyPtr random_poly(int d, int deg, std::uint64_t seed) {
  wplab_poly* p = nullptr;
  check(wplab_poly_random(d, deg, seed, &p));
  return PolyPtr(p);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve_space(const std::string& arg) {
  std::string json;
  if (arg.rfind("custom:", 0) == 0) {
    const std::string path = arg.substr(7);
    Json j;
    try {
      j = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
      throw UsageError(path + ": " + e.what());
    }
    if (j.is_array()) j = Json{{"family", "custom"}, {"d", 1}, {"coeffs", j}};
    if (j.is_object() && !j.contains("family")) j["family"] = "custom";
    json = j.dump();
    wplab_space* s = nullptr;
    if (wplab_space_from_json(json.c_str(), &s) != WPLAB_OK) throw UsageError(path + ": " + wplab_last_error());
    wplab_space_free(s);
    return json;
  }
  wplab_space* s = nullptr;
  if (wplab_space_from_name(arg.c_str(), &s) != WPLAB_OK) throw UsageError(wplab_last_error());
  char* text = nullptr;
  wplab_space_to_json(s, &text);
  wplab_space_free(s);
  return take(text);
}

int space_dim(const std::string& space_json) { return Json::parse(space_json).at("d").get<int>(); }

std::vector<std::string> split_list(const std::vector<std::string>& parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) {
    std::size_t start = 0;
    for (;;) {
      const std::size_t pos = p.find(';', start);
      const std::string piece = p.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
      if (!piece.empty()) out.push_back(piece);
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  return out;
}

std::vector<std::string> columns_for(const std::string& command) {
  if (command == "gap") return {"n", "N", "row_norm", "col_norm", "ratio", "expected_ratio", "certificate_ok"};
  if (command == "mult-norm") return {"N", "norm", "residual", "iterations"};
  if (command == "hankel-check")
    return {"N", "pairs", "points", "max_intertwining", "max_second_sv", "max_factor_residual", "max_kernel_dagger",
            "pass"};
  if (command == "wp") return {"h", "D", "r", "lower", "upper", "h1_oracle", "iters"};
  if (command == "cnp") return {"N", "pass", "min_b", "coeffs"};
  return {};
}

Json config_echo(const Config& c) {
  Json j;
  j["command"] = c.command;
  j["space"] = Json::parse(c.space_json);
  auto list = [](const std::vector<int>& v) { return v.empty() ? Json(nullptr) : Json(v); };
  j["n"] = list(c.n);
  j["trunc"] = list(c.trunc);
  j["deg"] = list(c.deg);
  j["rank"] = list(c.rank);
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["seed"] = c.seed;
  j["h"] = c.h.empty() ? Json(nullptr) : Json(c.h);
  j["poly"] = c.poly.empty() ? Json(nullptr) : Json(c.poly);
  j["b"] = c.b.empty() ? Json(nullptr) : Json(c.b);
  j["psi"] = c.psi.empty() ? Json(nullptr) : Json(c.psi);
  j["count"] = c.count;
  return j;
}

// One unit of work: fills `rec` (pre-seeded with null columns) or throws.
using Cell = std::function<void(Json& rec)>;

struct Plan {
  std::vector<Json> seeds;  // initial record per cell
  std::vector<Cell> cells;
};

Plan plan_gap(const Config& c) {
  Plan plan;
  const int d = space_dim(c.space_json);
  const auto columns = columns_for(c.command);
  auto blank = [&] {
    Json r;
    for (const auto& k : columns) r[k] = nullptr;
    return r;
  };
  if (!c.psi.empty()) {
    for (int N : c.trunc) {
      Json r = blank();
      r["n"] = static_cast<int>(c.psi.size()) - 1;
      r["N"] = N;
      plan.seeds.push_back(r);
      plan.cells.push_back([&c, d, N](Json& rec) {
        const SpacePtr space = open_space(c.space_json);
        std::vector<PolyPtr> owned;
        std::vector<const wplab_poly*> raw;
        for (const auto& text : c.psi) {
          owned.push_back(parse(text, d));
          raw.push_back(owned.back().get());
        }
        wplab_gap_result g{};
        check(wplab_column_row_gap(space.get(), raw.data(), raw.size(), N, c.tol, &g));
        rec["row_norm"] = g.row_norm;
        rec["col_norm"] = g.col_norm;
        rec["ratio"] = g.ratio;
        rec["expected_ratio"] = g.expected_ratio;
        rec["certificate_ok"] = false;
      });
    }
    return plan;
  }
  for (int n : c.n) {
    const std::vector<int> truncs = c.trunc.empty() ? std::vector<int>{n + 4} : c.trunc;
    for (int N : truncs) {
      Json r = blank();
      r["n"] = n;
      r["N"] = N;
      plan.seeds.push_back(r);
      plan.cells.push_back([&c, n, N](Json& rec) {
        const SpacePtr space = open_space(c.space_json);
        wplab_gap_result g{};
        check(wplab_transpose_gap(space.get(), n, N, c.tol, &g));
        rec["row_norm"] = g.row_norm;
        rec["col_norm"] = g.col_norm;
        rec["ratio"] = g.ratio;
        rec["expected_ratio"] = g.expected_ratio;
        rec["certificate_ok"] = g.certificate_ok != 0;
      });
    }
  }
  return plan;
}

Plan plan_mult_norm(const Config& c) {
  Plan plan;
  const int d = space_dim(c.space_json);
  for (int N : c.trunc) {
    Json r;
    for (const auto& k : columns_for(c.command)) r[k] = nullptr;
    r["N"] = N;
    plan.seeds.push_back(r);
    plan.cells.push_back([&c, d, N](Json& rec) {
      const SpacePtr space = open_space(c.space_json);
      const PolyPtr phi = parse(c.poly, d);
      wplab_norm_result nr{};
      check(wplab_mult_norm(space.get(), phi.get(), N, c.tol, c.max_iter, &nr));
      rec["norm"] = nr.value;
      rec["residual"] = nr.residual;
      rec["iterations"] = nr.iterations;
    });
  }
  return plan;
}

Plan plan_hankel_check(const Config& c) {
  Plan plan;
  const int d = space_dim(c.space_json);
  const int deg = c.deg.empty() ? 4 : *std::max_element(c.deg.begin(), c.deg.end());
  for (int N : c.trunc) {
    Json r;
    for (const auto& k : columns_for(c.command)) r[k] = nullptr;
    r["N"] = N;
    plan.seeds.push_back(r);
    plan.cells.push_back([&c, d, deg, N](Json& rec) {
      const SpacePtr space = open_space(c.space_json);
      const std::uint64_t cell_seed = mix(c.seed, static_cast<std::uint64_t>(N));
      std::vector<std::pair<PolyPtr, PolyPtr>> pairs;
      if (!c.b.empty()) {
        pairs.emplace_back(parse(c.b, d), parse(c.psi.empty() ? std::string("1") : c.psi.front(), d));
      } else {
        for (int k = 0; k < c.count; ++k) {
          pairs.emplace_back(random_poly(d, deg, mix(cell_seed, 2 * static_cast<std::uint64_t>(k))),
                             random_poly(d, deg, mix(cell_seed, 2 * static_cast<std::uint64_t>(k) + 1)));
        }
      }
      double max_int = 0.0;
      double max_dagger = 0.0;
      for (const auto& [b, psi] : pairs) {
        double res = 0.0;
        check(wplab_intertwining_residual(space.get(), b.get(), psi.get(), N, &res));
        max_int = std::max(max_int, res);
      }
      std::mt19937_64 rng(cell_seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      std::uniform_real_distribution<double> radius(0.0, 0.7);
      double max_sv = 0.0;
      double max_factor = 0.0;
      for (int k = 0; k < c.count; ++k) {
        std::vector<double> re(static_cast<std::size_t>(d));
        std::vector<double> im(static_cast<std::size_t>(d));
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
          re[static_cast<std::size_t>(i)] = u(rng);
          im[static_cast<std::size_t>(i)] = u(rng);
          s += re[static_cast<std::size_t>(i)] * re[static_cast<std::size_t>(i)] +
               im[static_cast<std::size_t>(i)] * im[static_cast<std::size_t>(i)];
        }
        const double scale = s > 0.0 ? radius(rng) / std::sqrt(s) : 0.0;
        for (int i = 0; i < d; ++i) {
          re[static_cast<std::size_t>(i)] *= scale;
          im[static_cast<std::size_t>(i)] *= scale;
        }
        double sv = 0.0;
        double fr = 0.0;
        check(wplab_kernel_hankel_rank_check(space.get(), re.data(), im.data(), N, &sv, &fr));
        max_sv = std::max(max_sv, sv);
        max_factor = std::max(max_factor, fr);
        const auto& theta = pairs[static_cast<std::size_t>(k) % pairs.size()].second;
        double dag = 0.0;
        check(wplab_kernel_dagger_residual(space.get(), theta.get(), re.data(), im.data(), N, &dag));
        max_dagger = std::max(max_dagger, dag);
      }
      rec["pairs"] = static_cast<int>(pairs.size());
      rec["points"] = c.count;
      rec["max_intertwining"] = max_int;
      rec["max_second_sv"] = max_sv;
      rec["max_factor_residual"] = max_factor;
      rec["max_kernel_dagger"] = max_dagger;
      rec["pass"] = max_int <= 1e-10 && max_sv <= 1e-12 && max_factor <= 1e-10 && max_dagger <= 1e-10;
    });
  }
  return plan;
}

Plan plan_wp(const Config& c) {
  Plan plan;
  const int d = space_dim(c.space_json);
  const std::vector<int> degs = [&] {
    if (!c.deg.empty()) return c.deg;
    const PolyPtr h = parse(c.h, d);
    return std::vector<int>{std::max(wplab_poly_degree(h.get()), 1)};
  }();
  const std::vector<int> ranks = c.rank.empty() ? std::vector<int>{2} : c.rank;
  for (int D : degs) {
    for (int r : ranks) {
      Json rec;
      for (const auto& k : columns_for(c.command)) rec[k] = nullptr;
      rec["h"] = c.h;
      rec["D"] = D;
      rec["r"] = r;
      rec["lower_witness"] = nullptr;
      rec["pairs"] = nullptr;
      plan.seeds.push_back(rec);
      plan.cells.push_back([&c, d, D, r](Json& out) {
        const SpacePtr space = open_space(c.space_json);
        const PolyPtr h = parse(c.h, d);
        wplab_wp_options opts;
        wplab_wp_options_default(&opts);
        opts.seed = c.seed;
        char* text = nullptr;
        check(wplab_wp_bracket_json(space.get(), h.get(), r, D, &opts, &text));
        const Json br = Json::parse(take(text));
        out["lower"] = br.at("lower");
        out["upper"] = br.at("upper");
        out["h1_oracle"] = br.at("h1_oracle");
        out["iters"] = br.at("iters");
        out["lower_witness"] = br.at("lower_witness");
        out["pairs"] = br.at("pairs");
      });
    }
  }
  return plan;
}

Plan plan_cnp(const Config& c) {
  Plan plan;
  for (int N : c.trunc) {
    Json r;
    for (const auto& k : columns_for(c.command)) r[k] = nullptr;
    r["N"] = N;
    plan.seeds.push_back(r);
    plan.cells.push_back([&c, N](Json& rec) {
      const SpacePtr space = open_space(c.space_json);
      std::vector<double> b(static_cast<std::size_t>(std::max(N, 0)));
      int pass = 0;
      check(wplab_cnp_check(space.get(), N, b.data(), &pass));
      rec["pass"] = pass != 0;
      rec["min_b"] = b.empty() ? 0.0 : *std::min_element(b.begin(), b.end());
      rec["coeffs"] = b;
    });
  }
  return plan;
}

Plan make_plan(const Config& c) {
  if (c.command == "gap") return plan_gap(c);
  if (c.command == "mult-norm") return plan_mult_norm(c);
  if (c.command == "hankel-check") return plan_hankel_check(c);
  if (c.command == "wp") return plan_wp(c);
  if (c.command == "cnp") return plan_cnp(c);
  throw UsageError("unknown command " + c.command);
}

const char* error_kind(wplab_status s) {
  switch (s) {
    case WPLAB_ERR_INVALID_ARGUMENT:
    case WPLAB_ERR_CONFIG:
      return "usage";
    case WPLAB_ERR_BRACKET_INVERSION:
      return "bracket_inversion";
    default:
      return "numerical";
  }
}

std::string csv_field(const Json& v) {
  std::string s;
  if (v.is_null()) return s;
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    s = buf;
  } else if (v.is_string()) {
    s = v.get<std::string>();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string mult_matrix_json(const Config& c, int N) {
  const SpacePtr space = open_space(c.space_json);
  const int d = space_dim(c.space_json);
  char* text = nullptr;
  if (!c.b.empty()) {
    const PolyPtr b = parse(c.b, d);
    check(wplab_hankel_matrix_json(space.get(), b.get(), N, N, &text));
  } else {
    const PolyPtr phi = parse(c.poly, d);
    check(wplab_mult_matrix_json(space.get(), phi.get(), N, &text));
  }
  return take(text);
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << bytes;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string piece;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + text + "'");
    }
    if (used != s.size()) throw UsageError("not an integer list: '" + text + "'");
    return v;
  };
  while (std::getline(ss, piece, ',')) {
    const auto dots = piece.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(piece));
    } else {
      const int a = to_int(piece.substr(0, dots));
      const int b = to_int(piece.substr(dots + 2));
      for (int v = a; v <= b; ++v) out.push_back(v);
    }
  }
  return out;
}

std::optional<Config> parse_args(int argc, const char* const* argv, std::ostream& out) {
  Config c;
  std::string n_text, trunc_text, deg_text, rank_text, seed_text = "0x5EED", format_text = "csv";
  std::vector<std::string> psi_raw;

  CLI::App app{"Weak-product multiplier laboratory", "wplab"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.add_option("--space", c.space, "hardy | dirichlet | da<d> | custom:<file>");
  app.add_option("--n", n_text, "family parameter grid, A..B");
  app.add_option("--trunc,--N", trunc_text, "truncation degree grid");
  app.add_option("--deg,--D", deg_text, "factor or symbol degree grid");
  app.add_option("--rank,--r", rank_text, "factorization rank grid");
  app.add_option("--tol", c.tol, "norm solver tolerance");
  app.add_option("--max-iter", c.max_iter, "norm solver iteration cap");
  app.add_option("--seed", seed_text, "random seed");
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--h", c.h, "weak-product target polynomial");
  app.add_option("--poly", c.poly, "multiplier symbol");
  app.add_option("--b", c.b, "Hankel symbol");
  app.add_option("--psi", psi_raw, "multiplier tuple (repeat or separate with ';')");
  app.add_option("--count", c.count, "random instances per hankel-check cell");
  app.add_option("--jobs", c.jobs, "worker threads (0 = automatic)");
  app.add_flag("--timing", c.timing, "record wall time per cell");
  app.add_option("--dump-matrix", c.dump_matrix, "write the largest-truncation matrix as JSON");

  for (const char* name : {"gap", "hankel-check", "wp", "cnp", "mult-norm", "dump-matrix"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = format_text == "json" ? Format::Json : Format::Csv;
  try {
    std::size_t used = 0;
    c.seed = std::stoull(seed_text, &used, 0);
    if (used != seed_text.size()) throw std::invalid_argument(seed_text);
  } catch (const std::exception&) {
    throw UsageError("invalid seed '" + seed_text + "'");
  }
  c.psi = split_list(psi_raw);

  auto grid = [](const std::string& text, const char* flag, int min) {
    if (text.empty()) return std::vector<int>{};
    std::vector<int> v = parse_int_list(text);
    if (v.empty()) throw UsageError(std::string("empty grid for ") + flag);
    for (int x : v) {
      if (x < min) throw UsageError(std::string(flag) + " values must be >= " + std::to_string(min));
    }
    return v;
  };
  c.n = grid(n_text, "--n", 0);
  c.trunc = grid(trunc_text, "--trunc", 0);
  c.deg = grid(deg_text, "--deg", 0);
  c.rank = grid(rank_text, "--rank", 1);

  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.max_iter < 1) throw UsageError("--max-iter must be positive");
  if (c.count < 1) throw UsageError("--count must be positive");
  if (c.jobs < 0) throw UsageError("--jobs must be non-negative");

  c.space_json = resolve_space(c.space);
  const Json space = Json::parse(c.space_json);
  const int d = space.at("d").get<int>();
  auto check_poly = [d](const std::string& text, const char* flag) {
    wplab_poly* p = nullptr;
    if (wplab_poly_parse(text.c_str(), d, &p) != WPLAB_OK) {
      throw UsageError(std::string(flag) + ": " + wplab_last_error());
    }
    wplab_poly_free(p);
  };
  if (!c.h.empty()) check_poly(c.h, "--h");
  if (!c.poly.empty()) check_poly(c.poly, "--poly");
  if (!c.b.empty()) check_poly(c.b, "--b");
  for (const auto& p : c.psi) check_poly(p, "--psi");

  if (c.command == "gap") {
    if (c.psi.empty()) {
      if (c.n.empty()) throw UsageError("gap needs --n or --psi");
      if (space.at("family") != "da" || d < 2) throw UsageError("gap without --psi needs a Drury-Arveson space, d >= 2");
    } else if (c.trunc.empty()) {
      c.trunc = {4};
    }
  } else if (c.command == "mult-norm") {
    if (c.poly.empty()) throw UsageError("mult-norm needs --poly");
    if (c.trunc.empty()) c.trunc = parse_int_list("0..8");
  } else if (c.command == "hankel-check") {
    if (c.trunc.empty()) c.trunc = {4};
  } else if (c.command == "wp") {
    if (c.h.empty()) throw UsageError("wp needs --h");
  } else if (c.command == "cnp") {
    if (c.trunc.empty()) c.trunc = {50};
    for (int N : c.trunc) {
      if (N < 1) throw UsageError("cnp needs N >= 1");
    }
  } else if (c.command == "dump-matrix") {
    if (c.poly.empty() == c.b.empty()) throw UsageError("dump-matrix needs exactly one of --poly or --b");
    if (c.trunc.empty()) c.trunc = {4};
  }
  return c;
}

Report execute(const Config& config) {
  Report report;
  report.version = wplab_version();
  report.command = config.command;
  report.config = config_echo(config);
  report.columns = columns_for(config.command);

  Plan plan = make_plan(config);
  std::vector<Json> records = plan.seeds;
  std::vector<double> wall(records.size(), 0.0);

  auto run_cell = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    Json rec = records[i];
    try {
      plan.cells[i](rec);
    } catch (const CellError& e) {
      rec = records[i];
      rec["error"] = e.what();
      rec["error_kind"] = error_kind(e.status());
    } catch (const std::exception& e) {
      rec = records[i];
      rec["error"] = e.what();
      rec["error_kind"] = "numerical";
    }
    wall[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    records[i] = std::move(rec);
  };

  const std::size_t cells = plan.cells.size();
  std::size_t workers = config.jobs > 0 ? static_cast<std::size_t>(config.jobs)
                                        : std::min<std::size_t>(4, std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, cells);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells; i = next++) run_cell(i);
    });
  }
  for (auto& t : pool) t.join();

  const bool any_error = std::any_of(records.begin(), records.end(), [](const Json& r) { return r.contains("error"); });
  if (any_error) report.columns.push_back("error");
  if (config.timing) {
    report.columns.push_back("wall_ms");
    for (std::size_t i = 0; i < records.size(); ++i) records[i]["wall_ms"] = wall[i];
  }
  report.records = std::move(records);
  return report;
}

Json report_to_json(const Report& report) {
  Json j;
  j["tool"] = "wplab";
  j["version"] = report.version;
  j["command"] = report.command;
  j["config"] = report.config;
  j["columns"] = report.columns;
  j["records"] = report.records;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& rec : j.at("records")) r.records.push_back(rec);
  return r;
}

std::string render(const Report& report, Format format) {
  if (format == Format::Json) return report_to_json(report).dump(2) + "\n";
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(Json(report.columns[i]));
  }
  out += '\n';
  for (const auto& rec : report.records) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      if (i) out += ',';
      const auto& key = report.columns[i];
      out += rec.contains(key) ? csv_field(rec.at(key)) : std::string();
    }
    out += '\n';
  }
  return out;
}

int exit_code(const Report& report) {
  int code = 0;
  for (const auto& rec : report.records) {
    if (!rec.contains("error_kind")) continue;
    const std::string kind = rec.at("error_kind").get<std::string>();
    if (kind == "bracket_inversion") code = std::max(code, 3);
    else if (kind == "numerical") code = std::max(code, 2);
    else code = std::max(code, 1);
  }
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<Config> config;
  try {
    config = parse_args(argc, argv, out);
  } catch (const UsageError& e) {
    err << "wplab: " << e.what() << "\n";
    return 1;
  }
  if (!config) return 0;
  try {
    if (config->command == "dump-matrix") {
      write_output(config->out, mult_matrix_json(*config, config->trunc.back()) + "\n", out);
      return 0;
    }
    const Report report = execute(*config);
    if (!config->dump_matrix.empty()) {
      if (config->poly.empty() && config->b.empty()) throw UsageError("--dump-matrix needs --poly or --b");
      if (config->trunc.empty()) throw UsageError("--dump-matrix needs --trunc");
      const int N = *std::max_element(config->trunc.begin(), config->trunc.end());
      write_output(config->dump_matrix, mult_matrix_json(*config, N) + "\n", out);
    }
    write_output(config->out, render(report, config->format), out);
    const int code = exit_code(report);
    if (code != 0) {
      for (const auto& rec : report.records) {
        if (rec.contains("error")) err << "wplab: cell failed: " << rec.at("error").get<std::string>() << "\n";
      }
    }
    return code;
  } catch (const UsageError& e) {
    err << "wplab: " << e.what() << "\n";
    return 1;
  } catch (const CellError& e) {
    err << "wplab: " << e.what() << "\n";
    return e.status() == WPLAB_ERR_INVALID_ARGUMENT || e.status() == WPLAB_ERR_CONFIG ? 1 : 2;
  } catch (const std::exception& e) {
    err << "wplab: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wplab::cli
