#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wplab::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string space = "hardy";
  std::string space_json;  // resolved space description
  std::vector<int> n;
  std::vector<int> trunc;
  std::vector<int> deg;
  std::vector<int> rank;
  double tol = 1e-10;
  int max_iter = 100000;
  std::uint64_t seed = 0x5EED;
  std::string out;
  Format format = Format::Csv;
  std::string h;
  std::string poly;
  std::string b;
  std::vector<std::string> psi;
  int count = 20;
  int jobs = 0;
  bool timing = false;
  std::string dump_matrix;
};

struct Report {
  std::string version;
  std::string command;
  Json config;
  std::vector<std::string> columns;
  std::vector<Json> records;

  bool operator==(const Report&) const = default;
};

// Parses argv into a validated Config; throws UsageError. Returns nullopt when
// help was printed to `out`.
std::optional<Config> parse_args(int argc, const char* const* argv, std::ostream& out);

// Inclusive integer list from "A", "A..B" or comma-separated pieces of either.
std::vector<int> parse_int_list(const std::string& text);

// Runs every grid cell; failures are recorded in the cell's "error" field.
Report execute(const Config& config);

std::string render(const Report& report, Format format);
Json report_to_json(const Report& report);
Report report_from_json(const Json& j);

// 0 ok, 1 usage, 2 numerical failure, 3 bracket inversion.
int exit_code(const Report& report);

// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wplab::cli
