#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bdg/bounds.hpp"
#include "bdg/simulate.hpp"

namespace bdg::cli {

/// Bad flag combination or a method that does not apply to the graph.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { json, csv };

struct ExperimentConfig {
  std::string command;  // gamma | bounds | clt | nn | sweep | graph-info
  std::string graph;    // family string or graph file
  std::string method;   // mc | chain | closed-form | series | bounds
  std::int64_t steps = 0;
  std::int64_t replicas = 0;  // 0: command default
  double horizon = 0;
  int cap = 16;  // surface-chain height cap M
  int stride = 2;
  std::int64_t max_states = 3'000'000;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  int threads = 1;
  bool cross_check = false;
  double check_tol = 1e-6;  // deterministic cross-check agreement
  std::string rule = "nnn";
  bool proportional = false;
  int batches = 0;
  bool sigma2 = false;
  int checkpoints = 0;
  std::string trajectory_out;
  std::string chain_out;
  std::string export_graph;
  int table_k = 0;
  int n = 0;
  std::string family;
  std::string n_range;
  std::optional<double> expect_lo, expect_hi;
  bool with_mc = false;
  int lower_chain = 0;
  std::optional<double> gamma;  // clt: override the reference value
  double level = 0.01;
  Format format = Format::json;
};

nlohmann::json echo(const ExperimentConfig& cfg);

struct ResultRecord {
  std::string command;
  nlohmann::json config;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json rows = nlohmann::json::array();  // one entry per sweep point
  nlohmann::json provenance;
  double duration_s = 0;
  std::vector<std::string> failed;  // assertions that did not hold

  bool ok() const { return failed.empty(); }
  nlohmann::json to_json() const;
};

nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const BoundReport& r);

ResultRecord cmd_gamma(const ExperimentConfig& cfg);
ResultRecord cmd_bounds(const ExperimentConfig& cfg);
ResultRecord cmd_clt(const ExperimentConfig& cfg);
ResultRecord cmd_nn(const ExperimentConfig& cfg);
ResultRecord cmd_sweep(const ExperimentConfig& cfg);
ResultRecord cmd_graph_info(const ExperimentConfig& cfg);

/// Dispatches on cfg.command and fills config echo, provenance and duration.
ResultRecord execute(const ExperimentConfig& cfg);

/// JSON document, or CSV: sweep rows one per line, otherwise the flattened
/// results as a single row.
void emit(const ResultRecord& rec, Format format, std::ostream& out);

}  // namespace bdg::cli
