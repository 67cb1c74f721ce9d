#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "holointerp/interpolate.hpp"
#include "holointerp/spaces.hpp"
#include "holointerp/testmaps.hpp"

namespace holointerp {

/// A configuration problem, qualified by the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Suite { lemma, theorem1, strip_witness, cauchy_diagnostics, all };
std::string to_string(Suite s);

struct ConstantsConfig {
  Provenance source = Provenance::oracle;
  std::optional<double> c0, c1;  // ball constants (declared)
  std::optional<double> m0, m1;  // homogeneous constants (declared)
  double scale0 = 1.0;           // multiplies the constant of side 0
  double scale1 = 1.0;
  std::size_t budget = 4096;     // for empirical estimates
};

struct RunConfig {
  WeightedCouple couple_e;
  WeightedCouple couple_h;
  OracleMap map;
  double radius = 1.0;
  double inner_radius = 0.5;
  Suite suite = Suite::all;
  std::vector<double> theta_grid;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double tolerance = kExactTolerance;
  std::string output = "holointerp_run";
  bool include_pairs = true;
  ConstantsConfig constants;
  int cauchy_max_degree = 8;
  std::size_t cauchy_samples = 200;
  int strip_t_samples = 5;
  double strip_tolerance = 1e-10;

  /// The configuration with every default filled in.
  nlohmann::json resolved;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;           // beats the config file
  std::optional<std::uint64_t> fallback_seed;  // used when neither is set
  std::optional<std::string> output;
};

/// Validates a JSON run configuration. Throws ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& j, const ConfigOverrides& overrides = {});

struct RunResult {
  /// 0 when every certifying suite passes, 1 otherwise.
  int status = 0;
  std::vector<VerificationReport> reports;
  /// Per-suite interpolated bound at each theta (plot data).
  std::vector<std::vector<std::pair<double, double>>> theta_bounds;
  /// Per-suite constants used, with provenance.
  std::vector<nlohmann::json> constants;
  std::string config_hash;
};

RunResult run(const RunConfig& config, int workers = 1);

nlohmann::json report_json(const RunConfig& config, const RunResult& result);
/// suite,theta,sample_id,degree,lhs_norm,rhs_bound,ratio
std::string rows_csv(const RunResult& result);
/// suite,theta,ratio_max,bound
std::string plot_csv(const RunResult& result);

/// Writes <prefix>.report.json, <prefix>.rows.csv and <prefix>.plot.csv.
void write_outputs(const RunConfig& config, const RunResult& result);

/// Entry point shared by the command-line tool: parses flags, runs, and
/// returns the exit status (0 pass, 1 suite failure, 2 configuration error).
int cli_main(int argc, char** argv);

}  // namespace holointerp
