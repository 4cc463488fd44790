#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fragsim/integrator.hpp"
#include "fragsim/rates.hpp"

namespace fragsim {

/// Scenario file does not match the schema; message carries field context.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  RateModel rates;
  KernelSpec kernel;
  std::size_t N = 0;
  std::vector<double> initial;  // resolved to an explicit vector of length N
  IntegratorConfig integrator;
  bool spectral_enabled = true;
  std::optional<std::pair<double, double>> fit_window;
};

/// Parses and validates a scenario JSON file. Throws ScenarioError with
/// field diagnostics on any schema violation.
Scenario load_scenario(const std::string& path);

struct RunOptions {
  std::optional<std::string> out_dir;  // default: ./results/<name>
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<double> t_end;
  bool dump_generator = false;
};

// exit codes of the scenario runner
inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitIntegration = 3;

struct ScenarioOutcome {
  int status = kExitOk;
  std::string name;
  std::string out_dir;
  std::string error;  // non-empty when status != 0
  std::optional<double> lambda1;
  std::optional<double> fitted_rate;
  double final_mass = 0.0;
  double wall_seconds = 0.0;
};

/// Runs one scenario end to end: classification, integration, observables,
/// spectral analysis when its preconditions hold; writes manifest.json and
/// the CSV outputs into the results directory.
ScenarioOutcome run_scenario(const std::string& path, const RunOptions& opts = {});

/// Runs every *.json scenario in the directory (up to FRAGSIM_THREADS in
/// parallel) and prints a summary table in input order. Returns 0 iff all
/// scenarios succeeded.
int run_all(const std::string& directory, const RunOptions& opts, std::ostream& table);

}  // namespace fragsim
