#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "canp/models.hpp"
#include "canp/operator_algebra.hpp"

namespace canp::experiments {

enum class Experiment { Fig2a, Fig2b, Fig2bInset, Fig3a, Fig3b, LmgThreshold, Displacement, Validate };

std::string_view to_string(Experiment e);
/// Throws ConfigError.
Experiment parse_experiment(std::string_view name);

struct Axis {
  double start = 0.0;
  double stop = 0.0;
  int points = 2;

  /// Evenly spaced, endpoints exact.
  [[nodiscard]] std::vector<double> values() const;
};

struct RunConfig {
  Experiment experiment = Experiment::Fig2a;
  models::ModelParams model;
  std::map<std::string, Axis> sweep;
  std::vector<double> g_values;
  double t_theta = 12.0;
  cplx alpha{0.3, 1.0};
  double theta0 = 0.0;
  std::pair<double, double> bracket{0.0, 1.0};
  std::string out;
  int threads = 0;
  bool oracle = false;
  /// The config after defaults, file and overrides were merged.
  nlohmann::json resolved;

  /// Throws ConfigError if the experiment has no such axis.
  [[nodiscard]] const Axis& axis(const std::string& name) const;
};

/// Documented defaults; every figure's axis ranges live here.
nlohmann::json default_config(Experiment e);

/// Sets `dotted` (e.g. "model.g") to `value`, parsed as JSON when possible, else as a string.
void apply_override(nlohmann::json& j, std::string_view dotted, std::string_view value);

/// defaults, then `file` as a JSON merge patch, then `overrides` in order.
/// Unknown keys, out-of-phase models and malformed axes throw ConfigError.
RunConfig resolve_config(Experiment e, const nlohmann::json& file = nlohmann::json::object(),
                         const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Sweep output: comment lines, column names and numeric rows.
struct Table {
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::vector<double> column(std::string_view name) const;
};

Table run_fig2a(const RunConfig& cfg);
Table run_fig2b(const RunConfig& cfg);
Table run_fig2b_inset(const RunConfig& cfg);
Table run_fig3a(const RunConfig& cfg);
Table run_fig3b(const RunConfig& cfg);
Table run_lmg_threshold(const RunConfig& cfg);
Table run_displacement(const RunConfig& cfg);

/// Dispatch for every experiment except validate.
Table run_table(const RunConfig& cfg);

/// FNV-1a of the resolved config without the run-local "out" and "threads" keys, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Header comment with tool version and config hash, then notes, column names and rows.
/// Doubles use shortest round-trip formatting.
std::string to_csv(const Table& t, const RunConfig& cfg);

/// Indices of strict interior local maxima of `y`.
std::vector<std::size_t> local_maxima(const std::vector<double>& y);

}  // namespace canp::experiments
