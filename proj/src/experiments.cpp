#include "canp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "canp/errors.hpp"
#include "canp/fock.hpp"
#include "canp/metrology.hpp"
#include "canp/serialization.hpp"
#include "canp/sweep.hpp"

namespace canp::experiments {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOracleThreads = 4;

json axis_json(double start, double stop, int points) {
  return {{"start", start}, {"stop", stop}, {"points", points}};
}

json base_config(const models::ModelParams& model, double t_theta) {
  return {{"model", model},   {"t_theta", t_theta}, {"alpha", cplx{0.3, 1.0}}, {"theta0", 0.0},
          {"out", ""},        {"threads", 0},       {"oracle", false}};
}

models::ModelParams qrm(double g) { return {.variant = models::Variant::QrmFrequency, .omega = 1.0, .g = g}; }

void check_known_keys(const json& reference, const json& actual, const std::string& path) {
  if (!actual.is_object() || !reference.is_object()) return;
  for (const auto& [key, value] : actual.items()) {
    if (path.empty() && key == "experiment") continue;
    if (!reference.contains(key)) throw ConfigError(fmt::format("unknown config key '{}{}'", path, key));
    // Model fields are optional per variant, so they are checked by the model parser instead.
    if (path.empty() && key == "model") continue;
    check_known_keys(reference.at(key), value, path + key + ".");
  }
}

void require_variant(const RunConfig& cfg, models::Variant v) {
  if (cfg.model.variant != v) {
    throw ConfigError(fmt::format("{} requires model.variant = {}", to_string(cfg.experiment), models::to_string(v)));
  }
}

void require_range(const std::string& name, const Axis& a, double lo, double hi, bool hi_open) {
  const auto inside = [&](double x) { return x >= lo && (hi_open ? x < hi : x <= hi); };
  if (!inside(a.start) || !inside(a.stop)) {
    throw ConfigError(fmt::format("sweep.{} = [{}, {}] outside [{}, {}{}", name, a.start, a.stop, lo, hi,
                                  hi_open ? ")" : "]"));
  }
}

// Every sweep value of the control parameter must build a valid Hamiltonian.
void validate_axes(const RunConfig& cfg) {
  for (const auto& [name, a] : cfg.sweep) {
    if (a.points < 2) throw ConfigError(fmt::format("sweep.{}.points must be at least 2", name));
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw ConfigError(fmt::format("sweep.{} not finite", name));
    if (name == "g" || name == "lambda") require_range(name, a, 0.0, 1.0, true);
    if (name == "sqrtDelta_tc") require_range(name, a, 0.0, INFINITY, false);
    if (name == "t_theta") require_range(name, a, 0.0, INFINITY, false);
    if (name == "g" || name == "lambda") {
      for (const double x : {a.start, a.stop}) (void)models::critical_hamiltonian(cfg.model.with_control(x));
    }
  }
  for (const double g : cfg.g_values) (void)models::critical_hamiltonian(cfg.model.with_control(g));
  if (!(cfg.t_theta > 0.0)) throw ConfigError("t_theta must be positive");
}

std::string fmt_double(double x) { return fmt::format("{}", x); }

template <class F>
std::vector<std::vector<double>> rows_of(std::size_t n, int threads, F&& f) {
  return sweep::map(n, std::forward<F>(f), sweep::resolve_threads(threads));
}

std::string peaks_note(double g, const std::vector<double>& x, const std::vector<double>& r) {
  std::string s = fmt::format("local maxima g={}:", g);
  for (const std::size_t i : local_maxima(r)) s += fmt::format(" ({}, {})", x[i], r[i]);
  return s;
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Fig2a:
      return "fig2a";
    case Experiment::Fig2b:
      return "fig2b";
    case Experiment::Fig2bInset:
      return "fig2b-inset";
    case Experiment::Fig3a:
      return "fig3a";
    case Experiment::Fig3b:
      return "fig3b";
    case Experiment::LmgThreshold:
      return "lmg-threshold";
    case Experiment::Displacement:
      return "displacement";
    case Experiment::Validate:
      return "validate";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (const Experiment e : {Experiment::Fig2a, Experiment::Fig2b, Experiment::Fig2bInset, Experiment::Fig3a,
                             Experiment::Fig3b, Experiment::LmgThreshold, Experiment::Displacement,
                             Experiment::Validate}) {
    if (name == to_string(e)) return e;
  }
  throw ConfigError(fmt::format("unknown experiment '{}'", name));
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(points, 0)));
  for (int i = 0; i < points; ++i) {
    v[static_cast<std::size_t>(i)] = i + 1 == points ? stop : start + (stop - start) * i / (points - 1);
  }
  return v;
}

const Axis& RunConfig::axis(const std::string& name) const {
  const auto it = sweep.find(name);
  if (it == sweep.end()) throw ConfigError(fmt::format("{} has no sweep axis '{}'", to_string(experiment), name));
  return it->second;
}

std::vector<double> Table::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range(fmt::format("no column '{}'", name));
  const auto k = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

// Axis windows are choices, not published values: they bracket the enhancement
// windows and oscillation peaks the figures discuss.
json default_config(Experiment e) {
  switch (e) {
    case Experiment::Fig2a: {
      json j = base_config(qrm(0.96), 12.0);
      j["sweep"] = {{"sqrtDelta_tc", axis_json(0.0, 4.0 * kPi, 200)}, {"t_theta", axis_json(0.5, 20.0, 200)}};
      return j;
    }
    case Experiment::Fig2b: {
      json j = base_config(qrm(0.96), 12.0);
      j["g_values"] = {0.80, 0.90, 0.96, 0.98};
      j["sweep"] = {{"sqrtDelta_tc", axis_json(0.0, 6.0 * kPi, 601)}};
      return j;
    }
    case Experiment::Fig2bInset: {
      json j = base_config(qrm(0.96), 12.0);
      j["sweep"] = {{"g", axis_json(0.30, 0.99, 139)}};
      j["bracket"] = {0.3, 0.8};
      return j;
    }
    case Experiment::Fig3a: {
      json j = base_config(qrm(0.95), 12.0);
      j["g_values"] = {0.90, 0.95, 0.98};
      j["sweep"] = {{"sqrtDelta_tc", axis_json(0.0, 4.0 * kPi, 401)}};
      return j;
    }
    case Experiment::Fig3b: {
      json j = base_config(qrm(0.96), 12.0);
      j["sweep"] = {{"g", axis_json(0.50, 0.99, 50)}};
      return j;
    }
    case Experiment::LmgThreshold: {
      json j = base_config({.variant = models::Variant::LmgFrequency, .lambda = 0.5, .gamma = 2.0}, 1.3);
      j["sweep"] = {{"lambda", axis_json(0.05, 0.95, 91)}};
      j["bracket"] = {0.2, 0.6};
      return j;
    }
    case Experiment::Displacement: {
      json j = base_config({.variant = models::Variant::QrmDisplacement, .omega = 1.0, .g = 0.9}, 12.0);
      j["sweep"] = {{"sqrtDelta_tc", axis_json(0.0, 4.0 * kPi, 201)}};
      return j;
    }
    case Experiment::Validate: {
      json j = base_config(qrm(0.96), 12.0);
      j["oracle"] = true;
      j["fault_delta"] = 0.0;
      return j;
    }
  }
  throw ConfigError("default_config: bad experiment");
}

void apply_override(json& j, std::string_view dotted, std::string_view value) {
  if (dotted.empty()) throw ConfigError("empty override key");
  std::string pointer;
  std::size_t pos = 0;
  while (pos <= dotted.size()) {
    const std::size_t next = std::min(dotted.find('.', pos), dotted.size());
    const std::string_view part = dotted.substr(pos, next - pos);
    if (part.empty()) throw ConfigError(fmt::format("malformed override key '{}'", dotted));
    pointer += '/';
    pointer += part;
    pos = next + 1;
  }
  json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) parsed = std::string(value);
  try {
    j[json::json_pointer(pointer)] = std::move(parsed);
  } catch (const json::exception& ex) {
    throw ConfigError(fmt::format("cannot apply override '{}': {}", dotted, ex.what()));
  }
}

RunConfig resolve_config(Experiment e, const json& file, const std::vector<std::pair<std::string, std::string>>& overrides) {
  const json defaults = default_config(e);
  json merged = defaults;
  if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
  if (file.contains("experiment") && file.at("experiment") != to_string(e)) {
    throw ConfigError(fmt::format("config is for '{}', not '{}'", file.at("experiment").dump(), to_string(e)));
  }
  merged.merge_patch(file);
  for (const auto& [key, value] : overrides) apply_override(merged, key, value);
  merged.erase("experiment");
  check_known_keys(defaults, merged, "");

  RunConfig cfg;
  cfg.experiment = e;
  try {
    cfg.model = merged.at("model").get<models::ModelParams>();
    cfg.t_theta = merged.at("t_theta").get<double>();
    cfg.alpha = merged.at("alpha").get<cplx>();
    cfg.theta0 = merged.at("theta0").get<double>();
    cfg.out = merged.at("out").get<std::string>();
    cfg.threads = merged.at("threads").get<int>();
    cfg.oracle = merged.at("oracle").get<bool>();
    if (merged.contains("g_values")) cfg.g_values = merged.at("g_values").get<std::vector<double>>();
    if (merged.contains("bracket")) {
      const auto b = merged.at("bracket").get<std::vector<double>>();
      if (b.size() != 2) throw ConfigError("bracket must hold two numbers");
      cfg.bracket = {b[0], b[1]};
    }
    if (merged.contains("sweep")) {
      for (const auto& [name, a] : merged.at("sweep").items()) {
        cfg.sweep[name] = {a.at("start").get<double>(), a.at("stop").get<double>(), a.at("points").get<int>()};
      }
    }
  } catch (const json::exception& ex) {
    throw ConfigError(fmt::format("malformed config: {}", ex.what()));
  }
  try {
    (void)models::critical_hamiltonian(cfg.model);
    validate_axes(cfg);
  } catch (const OutOfPhase& ex) {
    throw ConfigError(ex.what());
  }
  cfg.resolved = std::move(merged);
  return cfg;
}

Table run_fig2a(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::QrmFrequency);
  const auto xs = cfg.axis("sqrtDelta_tc").values();
  const auto ts = cfg.axis("t_theta").values();
  const double root = std::sqrt(models::delta_closed_form(cfg.model));
  Table t;
  t.columns = {"sqrtDelta_tc", "t_theta", "R", "enhanced"};
  t.notes.push_back(fmt::format("R over (sqrt(Delta) t_c, t_theta) at g={}, alpha={}{:+}i", cfg.model.g,
                                cfg.alpha.real(), cfg.alpha.imag()));
  t.rows = rows_of(xs.size() * ts.size(), cfg.threads, [&](std::size_t i) {
    const double x = xs[i / ts.size()];
    const double tt = ts[i % ts.size()];
    const double r = enhancement_ratio(models::make_protocol(cfg.model, x / root, tt, cfg.alpha, cfg.theta0));
    return std::vector<double>{x, tt, r, r > 1.0 ? 1.0 : 0.0};
  });
  return t;
}

Table run_fig2b(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::QrmFrequency);
  const auto xs = cfg.axis("sqrtDelta_tc").values();
  const auto& gs = cfg.g_values;
  Table t;
  t.columns = {"g", "sqrtDelta_tc", "R"};
  t.rows = rows_of(gs.size() * xs.size(), cfg.threads, [&](std::size_t i) {
    const auto model = cfg.model.with_control(gs[i / xs.size()]);
    const double x = xs[i % xs.size()];
    const double t_c = x / std::sqrt(models::delta_closed_form(model));
    return std::vector<double>{model.g, x,
                               enhancement_ratio(models::make_protocol(model, t_c, cfg.t_theta, cfg.alpha, cfg.theta0))};
  });
  for (std::size_t k = 0; k < gs.size(); ++k) {
    std::vector<double> curve;
    for (std::size_t j = 0; j < xs.size(); ++j) curve.push_back(t.rows[k * xs.size() + j][2]);
    t.notes.push_back(peaks_note(gs[k], xs, curve));
  }
  return t;
}

Table run_fig2b_inset(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::QrmFrequency);
  const auto gs = cfg.axis("g").values();
  Table t;
  t.columns = {"g", "R_tau"};
  if (cfg.oracle) t.columns.emplace_back("qfi_oracle_rel_err");
  t.rows = rows_of(gs.size(), cfg.oracle ? std::min(sweep::resolve_threads(cfg.threads), kOracleThreads) : cfg.threads,
                   [&](std::size_t i) {
                     const auto spec = models::protocol_at_half_period(cfg.model.with_control(gs[i]), cfg.t_theta,
                                                                       cfg.alpha, cfg.theta0);
                     std::vector<double> row{gs[i], enhancement_ratio(spec)};
                     if (cfg.oracle) {
                       const double exact = qfi_exact(spec);
                       row.push_back(std::abs(fock::qfi_numeric(spec) - exact) / exact);
                     }
                     return row;
                   });
  try {
    const double g_star = find_threshold(cfg.model, cfg.t_theta, cfg.alpha, cfg.bracket);
    t.notes.push_back(fmt::format("R_tau = 1 at g = {} (bracket [{}, {}])", g_star, cfg.bracket.first,
                                  cfg.bracket.second));
  } catch (const NoSignChange&) {
    t.notes.push_back(fmt::format("R_tau - 1 has no sign change on [{}, {}]", cfg.bracket.first, cfg.bracket.second));
  }
  return t;
}

Table run_fig3a(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::QrmFrequency);
  const auto xs = cfg.axis("sqrtDelta_tc").values();
  const auto& gs = cfg.g_values;
  Table t;
  t.columns = {"g", "sqrtDelta_tc", "S", "F"};
  t.notes.push_back(fmt::format("skew information S and QFI F at t_theta={}", cfg.t_theta));
  t.rows = rows_of(gs.size() * xs.size(), cfg.threads, [&](std::size_t i) {
    const auto model = cfg.model.with_control(gs[i / xs.size()]);
    const double x = xs[i % xs.size()];
    const auto spec =
        models::make_protocol(model, x / std::sqrt(models::delta_closed_form(model)), cfg.t_theta, cfg.alpha, cfg.theta0);
    return std::vector<double>{model.g, x, skew_information(spec), qfi_exact(spec)};
  });
  return t;
}

Table run_fig3b(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::QrmFrequency);
  const auto gs = cfg.axis("g").values();
  const auto spec_at = [&](double g) {
    return models::protocol_at_half_period(cfg.model.with_control(g), cfg.t_theta, cfg.alpha, cfg.theta0);
  };
  const auto mean_p = [&](double g) { return quadrature_stats(encoded_state(spec_at(g), cfg.theta0)).meanP; };

  Table t;
  t.columns = {"g", "meanP", "cfi", "qfi", "cfi_over_qfi", "theta_zero"};
  t.rows = rows_of(gs.size(), cfg.threads, [&](std::size_t i) {
    const auto spec = spec_at(gs[i]);
    const GaussianState s = encoded_state(spec, cfg.theta0);
    const double cfi = cfi_homodyne(spec);
    const double qfi = qfi_exact(spec);
    // <P> after an extra rotation phi is P cos(phi) - X sin(phi); nearest root in theta.
    const double theta_zero = cfg.theta0 + std::atan(s.mean(1) / s.mean(0)) / cfg.t_theta;
    return std::vector<double>{gs[i], s.mean(1), cfi, qfi, cfi / qfi, theta_zero};
  });

  std::vector<std::string> crossings;
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    const double a = t.rows[i][1];
    const double b = t.rows[i + 1][1];
    if (a == 0.0) crossings.push_back(fmt_double(gs[i]));
    if (a != 0.0 && b != 0.0 && std::signbit(a) != std::signbit(b)) {
      crossings.push_back(fmt_double(bisect_root(mean_p, gs[i], gs[i + 1])));
    }
  }
  t.notes.push_back(fmt::format("tau = pi/sqrt(Delta), theta = {}, t_theta = {}", cfg.theta0, cfg.t_theta));
  t.notes.push_back(crossings.empty() ? "meanP zero crossings in g: none in range"
                                      : "meanP zero crossings in g: " + fmt::format("{}", fmt::join(crossings, " ")));
  return t;
}

Table run_lmg_threshold(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::LmgFrequency);
  const auto ls = cfg.axis("lambda").values();
  Table t;
  t.columns = {"lambda", "R_tau"};
  t.rows = rows_of(ls.size(), cfg.threads, [&](std::size_t i) {
    const auto spec =
        models::protocol_at_half_period(cfg.model.with_control(ls[i]), cfg.t_theta, cfg.alpha, cfg.theta0);
    return std::vector<double>{ls[i], enhancement_ratio(spec)};
  });
  try {
    const double l_star = find_threshold(cfg.model, cfg.t_theta, cfg.alpha, cfg.bracket);
    t.notes.push_back(fmt::format("R_tau = 1 at lambda = {} (gamma = {}, bracket [{}, {}])", l_star, cfg.model.gamma,
                                  cfg.bracket.first, cfg.bracket.second));
  } catch (const NoSignChange&) {
    t.notes.push_back(fmt::format("R_tau - 1 has no sign change on [{}, {}]", cfg.bracket.first, cfg.bracket.second));
  }
  return t;
}

Table run_displacement(const RunConfig& cfg) {
  require_variant(cfg, models::Variant::QrmDisplacement);
  const auto xs = cfg.axis("sqrtDelta_tc").values();
  const double root = std::sqrt(models::delta_closed_form(cfg.model));
  Table t;
  t.columns = {"sqrtDelta_tc", "qfi_exact", "qfi_asymptotic", "baseline", "R"};
  t.notes.push_back(fmt::format("displacement encoding (a^dag + a)/sqrt(2), g={}, t_p={}", cfg.model.g, cfg.t_theta));
  t.rows = rows_of(xs.size(), cfg.threads, [&](std::size_t i) {
    const auto spec = models::make_protocol(cfg.model, xs[i] / root, cfg.t_theta, cfg.alpha, cfg.theta0);
    const DisplacementQfi q = qfi_displacement(spec);
    const double base = direct_baseline(spec);
    return std::vector<double>{xs[i], q.exact, q.asymptotic, base, q.exact / base};
  });
  return t;
}

Table run_table(const RunConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::Fig2a:
      return run_fig2a(cfg);
    case Experiment::Fig2b:
      return run_fig2b(cfg);
    case Experiment::Fig2bInset:
      return run_fig2b_inset(cfg);
    case Experiment::Fig3a:
      return run_fig3a(cfg);
    case Experiment::Fig3b:
      return run_fig3b(cfg);
    case Experiment::LmgThreshold:
      return run_lmg_threshold(cfg);
    case Experiment::Displacement:
      return run_displacement(cfg);
    case Experiment::Validate:
      break;
  }
  throw ConfigError("validate does not produce a table");
}

std::string config_hash(const RunConfig& cfg) {
  json j = cfg.resolved;
  j.erase("out");
  j.erase("threads");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string to_csv(const Table& t, const RunConfig& cfg) {
  std::string s = fmt::format("# canp {} experiment={} config={}\n", CANP_VERSION, to_string(cfg.experiment),
                              config_hash(cfg));
  for (const auto& n : t.notes) s += "# " + n + "\n";
  s += fmt::format("{}\n", fmt::join(t.columns, ","));
  for (const auto& r : t.rows) s += fmt::format("{}\n", fmt::join(r, ","));
  return s;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) idx.push_back(i);
  }
  return idx;
}

}  // namespace canp::experiments
