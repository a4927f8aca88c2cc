// canp <experiment> [--config path.json] [--out path] [--dotted.key=value ...]
//
// Exit codes: 0 success, 1 validation failure or runtime error, 2 config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "canp/errors.hpp"
#include "canp/experiments.hpp"
#include "canp/validation.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& extras) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() <= 2) throw canp::ConfigError("unexpected argument '" + arg + "'");
    const std::string body = arg.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      out.emplace_back(body, extras[++i]);
    } else {
      throw canp::ConfigError("override '" + arg + "' has no value");
    }
  }
  return out;
}

nlohmann::json read_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw canp::ConfigError("cannot open config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw canp::ConfigError("config '" + path + "': " + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw canp::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Criticality-assisted preparation metrology: figure data and validation"};
  app.allow_extras();
  std::string experiment;
  std::string config_path;
  std::string out_path;
  app.add_option("experiment", experiment,
                 "fig2a | fig2b | fig2b-inset | fig3a | fig3b | lmg-threshold | displacement | validate")
      ->required();
  app.add_option("--config", config_path, "JSON config; defaults apply to missing fields");
  app.add_option("--out", out_path, "output file (CSV, or JSON for validate); stdout if omitted");
  app.footer(
      "Any config field can be overridden with its dotted name, e.g. --model.g=0.9 --sweep.g.points=20.\n"
      "CANP_THREADS caps the number of worker threads.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const auto kind = canp::experiments::parse_experiment(experiment);
    auto overrides = parse_overrides(app.remaining());
    if (!out_path.empty()) overrides.emplace_back("out", nlohmann::json(out_path).dump());
    const auto cfg = canp::experiments::resolve_config(kind, read_config(config_path), overrides);

    if (kind == canp::experiments::Experiment::Validate) {
      bool passed = false;
      const nlohmann::json report = canp::validation::run_validate(cfg, passed);
      emit(report.dump(2) + "\n", cfg.out);
      for (const auto& c : report.at("criteria")) {
        std::cerr << (c.at("passed").get<bool>() ? "PASS" : "FAIL") << "  criterion " << c.at("criterion") << ": "
                  << c.at("title").get<std::string>() << "\n";
        for (const auto& ch : c.at("checks")) {
          if (!ch.at("passed").get<bool>()) {
            std::cerr << "      failed check: " << ch.at("name").get<std::string>() << " (measured "
                      << ch.at("measured") << ", tolerance " << ch.at("tolerance") << ")\n";
          }
        }
      }
      return passed ? 0 : kExitFailure;
    }

    emit(canp::experiments::to_csv(canp::experiments::run_table(cfg), cfg), cfg.out);
    return 0;
  } catch (const canp::ConfigError& e) {
    std::cerr << "canp: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "canp: " << e.what() << "\n";
    return kExitFailure;
  }
}
