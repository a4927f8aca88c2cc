// Acceptance suite: one PASS/FAIL line per criterion.
//
//   canp_acceptance                 all criteria
//   canp_acceptance --criterion 4   just one
//
// Criterion 9 additionally regenerates every figure CSV from its checked-in
// config and compares it byte for byte with the reference copy.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "canp/experiments.hpp"
#include "canp/validation.hpp"

namespace fs = std::filesystem;
using namespace canp;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_golden_checks(validation::CriterionResult& r, const fs::path& root) {
  for (const char* name : {"fig2a", "fig2b", "fig3a", "fig3b"}) {
    validation::Check c{fmt::format("{} regenerates byte-identically from configs/{}.json", name, name)};
    try {
      const auto cfg = experiments::resolve_config(experiments::parse_experiment(name),
                                                   nlohmann::json::parse(slurp(root / "configs" / fmt::format("{}.json", name))));
      const std::string fresh = experiments::to_csv(experiments::run_table(cfg), cfg);
      const std::string golden = slurp(root / "tests" / "golden" / fmt::format("{}.csv", name));
      c.passed = fresh == golden;
      c.measured = c.passed ? 0.0 : 1.0;
      c.detail = fmt::format("{} bytes vs {} reference bytes", fresh.size(), golden.size());
    } catch (const std::exception& e) {
      c.measured = 1.0;
      c.detail = e.what();
    }
    r.checks.push_back(std::move(c));
  }
}

void print(const validation::CriterionResult& r) {
  std::cout << fmt::format("{} criterion {}: {} ({:.2f} s)\n", r.passed() ? "PASS" : "FAIL", r.criterion, r.title, r.seconds);
  for (const auto& c : r.checks) {
    std::cout << fmt::format("    [{}] {}: measured {:.6g}, tolerance {:.6g}{}\n", c.passed ? "ok" : "FAILED", c.name,
                             c.measured, c.tolerance, c.detail.empty() ? "" : " (" + c.detail + ")");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canp acceptance suite"};
  int only = 0;
  std::string root = CANP_SOURCE_DIR;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, validation::kCriteria));
  app.add_option("--root", root, "source tree holding configs/ and tests/golden/");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (int k = 1; k <= validation::kCriteria; ++k) {
    if (only != 0 && k != only) continue;
    auto r = validation::check_criterion(k, {});
    if (k == 9) add_golden_checks(r, root);
    print(r);
    all = all && r.passed();
  }
  return all ? 0 : 1;
}
