// Command-line front end: run configs, well-balance checks, convergence studies.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gravdg/errors.hpp"
#include "gravdg/harness/catalog.hpp"
#include "gravdg/harness/config.hpp"
#include "gravdg/harness/runner.hpp"

using namespace gravdg;
using namespace gravdg::harness;

namespace {

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& sets) {
  std::map<std::string, std::string> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

void print_summary(const RunSummary& sum) {
  std::printf("status=%s steps=%ld t=%.17g pp_bound_violations=%ld config_hash=%s runtime=%.3fs\n",
              to_string(sum.status).c_str(), sum.steps, sum.t, sum.pp_bound_violations, sum.config_hash.c_str(),
              sum.runtime_seconds);
  if (sum.failure)
    std::printf("failure: step=%ld stage=%d cell=%d node=%d: %s\n", sum.failure->step, sum.failure->stage,
                sum.failure->cell, sum.failure->node, sum.failure->message.c_str());
  if (sum.density_error)
    std::printf("density error: L1=%.6e L2=%.6e Linf=%.6e\n", sum.density_error->l1, sum.density_error->l2,
                sum.density_error->linf);
}

int cmd_run(const std::string& config_path, const std::string& problem, const std::vector<std::string>& sets) {
  auto overrides = parse_overrides(sets);
  RunConfig cfg;
  if (!config_path.empty()) {
    cfg = load_config(config_path, overrides);
  } else {
    if (problem.empty()) throw ConfigError("run needs --config or --problem");
    overrides["problem"] = problem;
    cfg = config_from_settings(overrides);
  }
  const RunSummary sum = run_case(cfg);
  print_summary(sum);
  return exit_code(sum.status);
}

RunConfig study_config(const std::string& problem, const std::vector<std::string>& sets) {
  auto overrides = parse_overrides(sets);
  overrides["problem"] = problem;
  return config_from_settings(overrides);
}

int cmd_wb(const std::string& problem, const std::vector<int>& meshes, const std::vector<std::string>& sets,
           double tolerance) {
  RunConfig base = study_config(problem, sets);
  const ErrorReport rep = mesh_study(base, meshes, "equilibrium");
  std::cout << format_report(rep);
  bool ok = true;
  for (const auto& e : rep.errors) ok = ok && e.l1 <= tolerance && e.linf <= tolerance;
  std::printf("%s: density deviation from the equilibrium %s %.1e\n", ok ? "ok" : "FAILED",
              ok ? "within" : "exceeds", tolerance);
  return ok ? 0 : 1;
}

int cmd_convergence(const std::string& problem, const std::vector<int>& meshes,
                    const std::vector<std::string>& sets, const std::string& reference, const std::string& csv) {
  RunConfig base = study_config(problem, sets);
  const ErrorReport rep = mesh_study(base, meshes, reference);
  std::cout << format_report(rep);
  if (!csv.empty()) {
    FILE* f = std::fopen(csv.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + csv);
    std::fputs(report_csv(rep).c_str(), f);
    std::fclose(f);
  }
  return 0;
}

int cmd_catalog() {
  for (const auto& e : catalog()) std::printf("%-22s %s\n", e.id.c_str(), e.description.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced entropy-stable DG solver for Euler equations with gravity"};
  app.require_subcommand(1);

  std::string config_path, problem, reference = "exact", csv;
  std::vector<std::string> sets;
  std::vector<int> meshes = {20, 40, 80, 160};
  double tolerance = 1e-11;

  auto* run = app.add_subcommand("run", "Run one configuration and write its artifacts");
  run->add_option("--config", config_path, "Config file (key = value lines)");
  run->add_option("--problem", problem, "Catalog problem id (when no config file is given)");
  run->add_option("--set", sets, "Override a config key: key=value")->take_all();

  auto* wb = app.add_subcommand("wb-test", "Density deviation from the equilibrium over a mesh sequence");
  wb->add_option("--problem", problem, "Catalog problem id")->required();
  wb->add_option("--meshes", meshes, "Cell counts")->delimiter(',');
  wb->add_option("--set", sets, "Override a config key: key=value")->take_all();
  wb->add_option("--tolerance", tolerance, "Pass threshold on the L1 and Linf deviation");

  auto* conv = app.add_subcommand("convergence", "Error table and observed orders over a mesh sequence");
  conv->add_option("--problem", problem, "Catalog problem id")->required();
  conv->add_option("--meshes", meshes, "Cell counts")->delimiter(',');
  conv->add_option("--set", sets, "Override a config key: key=value")->take_all();
  conv->add_option("--reference", reference, "exact | initial | equilibrium");
  conv->add_option("--csv", csv, "Also write the table as CSV");

  app.add_subcommand("catalog", "List built-in problems");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(config_path, problem, sets);
    if (wb->parsed()) return cmd_wb(problem, meshes, sets, tolerance);
    if (conv->parsed()) return cmd_convergence(problem, meshes, sets, reference, csv);
    return cmd_catalog();
  } catch (const ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return 1;
}
