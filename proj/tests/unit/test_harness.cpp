#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gravdg/field_io.hpp"
#include "gravdg/harness/catalog.hpp"
#include "gravdg/harness/config.hpp"
#include "gravdg/harness/norms.hpp"
#include "gravdg/harness/runner.hpp"
#include "gravdg/limiter.hpp"
#include "json.hpp"

using namespace gravdg;
using namespace gravdg::harness;
namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gravdg_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string first_line(const fs::path& p) {
  std::ifstream is(p);
  std::string line;
  std::getline(is, line);
  return line;
}

std::string read_all(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config text parsing reports line numbers") {
  const auto kv = parse_config_text("# comment\nk = 3\n\n  N=40   # trailing\n");
  CHECK(kv.at("k") == "3");
  CHECK(kv.at("N") == "40");

  try {
    parse_config_text("k = 2\nnot a pair\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_config_text("k = 2\nN = 3\nk = 4\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_config_text("= 4\n"), ParseError);
}

TEST_CASE("settings are validated") {
  CHECK_THROWS_AS(config_from_settings({{"no_such_key", "1"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"k", "nine"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"k", "9"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"problem", "no-such-problem"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"cfl", "0"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"outputs", "solution,pictures"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"problem", "wb-hydrostatic"}, {"dim", "2"}}), ConfigError);
  CHECK_THROWS_AS(config_from_settings({{"problem", "kepler-wb"}, {"dim", "1"}}), ConfigError);
  const RunConfig c = config_from_settings({{"problem", "accuracy-1d"}, {"N", "40"}, {"variant", "nonWB"}});
  CHECK(c.nx == 40);
  CHECK(c.variant == SchemeVariant::kNonWB);
  CHECK(c.limiter_enabled());
  CHECK_FALSE(config_from_settings({{"variant", "nonPP"}}).limiter_enabled());
}

TEST_CASE("canonical config text round trips and hashes with FNV-1a") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  for (const auto& entry : catalog()) {
    CAPTURE(entry.id);
    const std::string text = canonical_text(entry.defaults);
    const RunConfig back = config_from_settings(parse_config_text(text));
    CHECK(canonical_text(back) == text);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    CHECK(config_hash(entry.defaults) == buf);
  }
  RunConfig a = catalog_defaults("sod-moving");
  RunConfig b = a;
  b.nx += 1;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("catalog lists the benchmark problems") {
  for (const char* id : {"wb-hydrostatic", "wb-subsonic", "wb-supersonic", "pert-hydrostatic", "pert-subsonic",
                         "pert-supersonic", "accuracy-1d", "accuracy-2d", "sod-moving", "sod-hydrostatic",
                         "rarefaction-1d", "rarefaction-2d", "kepler-wb", "kepler-wb-step", "kepler-perturbation",
                         "kepler-riemann"}) {
    CAPTURE(id);
    const RunConfig c = catalog_defaults(id);
    CHECK(c.problem == id);
    CHECK_NOTHROW(validate(c));
  }
  CHECK_THROWS_AS(catalog_defaults("nope"), ConfigError);
}

TEST_CASE("error norms follow quadrature") {
  const LobattoOperators ops = build_operators(2);
  const auto w = average_weights(ops, 1);
  const int n = 10;
  const double vol = 2.0 / n;
  std::vector<double> err(n * 3, -0.5);
  const ErrorNorms c = norms_of(err, 3, w, vol);
  CHECK(c.l1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.l2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(c.linf == 0.5);

  const Mesh1D mesh = make_mesh_1d(0.0, 1.0, 1);
  std::vector<double> lin(3);
  for (int j = 0; j < 3; ++j) lin[j] = mesh.node_x(0, ops.nodes[j]);
  const ErrorNorms l = norms_of(lin, 3, w, 1.0);
  CHECK(l.l1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(l.l2 == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(l.linf == 1.0);
}

TEST_CASE("observed orders and report layout") {
  CHECK(*convergence_order(8e-3, 1e-3) == doctest::Approx(3.0));
  CHECK_FALSE(convergence_order(1e-14, 1e-15).has_value());
  const ErrorReport rep = make_report({20, 40}, {{4e-4, 4e-4, 4e-4}, {5e-5, 5e-5, 1e-16}});
  CHECK_FALSE(rep.order_l1[0].has_value());
  CHECK(*rep.order_l1[1] == doctest::Approx(3.0));
  CHECK_FALSE(rep.order_linf[1].has_value());
  const std::string csv = report_csv(rep);
  CHECK(csv.rfind("N,L1,order_L1,L2,order_L2,Linf,order_Linf\n", 0) == 0);
  CHECK(format_report(rep).find("--") != std::string::npos);
  CHECK_FALSE(make_report({20, 30}, {{1, 1, 1}, {1, 1, 1}}).order_l1[1].has_value());
}

TEST_CASE("restriction reproduces polynomials exactly") {
  const LobattoOperators fine_ops = build_operators(3), coarse_ops = build_operators(2);
  const Mesh1D fine = make_mesh_1d(0.0, 2.0, 40), coarse = make_mesh_1d(0.0, 2.0, 8);
  NodalField<1> f(40, 3);
  for (int c = 0; c < 40; ++c)
    for (int j = 0; j <= 3; ++j) {
      const double x = fine.node_x(c, fine_ops.nodes[j]);
      f.at(c, j).q = {x * x * x - x, 1.0, 2.0};
    }
  const NodalField<1> r = restrict_field(f, fine, fine_ops, coarse, coarse_ops);
  for (int c = 0; c < 8; ++c)
    for (int j = 0; j <= 2; ++j) {
      const double x = coarse.node_x(c, coarse_ops.nodes[j]);
      CHECK(std::abs(r.at(c, j).q[0] - (x * x * x - x)) < 1e-13);
    }
}

TEST_CASE("field CSV round trips and rejects malformed files") {
  const fs::path dir = scratch_dir("csv");
  const LobattoOperators ops = build_operators(2);
  const Mesh1D mesh = make_mesh_1d(-1.0, 1.0, 5);
  NodalField<1> f(5, 2);
  for (size_t i = 0; i < f.size(); ++i) f.values[i].q = {1.0 + 0.1 * i, std::sqrt(2.0) * i, M_PI + i};
  write_field_csv((dir / "f.csv").string(), f, mesh, ops);
  CHECK(first_line(dir / "f.csv") == field_csv_header(1));
  const auto back = read_field_csv<1>((dir / "f.csv").string());
  REQUIRE(back.field.same_shape(f));
  for (size_t i = 0; i < f.size(); ++i) CHECK(back.field.values[i] == f.values[i]);

  std::string text = read_all(dir / "f.csv");
  const auto third = text.find('\n', text.find('\n', text.find('\n') + 1) + 1);
  std::ofstream(dir / "bad.csv") << text.substr(0, third + 1) << "0.5,0,1,oops,0,0\n";
  try {
    read_field_csv<1>((dir / "bad.csv").string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  std::ofstream(dir / "header.csv") << "x,rho\n";
  CHECK_THROWS_AS(read_field_csv<1>((dir / "header.csv").string()), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("runs write the requested artifacts") {
  const fs::path dir = scratch_dir("run");
  RunConfig cfg = catalog_defaults("pert-hydrostatic");
  cfg.nx = 10;
  cfg.final_time = 0.02;
  cfg.output_dir = dir.string();
  cfg.outputs = {"solution", "series", "metadata", "equilibrium", "perturbation", "initial"};
  const RunSummary sum = run_case(cfg);
  CHECK(sum.status == RunStatus::kCompleted);
  CHECK(exit_code(sum.status) == 0);
  CHECK(first_line(dir / "solution.csv") == field_csv_header(1));
  CHECK(first_line(dir / "initial.csv") == field_csv_header(1));
  CHECK(first_line(dir / "equilibrium.csv") == field_csv_header(1));
  CHECK(first_line(dir / "series.csv") == series_csv_header());
  CHECK(first_line(dir / "perturbation.csv") == "x,cell,i1,dp,du,drho");
  const auto meta = nlohmann::json::parse(read_all(dir / "metadata.json"));
  CHECK(meta["status"] == "completed");
  CHECK(meta["steps"].get<long>() == sum.steps);
  CHECK(meta["config_hash"] == config_hash(cfg));
  CHECK(meta["dt"].size() == static_cast<size_t>(sum.steps));
  CHECK(meta["final_time"].get<double>() == 0.02);
  fs::remove_all(dir);
}

TEST_CASE("accuracy runs report their error table") {
  const fs::path dir = scratch_dir("acc");
  RunConfig cfg = catalog_defaults("accuracy-1d");
  cfg.nx = 8;
  cfg.final_time = 0.1;
  cfg.output_dir = dir.string();
  const RunSummary sum = run_case(cfg);
  REQUIRE(sum.density_error.has_value());
  CHECK(sum.density_error->l1 < 1e-2);
  CHECK(first_line(dir / "errors.csv") == "variable,L1,L2,Linf");
  fs::remove_all(dir);
}

TEST_CASE("ablation blow-ups are classified as expected failures") {
  CHECK(exit_code(RunStatus::kExpectedFailure) == 2);
  CHECK(exit_code(RunStatus::kFailed) == 1);
  RunConfig cfg = catalog_defaults("rarefaction-1d");
  cfg.variant = SchemeVariant::kNonPP;
  cfg.limiter = LimiterMode::kAuto;
  cfg.nx = 100;
  cfg.outputs = {};
  const auto sim = simulate<1>(cfg);
  CHECK(sim.status == RunStatus::kExpectedFailure);
  REQUIRE(sim.failure.has_value());
  CHECK(sim.failure->step >= 1);
  CHECK(sim.failure->cell >= 0);
}

TEST_CASE("the limited scheme stays admissible through the double rarefaction") {
  RunConfig cfg = catalog_defaults("rarefaction-1d");
  cfg.nx = 100;
  cfg.final_time = 0.1;
  cfg.outputs = {"series"};
  const auto sim = simulate<1>(cfg);
  CHECK(sim.status == RunStatus::kCompleted);
  CHECK(sim.series.size() == static_cast<size_t>(sim.steps) + 1);
  for (const auto& row : sim.series) {
    CHECK(row.min_rho >= 1e-13 * (1 - 1e-12));
    CHECK(row.min_p >= 1e-13 * (1 - 1e-12));
  }
}
