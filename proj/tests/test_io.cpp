#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kantmfg/csv.hpp"
#include "kantmfg/run.hpp"
#include "kantmfg/svg_plot.hpp"
#include "test_support.hpp"

using namespace kantmfg;
namespace fs = std::filesystem;

TEST_CASE("fixed-width numeric rendering is stable") {
  CHECK(format_g12(0.1) == "0.1");
  CHECK(format_g12(0.25) == "0.25");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(-2.0) == "-2");
  CHECK(format_g12(1.0e-9) == "1e-09");
  CHECK(format_g12(0.1) == format_g12(0.1));
}

TEST_CASE("csv rendering golden output") {
  std::vector<CsvRow> rows(2);
  rows[0] = {"demo:curve", 0.5, 0.0, 0.25, -0.125, "closed_form", 1e-12, 3};
  rows[1] = {"demo:curve", 0.5, 1.0, 0.3, -0.1, "fixed_point", 5e-9, 42};
  const std::string text = render_csv(rows);
  CHECK(text ==
        "scenario,alpha,type_or_x,action,cost,solver,residual,iterations\n"
        "demo:curve,0.5,0,0.25,-0.125,closed_form,1e-12,3\n"
        "demo:curve,0.5,1,0.3,-0.1,fixed_point,5e-09,42\n");
}

TEST_CASE("text files round-trip") {
  const fs::path dir = kantmfg::testing::make_scratch_dir("io");
  const std::string path = (dir / "roundtrip.txt").string();
  write_text_file(path, "line one\nline two\n");
  CHECK(read_text_file(path) == "line one\nline two\n");
  CHECK_THROWS(read_text_file((dir / "missing.txt").string()));
  fs::remove_all(dir);
}

TEST_CASE("sweep parsing") {
  CHECK(parse_sweep("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const std::vector<double> coarse = parse_sweep("0:1:0.3");
  REQUIRE(coarse.size() == 4);
  CHECK(coarse[3] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(parse_sweep("0.5:0.5:1") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_sweep("nonsense"), UsageError);
  CHECK_THROWS_AS(parse_sweep("1:0:0.1"), UsageError);
  CHECK_THROWS_AS(parse_sweep("0:1:0"), UsageError);
}

TEST_CASE("key=value config files") {
  const fs::path dir = kantmfg::testing::make_scratch_dir("cfg");
  const fs::path path = dir / "run.cfg";
  {
    std::ofstream out(path);
    out << "# demo configuration\n"
        << "scenario = symmetric_fishing\n"
        << "\n"
        << "sweep=0:1:0.5\n"
        << "grid_n = 101\n"
        << "format = csv,svg\n";
  }
  const auto entries = read_key_value_config(path.string());
  CHECK(entries.at("scenario") == "symmetric_fishing");
  CHECK(entries.at("sweep") == "0:1:0.5");

  RunConfig cfg;
  apply_config(cfg, entries);
  CHECK(cfg.scenario == "symmetric_fishing");
  CHECK(cfg.alphas == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(cfg.grid_n == 101);
  CHECK(cfg.write_csv);
  CHECK(cfg.write_svg);

  CHECK_THROWS_AS(apply_config(cfg, {{"flux_capacitor", "1"}}), UsageError);
  CHECK_THROWS_AS(apply_config(cfg, {{"grid_n", "banana"}}), UsageError);

  {
    std::ofstream out(path);
    out << "scenario symmetric_fishing\n";  // missing '='
  }
  CHECK_THROWS_AS(read_key_value_config(path.string()), UsageError);
  CHECK_THROWS_AS(read_key_value_config((dir / "absent.cfg").string()), UsageError);
  fs::remove_all(dir);
}

TEST_CASE("line charts are deterministic self-contained svg") {
  PlotSeries series;
  series.label = "<demo & curve>";
  series.x = {0.0, 0.5, 1.0};
  series.y = {0.3, 0.28, 0.25};
  const std::string svg = render_line_chart("effort", "alpha", "action", {series});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("&lt;demo &amp; curve&gt;") != std::string::npos);
  CHECK(svg == render_line_chart("effort", "alpha", "action", {series}));
}

TEST_CASE("solve runs write byte-stable artifacts") {
  const fs::path dir_a = kantmfg::testing::make_scratch_dir("solve_a");
  const fs::path dir_b = kantmfg::testing::make_scratch_dir("solve_b");

  RunConfig cfg;
  cfg.scenario = "symmetric_fishing";
  cfg.alphas = {0.0, 0.5, 1.0};
  cfg.out_dir = dir_a.string();
  cfg.write_svg = true;
  const SolveArtifacts first = run_solve(cfg);
  CHECK(!first.rows.empty());
  CHECK(fs::exists(dir_a / "equilibrium.csv"));
  CHECK(fs::exists(dir_a / "equilibrium.svg"));
  CHECK(fs::exists(dir_a / "metadata.json"));

  cfg.out_dir = dir_b.string();
  run_solve(cfg);
  CHECK(read_text_file((dir_a / "equilibrium.csv").string()) ==
        read_text_file((dir_b / "equilibrium.csv").string()));
  CHECK(read_text_file((dir_a / "equilibrium.svg").string()) ==
        read_text_file((dir_b / "equilibrium.svg").string()));

  const nlohmann::json meta =
      nlohmann::json::parse(read_text_file((dir_a / "metadata.json").string()));
  CHECK(meta.at("scenario") == "symmetric_fishing");
  CHECK(meta.at("alphas").size() == 3);
  CHECK(meta.at("row_count").get<int>() == static_cast<int>(first.rows.size()));

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("verification harness reports per-check lines") {
  RunConfig cfg;
  cfg.scenario = "symmetric_fishing";
  const VerifyOutcome outcome = run_verify(cfg);
  CHECK(outcome.ok);
  CHECK(!outcome.lines.empty());
  for (const std::string& line : outcome.lines) {
    CHECK(line.rfind("[ ok ]", 0) == 0);
  }
  RunConfig bad;
  bad.scenario = "made_up";
  CHECK_THROWS_AS(run_verify(bad), UsageError);
}
