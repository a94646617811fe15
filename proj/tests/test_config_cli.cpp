#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "kerrpcw/config.hpp"

using namespace kerrpcw;
namespace fs = std::filesystem;

namespace {

Config parse_text(const std::string& text, const std::string& origin = "test.cfg") {
  std::istringstream in(text);
  return Config::parse(in, origin);
}

// Fresh scratch directory per test case; wiped up front so reruns start clean.
fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("kerrpcw_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ToolResult {
  int code = -1;
  std::string output;  // stdout and stderr combined
};

// Runs the installed binary with the given arguments and captures everything it
// prints. The tests only ever pass paths without spaces, so no quoting needed.
ToolResult run_tool(const std::string& args, const fs::path& scratch) {
  const fs::path log = scratch / "run.log";
  const std::string cmd =
      std::string(KERRPCW_TOOL_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  ToolResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.output = read_file(log);
  return r;
}

double value_of(const std::string& text, const std::string& key) {
  const std::string needle = key + " = ";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + needle.size()));
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<double> csv_fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) {
    out.push_back(std::stod(field));
  }
  return out;
}

const std::string kFixtures = KERRPCW_FIXTURE_DIR;

}  // namespace

// ------------------------------------------------------------- config file --

TEST_CASE("config parses flat key = value text") {
  const Config cfg = parse_text(
      "# leading comment\n"
      "\n"
      "material.n = 3.4   # trailing comment\n"
      "  pcw.length_um=100\n"
      "run.note = keep = both sides\n");
  CHECK(!cfg.empty());
  CHECK(cfg.has("material.n"));
  CHECK(cfg.has("pcw.length_um"));
  CHECK(!cfg.has("material"));
  CHECK(cfg.get_double("material.n") == 3.4);
  CHECK(cfg.get_double("pcw.length_um") == 100.0);
  // only the first '=' splits; the rest belongs to the value
  CHECK(cfg.get_string("run.note") == "keep = both sides");
  CHECK(cfg.origin() == "test.cfg");
}

TEST_CASE("empty input gives an empty config") {
  const Config cfg = parse_text("# nothing but comments\n\n");
  CHECK(cfg.empty());
  CHECK(cfg.keys_with_prefix("").empty());
}

TEST_CASE("config rejects malformed lines with file and line number") {
  CHECK_THROWS_WITH_AS(parse_text("just words\n"),
                       "test.cfg:1: expected 'key = value', got 'just words'",
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_text("a = 1\n= 5\n"), "test.cfg:2: empty key",
                       ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_text("a = 1\nb = 2\n\na = 3\n"),
      "test.cfg:4: duplicate key 'a' (first set at line 1)", ConfigError);
}

TEST_CASE("config lookups name the key and where it came from") {
  const Config cfg = parse_text("x = abc\nn = 3.5\nflag = maybe\nlist = 1, x, 3\n");
  CHECK_THROWS_WITH_AS(cfg.get_double("nope"),
                       "test.cfg: missing required key 'nope'", ConfigError);
  CHECK_THROWS_WITH_AS(cfg.get_double("x"),
                       "test.cfg:1: key 'x' is not a number: 'abc'", ConfigError);
  CHECK_THROWS_WITH_AS(cfg.get_int("n"),
                       "test.cfg:2: key 'n' is not an integer: '3.5'", ConfigError);
  CHECK_THROWS_WITH_AS(cfg.get_bool("flag", false),
                       "test.cfg:3: key 'flag' is not a boolean (use true/false): 'maybe'",
                       ConfigError);
  CHECK_THROWS_WITH_AS(cfg.get_double_list("list"),
                       "test.cfg:4: key 'list' has a non-numeric element: 'x'",
                       ConfigError);
}

TEST_CASE("config numeric accessors") {
  const Config cfg = parse_text(
      "a = -2.5e-3\n"
      "count = 4096\n"
      "count_sci = 1e3\n"
      "neg = -7\n"
      "on = true\n"
      "off = 0\n"
      "ks = 0.2, 0.5,0.8\n");
  CHECK(cfg.get_double("a") == -2.5e-3);
  CHECK(cfg.get_int("count") == 4096);
  CHECK(cfg.get_int("count_sci") == 1000);  // scientific notation is fine if integral
  CHECK(cfg.get_int("neg") == -7);
  CHECK(cfg.get_bool("on", false));
  CHECK(!cfg.get_bool("off", true));
  const std::vector<double> ks = cfg.get_double_list("ks");
  REQUIRE(ks.size() == 3);
  CHECK(ks[0] == 0.2);
  CHECK(ks[1] == 0.5);
  CHECK(ks[2] == 0.8);

  // fallbacks apply only when the key is absent
  CHECK(cfg.get_double("missing", 1.5) == 1.5);
  CHECK(cfg.get_int("missing", 7) == 7);
  CHECK(cfg.get_bool("missing", true));
  CHECK(cfg.get_string("missing", "dflt") == "dflt");
  CHECK(cfg.get_double("a", 99.0) == -2.5e-3);
}

TEST_CASE("config rejects non-finite numbers") {
  const Config cfg = parse_text("a = inf\nb = nan\n");
  CHECK_THROWS_AS(cfg.get_double("a"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("b"), ConfigError);
}

TEST_CASE("config paths resolve relative to the config file") {
  const fs::path dir = scratch_dir("cfg_paths");
  write_file(dir / "job.cfg",
             "band_file = sub/data.band\nabs_file = /tmp/elsewhere.band\n");
  const Config cfg = Config::load(dir / "job.cfg");
  CHECK(cfg.resolve_path("band_file") == dir / "sub/data.band");
  CHECK(cfg.resolve_path("abs_file") == fs::path("/tmp/elsewhere.band"));
  CHECK_THROWS_WITH_AS(Config::load(dir / "no_such.cfg"),
                       ("cannot open config file: " + (dir / "no_such.cfg").string()).c_str(),
                       ConfigError);
}

TEST_CASE("config set overrides entries and keys_with_prefix lists them") {
  Config cfg = parse_text("pcw.v_over_c = 0.01\npcw.length_um = 100\nscenario = pcw\n");
  cfg.set("pcw.v_over_c", 0.001);
  CHECK(cfg.get_double("pcw.v_over_c") == 0.001);
  cfg.set("pcw.extra", "7");
  CHECK(cfg.get_double("pcw.extra") == 7.0);
  // a 17-digit round trip must preserve the double exactly
  cfg.set("pcw.v_over_c", 0.1 + 0.2);
  CHECK(cfg.get_double("pcw.v_over_c") == 0.1 + 0.2);

  const auto keys = cfg.keys_with_prefix("pcw.");
  REQUIRE(keys.size() == 3);
  CHECK(keys[0] == "pcw.extra");
  CHECK(keys[1] == "pcw.length_um");
  CHECK(keys[2] == "pcw.v_over_c");
  CHECK(cfg.keys_with_prefix("nope.").empty());
}

// ------------------------------------------------------------ tool process --

TEST_CASE("estimate runs the bundled scenario fixtures deterministically") {
  const fs::path dir = scratch_dir("cli_estimate");
  const ToolResult first =
      run_tool("estimate --config " + kFixtures + "/pcw_1620.cfg --out " +
                   (dir / "a").string(),
               dir);
  REQUIRE(first.code == 0);
  const std::string report = read_file(dir / "a" / "report.txt");
  CHECK(value_of(report, "phi_per_photon_rad") ==
        doctest::Approx(3.2619643036323548e-07).epsilon(1e-12));
  CHECK(value_of(report, "required_energy_J") ==
        doctest::Approx(2.8810003956115988e-07).epsilon(1e-12));
  CHECK(value_of(report, "tpa_length_limit_m") ==
        doctest::Approx(3.125e-05).epsilon(1e-12));

  const ToolResult second =
      run_tool("estimate --config " + kFixtures + "/pcw_1620.cfg --out " +
                   (dir / "b").string(),
               dir);
  REQUIRE(second.code == 0);
  CHECK(read_file(dir / "a" / "report.csv") == read_file(dir / "b" / "report.csv"));
  CHECK(read_file(dir / "a" / "report.txt") == read_file(dir / "b" / "report.txt"));
}

TEST_CASE("estimate covers the bulk and slow-light comparison fixtures") {
  const fs::path dir = scratch_dir("cli_estimate_bulk");
  const ToolResult bulk =
      run_tool("estimate --config " + kFixtures + "/alga_as_bulk.cfg --out " +
                   (dir / "bulk").string(),
               dir);
  REQUIRE(bulk.code == 0);
  const std::string bulk_report = read_file(dir / "bulk" / "report.txt");
  CHECK(value_of(bulk_report, "phi_per_photon_rad") ==
        doctest::Approx(8.3208049436656188e-13).epsilon(1e-12));
  CHECK(value_of(bulk_report, "required_energy_J") ==
        doctest::Approx(47818.373393386457).epsilon(1e-12));

  const ToolResult enh =
      run_tool("estimate --config " + kFixtures + "/bulk_enhanced.cfg --out " +
                   (dir / "enh").string(),
               dir);
  REQUIRE(enh.code == 0);
  const std::string enh_report = read_file(dir / "enh" / "report.txt");
  CHECK(value_of(enh_report, "enhancement") == 160000.0);
  CHECK(value_of(enh_report, "required_energy_J") ==
        doctest::Approx(1.8679052106791586e-06).epsilon(1e-12));
}

TEST_CASE("tool exits 2 on usage and configuration errors") {
  const fs::path dir = scratch_dir("cli_errors");

  SUBCASE("no subcommand") {
    const ToolResult r = run_tool("", dir);
    CHECK(r.code == 2);
  }
  SUBCASE("config file does not exist") {
    const ToolResult r =
        run_tool("estimate --config " + (dir / "no.cfg").string() + " --out " +
                     (dir / "out").string(),
                 dir);
    CHECK(r.code == 2);
  }
  SUBCASE("config missing the scenario key") {
    write_file(dir / "empty.cfg", "# nothing here\n");
    const ToolResult r =
        run_tool("estimate --config " + (dir / "empty.cfg").string() + " --out " +
                     (dir / "out").string(),
                 dir);
    CHECK(r.code == 2);
    CHECK(r.output.find("missing required key 'scenario'") != std::string::npos);
  }
  SUBCASE("unknown scenario") {
    write_file(dir / "odd.cfg", "scenario = warp\n");
    const ToolResult r =
        run_tool("estimate --config " + (dir / "odd.cfg").string() + " --out " +
                     (dir / "out").string(),
                 dir);
    CHECK(r.code == 2);
    CHECK(r.output.find("config error") != std::string::npos);
    CHECK(r.output.find("scenario") != std::string::npos);
  }
  SUBCASE("overlap with modes on different grids") {
    write_file(dir / "mix.cfg", "mode_file_1 = " + kFixtures +
                                    "/mode_uniform.mode\nmode_file_2 = " + kFixtures +
                                    "/mode_even.mode\n");
    const ToolResult r =
        run_tool("overlap --config " + (dir / "mix.cfg").string() + " --out " +
                     (dir / "out").string(),
                 dir);
    CHECK(r.code == 2);
    CHECK(r.output.find("config error") != std::string::npos);
  }
}

TEST_CASE("tool exits 3 when the run cannot be represented on the grid") {
  const fs::path dir = scratch_dir("cli_numeric");
  write_file(dir / "wide.cfg",
             "material.n = 3.4\n"
             "material.n2_cm2_per_W = 1.5e-13\n"
             "grid.length_um = 100\n"
             "grid.n_points = 1024\n"
             "signal.lambda_nm = 1550\n"
             "signal.tau_ps = 10\n"
             "signal.n_photons = 1000\n"
             "signal.center_um = 30\n"
             "signal.v_over_c = 0.002\n"
             "probe.lambda_nm = 1620\n"
             "probe.tau_ps = 10\n"
             "probe.n_photons = 1000\n"
             "probe.center_um = 70\n"
             "probe.v_over_c = 0.001\n"
             "gamma.a_nm = 400\n"
             "gamma.ss_per_a2 = 6.4e-2\n"
             "gamma.pp_per_a2 = 7.9e-2\n"
             "gamma.sp_per_a2 = 1.4e-2\n"
             "run.duration_ps = 10000\n"
             "solver.steps = 100\n");
  const ToolResult r = run_tool("propagate --config " + (dir / "wide.cfg").string() +
                                    " --out " + (dir / "out").string(),
                                dir);
  CHECK(r.code == 3);
  CHECK(r.output.find("numeric failure") != std::string::npos);
  CHECK(r.output.find("walk-off") != std::string::npos);
}

TEST_CASE("tool help exits cleanly") {
  const fs::path dir = scratch_dir("cli_help");
  CHECK(run_tool("--help", dir).code == 0);
  CHECK(run_tool("estimate --help", dir).code == 0);
  CHECK(run_tool("sweep --help", dir).code == 0);
}

TEST_CASE("single-point sweep reproduces the plain estimate") {
  const fs::path dir = scratch_dir("cli_sweep_single");
  // same scenario as the sweep fixture, pinned to the slow end of the axis
  std::string cfg = read_file(fs::path(kFixtures) / "sweep_vg.cfg");
  cfg += "\n";  // axis overrides below
  cfg.replace(cfg.find("sweep.count_1 = 25"), 18, "sweep.count_1 = 1 ");
  cfg.replace(cfg.find("sweep.max_1 = 0.1"), 17, "sweep.max_1 = 0.001");
  write_file(dir / "single.cfg", cfg);

  const ToolResult sw = run_tool("sweep --config " + (dir / "single.cfg").string() +
                                     " --out " + (dir / "sw").string(),
                                 dir);
  REQUIRE(sw.code == 0);
  const auto sweep_lines = lines_of(read_file(dir / "sw" / "sweep.csv"));
  REQUIRE(sweep_lines.size() == 2);
  const std::vector<double> row = csv_fields(sweep_lines[1]);
  REQUIRE(row.size() == 11);
  CHECK(row[0] == 0.001);  // the axis value itself

  const ToolResult est =
      run_tool("estimate --config " + kFixtures + "/pcw_1620.cfg --out " +
                   (dir / "est").string(),
               dir);
  REQUIRE(est.code == 0);
  const std::string report = read_file(dir / "est" / "report.txt");
  // phi, probe size, and linear limits agree with the standalone estimate;
  // only the absorption limit differs (the sweep fixture carries no loss block)
  CHECK(row[1] == doctest::Approx(value_of(report, "phi_per_photon_rad")).epsilon(1e-14));
  CHECK(row[2] == doctest::Approx(value_of(report, "required_np")).epsilon(1e-14));
  CHECK(row[3] == doctest::Approx(value_of(report, "required_energy_J")).epsilon(1e-14));
  CHECK(row[5] == doctest::Approx(value_of(report, "linear_length_limit_m")).epsilon(1e-14));
  CHECK(row[6] ==
        doctest::Approx(value_of(report, "linear_device_limit_m")).epsilon(1e-14));
}

TEST_CASE("two-axis sweep enumerates the full grid in order") {
  const fs::path dir = scratch_dir("cli_sweep_grid");
  std::string cfg = read_file(fs::path(kFixtures) / "sweep_vg.cfg");
  cfg.replace(cfg.find("sweep.count_1 = 25"), 18, "sweep.count_1 = 3 ");
  cfg +=
      "sweep.axis_2 = pcw.tau_s_ps\n"
      "sweep.min_2 = 100\n"
      "sweep.max_2 = 300\n"
      "sweep.count_2 = 2\n";
  write_file(dir / "grid.cfg", cfg);

  const ToolResult sw = run_tool("sweep --config " + (dir / "grid.cfg").string() +
                                     " --out " + (dir / "sw").string(),
                                 dir);
  REQUIRE(sw.code == 0);
  const auto rows = lines_of(read_file(dir / "sw" / "sweep.csv"));
  REQUIRE(rows.size() == 7);  // header + 3 x 2 points
  CHECK(rows[0].rfind("pcw.v_over_c, pcw.tau_s_ps, ", 0) == 0);

  std::vector<std::vector<double>> grid;
  for (size_t i = 1; i < rows.size(); ++i) grid.push_back(csv_fields(rows[i]));
  // first axis is the outer loop, second the inner one
  CHECK(grid[0][0] == grid[1][0]);
  CHECK(grid[2][0] == grid[3][0]);
  CHECK(grid[4][0] == grid[5][0]);
  CHECK(grid[0][0] < grid[2][0]);
  CHECK(grid[2][0] < grid[4][0]);
  for (size_t i = 0; i < 6; i += 2) {
    CHECK(grid[i][1] == 100.0);
    CHECK(grid[i + 1][1] == 300.0);
    // twice the pulse width means half the phase per photon
    CHECK(grid[i][2] == doctest::Approx(3.0 * grid[i + 1][2]).epsilon(1e-12));
  }
}

TEST_CASE("dispersion flags out-of-range points and keeps going") {
  const fs::path dir = scratch_dir("cli_dispersion");
  write_file(dir / "list.cfg", "band_file = " + kFixtures +
                                   "/band_quadratic.band\nk_list = 0.2, 0.5\n");
  const ToolResult r = run_tool("dispersion --config " + (dir / "list.cfg").string() +
                                    " --out " + (dir / "out").string(),
                                dir);
  REQUIRE(r.code == 0);
  const auto rows = lines_of(read_file(dir / "out" / "dispersion.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].find("out_of_range") != std::string::npos);
  CHECK(rows[1].find("nan") != std::string::npos);
  CHECK(rows[2].find("ok") != std::string::npos);
  const std::vector<double> ok_row = csv_fields(rows[2].substr(0, rows[2].rfind(',')));
  // the quadratic band has v_g = 0.2 c (k - 0.3), so c/v_g = 25 at k = 0.5
  CHECK(ok_row[4] == doctest::Approx(25.0).epsilon(1e-9));
}

TEST_CASE("propagate writes snapshots on the configured cadence") {
  const fs::path dir = scratch_dir("cli_propagate");
  const ToolResult r =
      run_tool("propagate --config " + kFixtures + "/propagate_tpa.cfg --out " +
                   (dir / "out").string(),
               dir);
  REQUIRE(r.code == 0);
  for (int i = 0; i <= 5; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%06d.csv", i);
    CHECK(fs::exists(dir / "out" / name));
  }
  CHECK(!fs::exists(dir / "out" / "snapshot_000006.csv"));

  const std::string report = read_file(dir / "out" / "phase_report.txt");
  const double probe_initial = value_of(report, "probe_norm_initial_J");
  const double probe_final = value_of(report, "probe_norm_final_J");
  // two-photon absorption plus a little linear loss: a clearly visible dent
  CHECK(probe_final < 0.90 * probe_initial);
  CHECK(probe_final > 0.60 * probe_initial);
  CHECK(value_of(report, "phi_per_photon_rad") > 0.0);
}
