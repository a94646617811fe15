// Command-line front end: feasibility estimates, mode overlaps, band
// dispersion tables, envelope propagation, and parameter sweeps. Every
// subcommand reads one flat key = value config and writes its results under
// --out; reruns with the same inputs produce byte-identical files.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "kerrpcw/band.hpp"
#include "kerrpcw/config.hpp"
#include "kerrpcw/constants.hpp"
#include "kerrpcw/feasibility.hpp"
#include "kerrpcw/mode_field.hpp"
#include "kerrpcw/solver.hpp"
#include "kerrpcw/units.hpp"

namespace fs = std::filesystem;
using namespace kerrpcw;
using constants::c;
using constants::pi;

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path.string());
  out << content;
}

fs::path prepare_out_dir(const std::string& out_dir) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  return dir;
}

MaterialParams material_from(const Config& cfg) {
  return MaterialParams::from_common_units(
      cfg.get_string("material.name", "custom"), cfg.get_double("material.n"),
      cfg.get_double("material.n2_cm2_per_W"),
      cfg.get_double("material.alpha1_per_cm", 0.0),
      cfg.get_double("material.alpha2_cm_per_GW", 0.0));
}

StateKind state_kind_from(const Config& cfg, const std::string& key,
                          StateKind fallback) {
  const std::string s = cfg.get_string(key, fallback == StateKind::number ? "number"
                                                                          : "coherent");
  if (s == "number") return StateKind::number;
  if (s == "coherent") return StateKind::coherent;
  throw ConfigError(cfg.origin() + ": " + key + " must be 'coherent' or 'number', got '" +
                    s + "'");
}

// ---------------------------------------------------------------- estimate --

struct EstimateResult {
  FeasibilityReport report;
  double omega_p = 0.0;
};

double loss_intensity_from(const Config& cfg) {
  if (cfg.has("loss.intensity_W_per_m2")) return cfg.get_double("loss.intensity_W_per_m2");
  if (cfg.has("loss.pulse_energy_uJ")) {
    const double energy = cfg.get_double("loss.pulse_energy_uJ") * 1e-6;
    const double tau = cfg.get_double("loss.tau_ns") * 1e-9;
    const double area = cfg.get_double("loss.area_nm2") * 1e-18;
    if (!(tau > 0.0) || !(area > 0.0)) {
      throw ConfigError(cfg.origin() + ": loss.tau_ns and loss.area_nm2 must be positive");
    }
    return energy / (tau * area);
  }
  return 0.0;
}

EstimateResult compute_estimate(const Config& cfg) {
  // resolve the scenario before touching material keys so a bad or missing
  // scenario is the first thing reported
  const std::string scenario = cfg.get_string("scenario");
  if (scenario != "bulk" && scenario != "pcw") {
    throw ConfigError(cfg.origin() + ": scenario must be 'bulk' or 'pcw', got '" +
                      scenario + "'");
  }
  const auto material = material_from(cfg);

  double phi_photon = 0.0;   // per signal photon, before any enhancement
  double omega_p = 0.0;
  double tau_s = 0.0;
  double v_p_loss = c;

  if (scenario == "bulk") {
    const BulkScenario bulk(material, cfg.get_double("bulk.lambda_s_nm") * 1e-9,
                            cfg.get_double("bulk.lambda_p_nm") * 1e-9,
                            cfg.get_double("bulk.tau_s_ns") * 1e-9,
                            cfg.get_double("bulk.area_um2") * 1e-12,
                            cfg.get_double("bulk.length_um") * 1e-6);
    phi_photon = bulk_phase_per_photon(bulk);
    omega_p = 2.0 * pi * c / bulk.lambda_p;
    tau_s = bulk.tau_s;
  } else if (scenario == "pcw") {
    double gamma_sp = 0.0;
    if (cfg.has("pcw.gamma_sp_per_m2")) {
      gamma_sp = cfg.get_double("pcw.gamma_sp_per_m2");
    } else {
      const double a = cfg.get_double("pcw.a_nm") * 1e-9;
      gamma_sp = cfg.get_double("pcw.gamma_sp_per_a2") / (a * a);
    }
    double v_s, v_p;
    if (cfg.has("pcw.v_over_c")) {
      v_s = v_p = cfg.get_double("pcw.v_over_c") * c;
    } else {
      v_s = cfg.get_double("pcw.v_s_over_c") * c;
      v_p = cfg.get_double("pcw.v_p_over_c") * c;
    }
    const PcwScenario pcw(material, gamma_sp, v_s, v_p,
                          cfg.get_double("pcw.length_um") * 1e-6,
                          cfg.get_double("pcw.tau_s_ps") * 1e-12,
                          2.0 * pi * c / (cfg.get_double("pcw.lambda_s_nm") * 1e-9),
                          2.0 * pi * c / (cfg.get_double("pcw.lambda_p_nm") * 1e-9));
    phi_photon = phase_ideal(pcw);
    omega_p = pcw.omega_p;
    tau_s = pcw.tau_s;
    v_p_loss = pcw.v_p;
  }

  double factor = 1.0;
  if (cfg.has("enhancement.v_over_c")) {
    factor = enhancement(cfg.get_double("enhancement.v_over_c") * c,
                         cfg.get_double("enhancement.area_bulk_um2") * 1e-12,
                         cfg.get_double("enhancement.area_pcw_nm2") * 1e-18);
    if (scenario == "bulk") v_p_loss = cfg.get_double("enhancement.v_over_c") * c;
  }
  const double phi_used = phi_photon * factor;

  const double n_s = cfg.get_double("signal.n_photons", 1.0);
  const auto signal_kind = state_kind_from(cfg, "signal.state", StateKind::number);

  const std::string sizing = cfg.get_string("probe.sizing", "number_snr1");
  ProbeRequirement probe;
  if (sizing == "number_snr1") {
    probe = probe_requirement(phi_used, omega_p);
  } else if (sizing == "coherent_relaxed") {
    probe = probe_requirement(phi_used, n_s, cfg.get_double("probe.beta"), omega_p);
  } else {
    throw ConfigError(cfg.origin() +
                      ": probe.sizing must be 'number_snr1' or 'coherent_relaxed', got '" +
                      sizing + "'");
  }

  FeasibilityReport report;
  report.phi_per_photon = phi_used;
  report.required_np = probe.n_p;
  report.required_energy = probe.energy;
  report.enhancement = factor;
  report.loss = loss_limits(material, v_p_loss, loss_intensity_from(cfg));

  const PulseSpec signal(CarrierSpec::from_angular_frequency(omega_p), tau_s,
                         n_s, signal_kind);
  const PulseSpec probe_pulse(CarrierSpec::from_angular_frequency(omega_p), tau_s,
                              probe.n_p);
  report.noise = observed_variance(signal, probe_pulse, phi_used);

  return {report, omega_p};
}

void cmd_estimate(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::load(config_path);
  const auto result = compute_estimate(cfg);
  const fs::path dir = prepare_out_dir(out_dir);

  std::ostringstream text;
  write_report_text(text, result.report);
  write_text_file(dir / "report.txt", text.str());

  std::ostringstream csv;
  write_report_csv_header(csv);
  write_report_csv_row(csv, result.report);
  write_text_file(dir / "report.csv", csv.str());

  std::cout << text.str();
}

// ----------------------------------------------------------------- overlap --

void cmd_overlap(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::load(config_path);

  std::vector<ModeFile> files;
  for (int i = 1;; ++i) {
    const std::string key = "mode_file_" + std::to_string(i);
    if (!cfg.has(key)) break;
    files.push_back(load_mode_field(cfg.resolve_path(key)));
  }
  if (files.empty()) {
    throw ConfigError(cfg.origin() + ": no mode_file_1 entry; nothing to overlap");
  }
  for (size_t i = 1; i < files.size(); ++i) {
    if (!files[i].grid.same_layout(files[0].grid)) {
      throw std::invalid_argument("mode_file_" + std::to_string(i + 1) +
                                  " is sampled on a different grid than mode_file_1; "
                                  "overlaps need one shared voxelization");
    }
  }

  std::vector<BlochModeField> modes;
  modes.reserve(files.size());
  for (const auto& f : files) modes.push_back(f.mode);
  const OverlapTable table = compute_overlap_table(modes, files[0].grid);

  std::ostringstream csv;
  csv.precision(std::numeric_limits<double>::max_digits10);
  csv << "i, j, band_i, band_j, gamma_per_m2, gamma_a2, volume_m3, volume_a3\n";
  for (size_t i = 0; i < table.n; ++i) {
    for (size_t j = 0; j < table.n; ++j) {
      csv << i + 1 << ", " << j + 1 << ", " << modes[i].band_index() << ", "
          << modes[j].band_index() << ", " << table.gamma[i * table.n + j] << ", "
          << table.gamma_a2[i * table.n + j] << ", "
          << table.mode_volume[i * table.n + j] << ", "
          << table.volume_a3[i * table.n + j] << "\n";
    }
  }
  const fs::path dir = prepare_out_dir(out_dir);
  write_text_file(dir / "overlap_table.csv", csv.str());
  std::cout << "wrote " << (dir / "overlap_table.csv").string() << " (" << table.n << "x"
            << table.n << " table)\n";
}

// -------------------------------------------------------------- dispersion --

void cmd_dispersion(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::load(config_path);
  const BandData band = load_band(cfg.resolve_path("band_file"));

  std::vector<double> ks;
  if (cfg.has("k_list")) {
    ks = cfg.get_double_list("k_list");
  } else {
    const double k_min = cfg.get_double("k_min");
    const double k_max = cfg.get_double("k_max");
    const long long count = cfg.get_int("k_count");
    if (count < 2 || !(k_max > k_min)) {
      throw ConfigError(cfg.origin() + ": need k_max > k_min and k_count >= 2");
    }
    for (long long i = 0; i < count; ++i) {
      ks.push_back(k_min + (k_max - k_min) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
    }
  }

  std::ostringstream csv;
  csv.precision(std::numeric_limits<double>::max_digits10);
  csv << "k_pi_a, omega_rad_per_s, v_g_m_per_s, dvg_dk_m2_per_s, slowdown, status\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double k : ks) {
    if (k < band.k_min_pi_a() || k > band.k_max_pi_a()) {
      csv << k << ", " << nan << ", " << nan << ", " << nan << ", " << nan
          << ", out_of_range\n";
      continue;
    }
    const auto p = band.evaluate(k);
    try {
      const double s = slowdown(p);
      csv << k << ", " << p.omega << ", " << p.v_g << ", " << p.dvg_dk << ", " << s
          << ", ok\n";
    } catch (const BandEdgeError&) {
      csv << k << ", " << p.omega << ", " << p.v_g << ", " << p.dvg_dk << ", "
          << std::numeric_limits<double>::infinity() << ", band_edge\n";
    }
  }
  const fs::path dir = prepare_out_dir(out_dir);
  write_text_file(dir / "dispersion.csv", csv.str());
  std::cout << "wrote " << (dir / "dispersion.csv").string() << " (" << ks.size()
            << " rows)\n";
}

// --------------------------------------------------------------- propagate --

struct PulseConfig {
  PulseSpec spec;
  DispersionPoint disp;
  EnvelopeShape shape;
};

PulseConfig pulse_from(const Config& cfg, const std::string& prefix) {
  const double lambda = cfg.get_double(prefix + ".lambda_nm") * 1e-9;
  const double tau = cfg.get_double(prefix + ".tau_ps") * 1e-12;
  const double n_photons = cfg.get_double(prefix + ".n_photons");
  const auto kind = state_kind_from(cfg, prefix + ".state", StateKind::coherent);

  DispersionPoint disp{};
  if (cfg.has(prefix + ".band_file")) {
    const BandData band = load_band(cfg.resolve_path(prefix + ".band_file"));
    disp = band.evaluate(cfg.get_double(prefix + ".k_pi_a"));
  } else {
    disp.v_g = cfg.get_double(prefix + ".v_over_c") * c;
    disp.omega = 2.0 * pi * c / lambda;
  }
  disp.dvg_dk = cfg.get_double(prefix + ".dvg_dk_m2_per_s", disp.dvg_dk);

  const PulseSpec spec(CarrierSpec(lambda), tau, n_photons, kind);
  const double center = cfg.get_double(prefix + ".center_um") * 1e-6;
  const double width = equivalent_gaussian_width(disp.v_g, tau);
  if (!(width > 0.0) && n_photons > 0.0) {
    throw ConfigError(cfg.origin() + ": " + prefix +
                      " has photons but zero group velocity gives it zero spatial width");
  }
  return {spec, disp, gaussian_shape(center, width)};
}

OverlapTable gamma_from(const Config& cfg) {
  if (cfg.has("gamma.mode_file_s")) {
    const auto fs_ = load_mode_field(cfg.resolve_path("gamma.mode_file_s"));
    const auto fp = load_mode_field(cfg.resolve_path("gamma.mode_file_p"));
    if (!fp.grid.same_layout(fs_.grid)) {
      throw std::invalid_argument(
          "gamma.mode_file_p is sampled on a different grid than gamma.mode_file_s");
    }
    return compute_overlap_table({fs_.mode, fp.mode}, fs_.grid);
  }
  OverlapTable t;
  t.n = 2;
  double g_ss, g_pp, g_sp;
  if (cfg.has("gamma.ss_per_m2")) {
    g_ss = cfg.get_double("gamma.ss_per_m2");
    g_pp = cfg.get_double("gamma.pp_per_m2");
    g_sp = cfg.get_double("gamma.sp_per_m2");
  } else {
    const double a = cfg.get_double("gamma.a_nm") * 1e-9;
    g_ss = cfg.get_double("gamma.ss_per_a2") / (a * a);
    g_pp = cfg.get_double("gamma.pp_per_a2") / (a * a);
    g_sp = cfg.get_double("gamma.sp_per_a2") / (a * a);
  }
  t.gamma = {g_ss, g_sp, g_sp, g_pp};
  t.mode_volume.assign(4, 0.0);
  t.gamma_a2.assign(4, 0.0);
  t.volume_a3.assign(4, 0.0);
  return t;
}

void cmd_propagate(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::load(config_path);
  const auto material = material_from(cfg);
  const fs::path dir = prepare_out_dir(out_dir);

  const std::string frame_name = cfg.get_string("grid.frame", "lab");
  Frame frame;
  if (frame_name == "lab") {
    frame = Frame::lab;
  } else if (frame_name == "comoving_probe") {
    frame = Frame::comoving_probe;
  } else {
    throw ConfigError(cfg.origin() + ": grid.frame must be 'lab' or 'comoving_probe'");
  }
  const EnvelopeGrid grid(cfg.get_double("grid.length_um") * 1e-6,
                          static_cast<size_t>(cfg.get_int("grid.n_points", 4096)), frame);

  const auto signal = pulse_from(cfg, "signal");
  const auto probe = pulse_from(cfg, "probe");
  const auto gamma = gamma_from(cfg);

  double duration;
  if (cfg.has("run.duration_ps")) {
    duration = cfg.get_double("run.duration_ps") * 1e-12;
  } else {
    const double device = cfg.get_double("run.device_length_um") * 1e-6;
    if (probe.disp.v_g == 0.0) {
      throw BandEdgeError("probe transit time undefined: probe group velocity is zero");
    }
    duration = device / std::abs(probe.disp.v_g);
  }

  SolverConfig solver;
  if (cfg.has("solver.steps")) {
    const long long steps = cfg.get_int("solver.steps");
    if (steps < 1) throw ConfigError(cfg.origin() + ": solver.steps must be >= 1");
    solver.dt = duration / static_cast<double>(steps);
  } else if (cfg.has("solver.dt_ps")) {
    solver.dt = cfg.get_double("solver.dt_ps") * 1e-12;
  } else {
    solver.dt = auto_dt(grid, signal.disp, probe.disp);
  }
  solver.include_gvd = cfg.get_bool("solver.include_gvd", false);
  solver.include_tpa = cfg.get_bool("solver.include_tpa", false);
  solver.include_linear_loss = cfg.get_bool("solver.include_linear_loss", false);
  solver.wrap_tol = cfg.get_double("solver.wrap_tol", 1e-6);
  solver.snapshot_every = static_cast<int>(cfg.get_int("solver.snapshot_every", 0));
  if (solver.snapshot_every > 0) solver.snapshot_dir = dir;

  const auto state0 = init_state(signal.spec, probe.spec, signal.shape, probe.shape, grid);
  const auto [final_state, report] =
      propagate(state0, solver, signal.disp, probe.disp, gamma, material, duration);

  std::ostringstream text;
  text.precision(std::numeric_limits<double>::max_digits10);
  text << "phi_P_rad = " << report.phi_P << "\n";
  text << "phi_S_rad = " << report.phi_S << "\n";
  text << "phi_per_photon_rad = " << report.phi_per_photon << "\n";
  text << "I_det_J = " << report.I_det << "\n";
  text << "signal_norm_initial_J = " << state0.photon_norm_signal() << "\n";
  text << "signal_norm_final_J = " << final_state.photon_norm_signal() << "\n";
  text << "probe_norm_initial_J = " << state0.photon_norm_probe() << "\n";
  text << "probe_norm_final_J = " << final_state.photon_norm_probe() << "\n";
  text << "duration_s = " << duration << "\n";
  text << "dt_s = " << solver.dt << "\n";
  write_text_file(dir / "phase_report.txt", text.str());
  std::cout << text.str();
}

// ------------------------------------------------------------------- sweep --

struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

SweepAxis axis_from(const Config& cfg, int index) {
  const std::string suffix = "_" + std::to_string(index);
  SweepAxis axis;
  axis.key = cfg.get_string("sweep.axis" + suffix);
  const double lo = cfg.get_double("sweep.min" + suffix);
  const double hi = cfg.get_double("sweep.max" + suffix);
  const long long count = cfg.get_int("sweep.count" + suffix);
  const std::string scale = cfg.get_string("sweep.scale" + suffix, "linear");
  if (count < 1) {
    throw ConfigError(cfg.origin() + ": sweep.count" + suffix +
                      " must be >= 1, got " + std::to_string(count));
  }
  if (scale == "log") {
    if (!(lo > 0.0) || !(hi > 0.0)) {
      throw ConfigError(cfg.origin() + ": log axis needs positive endpoints");
    }
    for (long long i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0
                                  : static_cast<double>(i) / static_cast<double>(count - 1);
      axis.values.push_back(lo * std::pow(hi / lo, t));
    }
  } else if (scale == "linear") {
    for (long long i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0
                                  : static_cast<double>(i) / static_cast<double>(count - 1);
      axis.values.push_back(lo + (hi - lo) * t);
    }
  } else {
    throw ConfigError(cfg.origin() + ": sweep.scale" + suffix +
                      " must be 'linear' or 'log'");
  }
  return axis;
}

void cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  const Config base = Config::load(config_path);
  const SweepAxis axis1 = axis_from(base, 1);
  std::optional<SweepAxis> axis2;
  if (base.has("sweep.axis_2")) axis2 = axis_from(base, 2);

  struct Point {
    double v1 = 0.0, v2 = 0.0;
  };
  std::vector<Point> points;
  for (double v1 : axis1.values) {
    if (axis2) {
      for (double v2 : axis2->values) points.push_back({v1, v2});
    } else {
      points.push_back({v1, 0.0});
    }
  }

  std::vector<FeasibilityReport> reports(points.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const size_t workers =
      std::min<size_t>(points.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= points.size()) return;
        try {
          Config cfg = base;
          cfg.set(axis1.key, points[i].v1);
          if (axis2) cfg.set(axis2->key, points[i].v2);
          reports[i] = compute_estimate(cfg).report;
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::ostringstream csv;
  csv.precision(std::numeric_limits<double>::max_digits10);
  csv << axis1.key;
  if (axis2) csv << ", " << axis2->key;
  csv << ", ";
  write_report_csv_header(csv);
  for (size_t i = 0; i < points.size(); ++i) {
    csv << points[i].v1;
    if (axis2) csv << ", " << points[i].v2;
    csv << ", ";
    write_report_csv_row(csv, reports[i]);
  }
  const fs::path dir = prepare_out_dir(out_dir);
  write_text_file(dir / "sweep.csv", csv.str());
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << points.size()
            << " points)\n";
}

// -------------------------------------------------------------------- main --

int run_command(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BandFileError& e) {
    std::cerr << "band file error: " << e.what() << "\n";
    return 2;
  } catch (const ModeFileError& e) {
    std::cerr << "mode file error: " << e.what() << "\n";
    return 2;
  } catch (const units::UnitError& e) {
    std::cerr << "unit error: " << e.what() << "\n";
    return 2;
  } catch (const BandEdgeError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "file error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr photonic-crystal waveguide estimator and envelope solver"};
  app.require_subcommand(1);

  struct SubArgs {
    std::string config;
    std::string out;
  };
  const auto add_common = [](CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config, "flat key = value config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "output directory (created if missing)")
        ->required();
  };

  SubArgs estimate_args, overlap_args, dispersion_args, propagate_args, sweep_args;
  auto* sub_estimate =
      app.add_subcommand("estimate", "feasibility report for one scenario");
  add_common(sub_estimate, estimate_args);
  auto* sub_overlap =
      app.add_subcommand("overlap", "pairwise mode overlaps and volumes");
  add_common(sub_overlap, overlap_args);
  auto* sub_dispersion =
      app.add_subcommand("dispersion", "tabulate band dispersion quantities");
  add_common(sub_dispersion, dispersion_args);
  auto* sub_propagate =
      app.add_subcommand("propagate", "split-step envelope propagation");
  add_common(sub_propagate, propagate_args);
  auto* sub_sweep = app.add_subcommand("sweep", "estimate over a parameter grid");
  add_common(sub_sweep, sweep_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (sub_estimate->parsed()) {
    return run_command([&] { cmd_estimate(estimate_args.config, estimate_args.out); });
  }
  if (sub_overlap->parsed()) {
    return run_command([&] { cmd_overlap(overlap_args.config, overlap_args.out); });
  }
  if (sub_dispersion->parsed()) {
    return run_command(
        [&] { cmd_dispersion(dispersion_args.config, dispersion_args.out); });
  }
  if (sub_propagate->parsed()) {
    return run_command(
        [&] { cmd_propagate(propagate_args.config, propagate_args.out); });
  }
  if (sub_sweep->parsed()) {
    return run_command([&] { cmd_sweep(sweep_args.config, sweep_args.out); });
  }
  return 2;
}
