// Command-line front end: simulate | converge | sample-noise | validate.
// Exit codes: 0 success, 1 validation/property failure, 2 runtime blow-up,
// 3 I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scgl/config.hpp"
#include "scgl/convergence.hpp"
#include "scgl/integrators.hpp"
#include "scgl/io.hpp"
#include "scgl/noise.hpp"
#include "scgl/parallel.hpp"
#include "scgl/selfcheck.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBlowup = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  int threads = 0;  // 0 = hardware concurrency
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path,
                  "key=value config file or a previously written run manifest");
  cmd->add_option("--set", opt.overrides, "config override of the form key=value")
      ->take_all();
  cmd->add_option("--seed", opt.seed, "override run.seed");
  cmd->add_option("--threads", opt.threads, "worker threads (default: hardware parallelism)");
}

scgl::KeyValueMap effective_key_values(const CommonOptions& opt) {
  scgl::KeyValueMap kv =
      opt.config_path.empty() ? scgl::default_key_values() : scgl::load_key_values(opt.config_path);
  if (const char* env_seed = std::getenv("SCGLE_SEED"); env_seed != nullptr)
    kv["run.seed"] = env_seed;
  scgl::apply_overrides(kv, opt.overrides);
  if (opt.seed) kv["run.seed"] = std::to_string(*opt.seed);
  return kv;
}

std::string canonical_text(const scgl::KeyValueMap& kv) {
  std::string text;
  for (const auto& [k, v] : kv) {
    text += k;
    text += '=';
    text += v;
    text += '\n';
  }
  return text;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw scgl::IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw scgl::IoError("failed writing '" + path.string() + "'");
}

void write_manifest(const fs::path& path, const std::string& subcommand,
                    const scgl::KeyValueMap& kv, const std::vector<std::string>& outputs) {
  ordered_json j;
  j["tool"] = "scgl";
  j["subcommand"] = subcommand;
  j["created_utc"] = utc_now();
  j["content_fingerprint"] = scgl::content_fingerprint(canonical_text(kv));
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : kv) cfg[k] = v;
  j["config"] = cfg;
  j["outputs"] = outputs;
  write_text_file(path, j.dump(2) + "\n");
}

void print_error(int code, const std::string& message) {
  ordered_json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

int cmd_simulate(const CommonOptions& opt, const std::string& out_dir) {
  scgl::KeyValueMap kv = effective_key_values(opt);
  scgl::RunConfig cfg = scgl::parse_run_config(kv);
  kv = scgl::to_key_values(cfg);  // canonical form for the manifest

  fs::create_directories(out_dir);
  scgl::RngStream stream(cfg.seed, 0);
  scgl::FreshNoiseProvider noise(stream, cfg.N, cfg.dt, cfg.noise);
  scgl::Trajectory traj = scgl::run(cfg, noise);

  std::vector<std::string> outputs;
  for (const scgl::Snapshot& snap : traj.snapshots) {
    char name[32];
    std::snprintf(name, sizeof name, "state_%08ld.scgl", snap.step_index);
    scgl::write_field_file((fs::path(out_dir) / name).string(), snap.field);
    outputs.emplace_back(name);
  }
  {
    std::ofstream out(fs::path(out_dir) / "diagnostics.csv", std::ios::binary);
    if (!out) throw scgl::IoError("cannot write diagnostics.csv");
    scgl::write_diagnostics_csv(out, traj);
    outputs.emplace_back("diagnostics.csv");
  }
  write_manifest(fs::path(out_dir) / "manifest.json", "simulate", kv, outputs);
  std::cout << "simulate: " << traj.snapshots.size() << " snapshots, " << cfg.steps()
            << " steps -> " << out_dir << "\n";
  return kExitOk;
}

int cmd_converge(const CommonOptions& opt, const std::string& report_path) {
  scgl::KeyValueMap kv = effective_key_values(opt);
  scgl::RunConfig cfg = scgl::parse_run_config(kv);
  scgl::LadderSpec ladder = scgl::parse_ladder(kv);

  scgl::KeyValueMap canonical = scgl::to_key_values(cfg);
  scgl::ladder_to_key_values(ladder, canonical);

  const scgl::ConvergenceReport report =
      scgl::run_ladder(ladder, cfg, cfg.method, opt.threads);

  const fs::path csv_path(report_path);
  if (csv_path.has_parent_path()) fs::create_directories(csv_path.parent_path());
  fs::path summary_path = csv_path;
  summary_path.replace_extension(".summary.json");
  fs::path plot_path = csv_path;
  plot_path.replace_extension(".gp");
  fs::path manifest_path = csv_path;
  manifest_path.replace_extension(".manifest.json");

  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw scgl::IoError("cannot write '" + csv_path.string() + "'");
    scgl::write_report_csv(out, report);
  }
  write_text_file(summary_path, scgl::report_summary_json(report));
  write_text_file(plot_path, scgl::report_gnuplot_script(csv_path.filename().string()));
  write_manifest(manifest_path, "converge", canonical,
                 {csv_path.filename().string(), summary_path.filename().string(),
                  plot_path.filename().string()});

  std::cout << "converge: method=" << scgl::method_name(report.method)
            << " setting=" << report.setting_label << " slope(dt)=" << report.vs_dt.slope
            << " -> " << csv_path.string() << "\n";
  for (const scgl::LevelResult& lr : report.levels)
    std::cout << "  level " << lr.level << ": N=" << lr.N << " dt=" << scgl::format_double(lr.dt)
              << " rmse=" << scgl::format_double(lr.rmse)
              << " stderr=" << scgl::format_double(lr.stderr_rmse) << " failures=" << lr.failures
              << (lr.valid ? "" : " [invalid]") << (lr.under_sampled ? " [under-sampled]" : "")
              << "\n";
  return kExitOk;
}

int cmd_sample_noise(const CommonOptions& opt, const std::string& out_path, int levels, long steps,
                     const std::string& type) {
  scgl::KeyValueMap kv = effective_key_values(opt);
  scgl::RunConfig cfg = scgl::parse_run_config(kv);
  kv = scgl::to_key_values(cfg);

  if (type != "conv" && type != "brownian")
    throw scgl::ValidationError("--type must be conv or brownian");
  const auto kind = type == "brownian" ? scgl::NoiseHierarchy::Kind::Brownian
                                       : scgl::NoiseHierarchy::Kind::Conv;
  if (levels < 1) throw scgl::ValidationError("--levels must be >= 1");
  if (steps < 0) steps = cfg.steps();

  scgl::NoiseHierarchy hierarchy(kind, cfg.N, cfg.dt, levels, cfg.noise, cfg.model,
                                 scgl::RngStream(cfg.seed, 0));

  const fs::path path(out_path);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw scgl::IoError("cannot write '" + path.string() + "'");
  out << "level,step,k,re,im\n";

  auto emit = [&out](int level, long step, long k, scgl::Complex v) {
    out << level << ',' << step << ',' << k << ',' << scgl::format_double(v.real()) << ','
        << scgl::format_double(v.imag()) << '\n';
  };

  for (long m = 0; m < steps; ++m) {
    hierarchy.advance();
    for (int l = 0; l < hierarchy.levels(); ++l) {
      long block = 1;
      for (int i = 0; i < l; ++i) block *= 4;
      if (kind == scgl::NoiseHierarchy::Kind::Conv) {
        auto incs = hierarchy.conv_block(l);
        for (long i = 0; i < block; ++i)
          for (long k = scgl::mode_min(incs[i].N); k <= scgl::mode_max(incs[i].N); ++k)
            emit(l, m * block + i, k, incs[i].mode(k));
      } else {
        auto incs = hierarchy.brownian_block(l);
        for (long i = 0; i < block; ++i)
          for (long k = scgl::mode_min(incs[i].N); k <= scgl::mode_max(incs[i].N); ++k)
            emit(l, m * block + i, k, incs[i].mode(k));
      }
    }
  }
  out.close();

  fs::path manifest_path = path;
  manifest_path.replace_extension(".manifest.json");
  write_manifest(manifest_path, "sample-noise", kv, {path.filename().string()});
  std::cout << "sample-noise: " << steps << " coarse steps, " << levels << " levels -> "
            << path.string() << "\n";
  return kExitOk;
}

int cmd_validate(const CommonOptions& opt) {
  scgl::KeyValueMap kv = effective_key_values(opt);
  scgl::RunConfig cfg = scgl::parse_run_config(kv);
  const std::vector<scgl::CheckResult> results = scgl::run_selfcheck(cfg);
  bool all_pass = true;
  for (const scgl::CheckResult& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral splitting solver for the stochastic complex Ginzburg-Landau equation"};
  app.require_subcommand(1);

  CommonOptions sim_opt, conv_opt, noise_opt, val_opt;
  std::string sim_out = "out";
  std::string report_out = "out/report.csv";
  std::string noise_out = "out/noise.csv";
  std::string sim_method, conv_method;
  int record_every = 0;
  int noise_levels = 2;
  long noise_steps = -1;
  std::string noise_type = "conv";
  int base_n = 0, levels = 0, samples = 0;

  CLI::App* simulate = app.add_subcommand("simulate", "run one trajectory and record snapshots");
  add_common(simulate, sim_opt);
  simulate->add_option("--method", sim_method, "integrator: esm, expsm, or tam");
  simulate->add_option("--record-every", record_every, "snapshot interval in steps");
  simulate->add_option("--out", sim_out, "output directory");

  CLI::App* converge = app.add_subcommand("converge", "coupled-resolution RMSE ladder");
  add_common(converge, conv_opt);
  converge->add_option("--method", conv_method, "integrator: esm, expsm, or tam");
  converge->add_option("--base-n", base_n, "coarsest resolution of the ladder");
  converge->add_option("--levels", levels, "number of ladder levels");
  converge->add_option("--samples", samples, "Monte-Carlo samples per level");
  converge->add_option("--out", report_out, "report CSV path");

  CLI::App* sample_noise =
      app.add_subcommand("sample-noise", "emit refinement-coupled increments as CSV");
  add_common(sample_noise, noise_opt);
  sample_noise->add_option("--levels", noise_levels, "hierarchy depth");
  sample_noise->add_option("--steps", noise_steps, "coarse steps (default: T/dt)");
  sample_noise->add_option("--type", noise_type, "increment type: conv or brownian");
  sample_noise->add_option("--out", noise_out, "output CSV path");

  CLI::App* validate = app.add_subcommand("validate", "run the fast property suite");
  add_common(validate, val_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    print_error(kExitValidation, e.what());
    return kExitValidation;
  }

  try {
    if (simulate->parsed()) {
      if (!sim_method.empty()) sim_opt.overrides.push_back("run.method=" + sim_method);
      if (record_every > 0)
        sim_opt.overrides.push_back("run.record_every=" + std::to_string(record_every));
      return cmd_simulate(sim_opt, sim_out);
    }
    if (converge->parsed()) {
      if (!conv_method.empty()) conv_opt.overrides.push_back("run.method=" + conv_method);
      if (base_n > 0) conv_opt.overrides.push_back("ladder.base_n=" + std::to_string(base_n));
      if (levels > 0) conv_opt.overrides.push_back("ladder.levels=" + std::to_string(levels));
      if (samples > 0) conv_opt.overrides.push_back("ladder.samples=" + std::to_string(samples));
      return cmd_converge(conv_opt, report_out);
    }
    if (sample_noise->parsed())
      return cmd_sample_noise(noise_opt, noise_out, noise_levels, noise_steps, noise_type);
    if (validate->parsed()) return cmd_validate(val_opt);
  } catch (const scgl::DiagnosticBlowup& e) {
    print_error(kExitBlowup, e.what());
    return kExitBlowup;
  } catch (const scgl::IoError& e) {
    print_error(kExitIo, e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    print_error(kExitIo, e.what());
    return kExitIo;
  } catch (const scgl::Error& e) {
    print_error(kExitValidation, e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    print_error(kExitValidation, e.what());
    return kExitValidation;
  }
  return kExitValidation;
}
