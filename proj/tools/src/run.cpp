#include <chrono>
#include <fstream>
#include <random>
#include <system_error>

#include "json.hpp"

#include "kwlab/error.hpp"
#include "kwlab/experiments.hpp"
#include "kwlab/parallel.hpp"

namespace kwlab::cli {
namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error("write failed: " + p.string());
}

std::string staging_suffix() {
  std::random_device rd;
  return std::to_string(rd()) + std::to_string(rd());
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NumericalError*>(&e)) return kNumericalError;
  if (dynamic_cast<const ResourceLimit*>(&e)) return kResourceLimit;
  return kConfigError;
}

RunResult run(const ExperimentConfig& cfg) {
  RunResult res;
  fs::path staging;
  std::error_code ec;
  try {
    const std::string id = run_id(cfg);
    const fs::path out = cfg.out_dir;
    fs::create_directories(out);
    staging = out / (".staging-" + cfg.command + "-" + id + "-" + staging_suffix());
    fs::create_directory(staging);

    const auto t0 = std::chrono::steady_clock::now();
    const std::string report = execute(cfg, staging);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_text(staging / "report.json", report);
    write_text(staging / "config.txt", config_echo(cfg));
    nlohmann::ordered_json manifest;
    manifest["run_id"] = id;
    manifest["command"] = cfg.command;
    manifest["seed"] = cfg.seed;
    manifest["threads"] = thread_count();
    manifest["kwlab_version"] = KWLAB_VERSION;
    manifest["compiler"] = __VERSION__;
    manifest["wall_time_s"] = wall;
    write_text(staging / "manifest.json", manifest.dump(2) + "\n");

    res.run_dir = out / (cfg.command + "-" + id);
    fs::remove_all(res.run_dir);
    fs::rename(staging, res.run_dir);
    res.exit_code = kOk;
  } catch (const std::exception& e) {
    if (!staging.empty()) fs::remove_all(staging, ec);
    res.exit_code = exit_code_for(e);
    res.run_dir.clear();
    res.message = e.what();
  }
  return res;
}

}  // namespace kwlab::cli
