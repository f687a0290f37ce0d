#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "kwlab/error.hpp"
#include "kwlab/experiments.hpp"
#include "kwlab/parallel.hpp"

int main(int argc, char** argv) {
  namespace cli = kwlab::cli;
  CLI::App app{"kwlab: Kawahara solver, modified energies and restriction-norm experiments"};
  std::string command, config, out = "runs";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(cli::commands()));
  app.add_option("--config", config, "key=value config file");
  app.add_option("--out", out, "Output directory");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", seed, "Master seed, overrides the config");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  cli::ExperimentConfig cfg;
  try {
    if (config.empty()) {
      cfg = cli::parse_config_text("", command);
    } else {
      std::ifstream in(config);
      if (!in) throw kwlab::ConfigError("cannot open config '" + config + "'");
      cfg = cli::parse_config(in, command);
    }
    if (seed) cfg.seed = *seed;
    cfg.out_dir = out;
    cfg.threads = threads;
    kwlab::set_thread_count(threads);
  } catch (const std::exception& e) {
    std::cerr << "kwlab: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }

  const auto res = cli::run(cfg);
  if (res.exit_code != cli::kOk) {
    std::cerr << "kwlab: " << res.message << '\n';
    return res.exit_code;
  }
  std::cout << res.run_dir.string() << '\n';
  return 0;
}
