#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "thopf/error.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("thopf");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("THOPF_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

} // namespace

int main(int argc, char** argv) {
  using namespace thopf;
  using namespace thopf::cli;
  setup_logging();

  CLI::App app{"Turing-Hopf analysis of the delayed diffusive Holling-Tanner model"};
  app.require_subcommand(1);

  std::string config_path;
  CommandOptions opts;
  double alpha1 = 0.0, alpha2 = 0.0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", opts.out_dir, "output directory (overrides output.dir)");
    sub->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", opts.format, "json or csv (default: output.formats)")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto* analyze = app.add_subcommand("analyze", "Turing/Hopf/BT/Turing-Hopf data");
  auto* normalform = app.add_subcommand("normalform", "normal form and planar system");
  auto* classify = app.add_subcommand("classify", "region of (alpha1, alpha2)");
  auto* simulate = app.add_subcommand("simulate", "delayed reaction-diffusion run");
  auto* sweep = app.add_subcommand("sweep", "(r, tau) grid and critical curves");
  for (auto* sub : {analyze, normalform, classify, simulate, sweep}) common(sub);
  auto* a1 = classify->add_option("--alpha1", alpha1, "r - r*");
  auto* a2 = classify->add_option("--alpha2", alpha2, "tau - tau*");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    opts.config = load_config(config_path);
    if (opts.out_dir.empty()) opts.out_dir = opts.config.output.dir;
    if (*a1) opts.alpha1 = alpha1;
    if (*a2) opts.alpha2 = alpha2;

    if (simulate->parsed()) return cmd_simulate(opts);
    if (sweep->parsed()) return cmd_sweep(opts);

    std::vector<std::string> formats{opts.format};
    if (app.get_subcommands().front()->count("--format") == 0) formats = opts.config.output.formats;
    int code = exit_ok;
    for (const std::string& f : formats) {
      opts.format = f;
      if (analyze->parsed()) code = std::max(code, cmd_analyze(opts));
      if (normalform->parsed()) code = std::max(code, cmd_normalform(opts));
      if (classify->parsed()) code = std::max(code, cmd_classify(opts));
    }
    return code;
  } catch (const Error& e) {
    spdlog::error("{}: {}", to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return exit_runtime;
  }
}
