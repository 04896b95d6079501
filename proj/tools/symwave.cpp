#include "symwave/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace symwave;

int main(int argc, char** argv) {
  CLI::App app{"symwave: symmetric multivariate wavelet frame constructions"};
  app.require_subcommand(1, 1);

  std::string config, backend, out, utility, pipeline;
  std::uint64_t seed = 0;
  std::vector<std::string> lifting;
  bool automatic = false;

  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " stage");
    sub->add_option("--config", config, "project config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--backend", backend, "coefficient backend")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--L", lifting, "lifting polynomial p:i:file");
    sub->add_flag("--auto", automatic, "seeded lifting family");
    sub->add_option("--utility-dual", utility, "utility dual mode")->check(CLI::IsMember({"auto", "reduced", "file"}));
    sub->add_option("--pipeline", pipeline, "stage chain")->check(CLI::IsMember({"framelike", "lift", "frame"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }
  std::string command = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();

  try {
    ProjectConfig cfg = load_config(config);
    if (!backend.empty()) cfg.backend = backend;
    if (!out.empty()) cfg.output = out;
    if (sub->count("--seed")) cfg.seed = seed;
    if (!utility.empty()) {
      cfg.utility_mode = utility;
      if (utility == "file" && cfg.utility_file.empty())
        throw Error(ErrorKind::ConfigError, "--utility-dual file needs utility_dual.file in the config");
    }
    if (!pipeline.empty()) cfg.pipeline = pipeline;
    if (!lifting.empty()) {
      cfg.lifting.files.clear();
      for (const auto& arg : lifting) cfg.lifting.files.push_back(parse_lifting_arg(arg));
    }
    if (automatic) cfg.lifting.automatic = true;
    RunResult r = run_command(command, cfg);
    if (r.report.contains("error")) {
      const Json& e = r.report["error"];
      std::cerr << "symwave: " << e["stage"].get<std::string>() << ": " << e["kind"].get<std::string>() << ": "
                << e["message"].get<std::string>() << "\n";
    } else if (r.exit_code != kExitOk) {
      std::cerr << "symwave: verification failed; see " << (cfg.output / "report.json").string() << "\n";
    }
    return r.exit_code;
  } catch (const Error& e) {
    std::cerr << "symwave: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}
