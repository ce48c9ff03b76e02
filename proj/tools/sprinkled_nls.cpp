#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snls/commands.hpp"
#include "snls/errors.hpp"

using namespace snls;

int main(int argc, char** argv) {
  CLI::App app{"Cubic NLS with a nonlinearity concentrated on a random point set"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--override", overrides, "key=value, repeatable")->allow_extra_args(false);

  auto* sample = app.add_subcommand("sample", "sample a measure and write atoms.csv");
  auto* solve = app.add_subcommand("solve", "evolve initial data and write diagnostics");
  auto* study = app.add_subcommand("study", "run a study and write its report");
  std::string study_name;
  study->add_option("name", study_name, "eps | stability | moments | laplace")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  return run_guarded(
      [&] {
        std::map<std::string, std::string> entries;
        if (!config_path.empty()) {
          std::ifstream is(config_path);
          if (!is) throw IoError("cannot open " + config_path);
          entries = parse_key_values(is);
        }
        for (const auto& o : overrides) {
          auto [k, v] = parse_override(o);
          entries[k] = v;
        }
        if (*seed_opt) entries["seed"] = std::to_string(seed);
        if (!out_dir.empty()) entries["output.dir"] = out_dir;
        const RunConfig config = make_config(entries);

        if (*sample) return cmd_sample(config);
        if (*solve) return cmd_solve(config);
        const int code = cmd_study(config, parse_study(study_name));
        if (code == kExitStudyFailed) std::cerr << "study " << study_name << ": a pass flag failed\n";
        return code;
      },
      std::cerr);
}
