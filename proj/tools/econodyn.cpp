#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "econodyn/scenario.hpp"

namespace sc = econodyn::scenario;

int main(int argc, char** argv) {
  CLI::App app{"econodyn: macroeconomic dynamics through integral equations"};
  app.require_subcommand(1);

  std::string config;
  long long grid = 0;
  std::string out, variants;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config, "scenario JSON file")->required();
    cmd->add_option("--grid", grid, "segment count override");
    cmd->add_option("--out", out, "output directory override");
    cmd->add_option("--variants", variants, "variants JSON file for balance-sweep");
  };
  auto* run = app.add_subcommand("run", "run a scenario");
  auto* diag = app.add_subcommand("diagnose", "health report of a balance-type scenario");
  add_common(run);
  add_common(diag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(sc::Status::usage);
  }

  const auto* cmd = run->parsed() ? run : diag;
  sc::Overrides overrides;
  if (cmd->count("--grid")) overrides.grid = grid;
  if (cmd->count("--out")) overrides.out = out;
  if (cmd->count("--variants")) overrides.variants = variants;
  return sc::execute(run->parsed() ? sc::Command::run : sc::Command::diagnose, config, overrides,
                     std::cout, std::cerr);
}
