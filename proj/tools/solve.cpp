// solve: command-line front end.
//   solve run <config>
//   solve continuation <config>
//   solve mms <case> <config>
//   solve diagnose <dir>
#include <iostream>

#include <CLI11.hpp>

#include "nlc/io/commands.hpp"
#include "nlc/io/mms.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Galerkin solver for heat-conducting compressible nematic flow"};
  app.require_subcommand(1);
  std::string config, dir, mms_case;

  auto* run = app.add_subcommand("run", "run one simulation");
  run->add_option("config", config, "configuration file")->required();
  auto* cont = app.add_subcommand("continuation", "run a continuation family");
  cont->add_option("config", config, "configuration file")->required();
  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  mms->add_option("case", mms_case, "manufactured case")->required()->check(CLI::IsMember(nlc::io::mms_case_names()));
  mms->add_option("config", config, "configuration file")->required();
  auto* diag = app.add_subcommand("diagnose", "replay stored snapshots through the diagnostics");
  diag->add_option("dir", dir, "run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nlc::io::kExitConfig;
  }

  if (*run) return nlc::io::cmd_run(config, std::cout, std::cerr);
  if (*cont) return nlc::io::cmd_continuation(config, std::cout, std::cerr);
  if (*mms) return nlc::io::cmd_mms(mms_case, config, std::cout, std::cerr);
  return nlc::io::cmd_diagnose(dir, std::cout, std::cerr);
}
