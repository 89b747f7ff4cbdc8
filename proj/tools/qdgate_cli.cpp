#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qdgate/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic two-qubit phase gate simulator for spin qubits in coupled quantum dots"};
  qdgate::CliOptions opts;
  std::string output, command;
  const unsigned hw = std::thread::hardware_concurrency();
  opts.threads = hw == 0 ? 1 : static_cast<int>(hw);
  app.add_option("--config", opts.config_path, "Run configuration (key = value)")->required();
  app.add_option("--output", output, "Output file (overrides output_path)");
  app.add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--command", command, "mixing|table|spectrum|gate|populations|optimize|lz (overrides config)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qdgate::kExitConfigError;
  }
  if (!output.empty()) opts.output = output;
  if (!command.empty()) opts.command = command;
  return qdgate::run_cli(opts, std::cout, std::cerr);
}
