// svccoupling: structural coupling reports for microservice dependency graphs.
//
//   svccoupling analyze <project>   metrics, matrices, summary and graph for one project
//   svccoupling corpus <root>       one summary row per project subdirectory
//   svccoupling example             analyze the built-in five-service system
//   svccoupling render <project>    graph.dot / graph.svg only

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "svccoupling/cli.hpp"

namespace {

using svccoupling::cli::CliConfig;
using svccoupling::cli::Command;

struct RawOptions {
  std::string out = "out";
  std::string emit = "csv,dot";
  std::string format = "auto";
  std::string input;
};

void add_common_options(CLI::App* command, RawOptions& raw, CliConfig& config) {
  command->add_option("--out", raw.out, "Output directory")->capture_default_str();
  command->add_option("--emit", raw.emit, "Comma separated subset of csv,dot,svg")
      ->capture_default_str();
  command->add_option("--decimal-places", config.render.decimal_places,
                      "Digits after the decimal point in reports")
      ->capture_default_str();
  command->add_option("--hub-fraction", config.render.hub_fraction,
                      "Minimum share of the maximum degree for a hub")
      ->capture_default_str();
  command->add_option("--hub-min-degree", config.render.hub_min_degree,
                      "Minimum absolute degree for a hub")
      ->capture_default_str();
  command->add_option("--jobs", config.jobs, "Worker threads (0 = runtime default)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural coupling metrics for microservice dependency graphs"};
  app.require_subcommand(1);

  CliConfig config;
  RawOptions raw;

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze one project");
  CLI::App* corpus = app.add_subcommand("corpus", "Analyze every project below a root directory");
  CLI::App* example = app.add_subcommand("example", "Analyze the built-in example system");
  CLI::App* render = app.add_subcommand("render", "Render the coupling graph only");

  for (CLI::App* command : {analyze, corpus, example, render}) {
    add_common_options(command, raw, config);
  }
  for (CLI::App* command : {analyze, render}) {
    command->add_option("input", raw.input, "Project descriptor, edge CSV or compose file")
        ->required();
    command->add_option("--format", raw.format, "auto, descriptor, edges or compose")
        ->capture_default_str();
  }
  corpus->add_option("root", raw.input, "Directory of project subdirectories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : svccoupling::cli::kExitInvalidInput;
  }

  if (analyze->parsed()) config.command = Command::kAnalyze;
  if (corpus->parsed()) config.command = Command::kCorpus;
  if (example->parsed()) config.command = Command::kExample;
  if (render->parsed()) config.command = Command::kRender;

  config.input = raw.input;
  config.out_dir = raw.out;
  try {
    config.emit = svccoupling::cli::parse_emit_set(raw.emit);
  } catch (const svccoupling::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return svccoupling::cli::kExitInvalidInput;
  }
  if (auto format = svccoupling::parse_input_format(raw.format)) {
    config.format = *format;
  } else {
    std::cerr << "error: unknown format '" << raw.format << "'\n";
    return svccoupling::cli::kExitInvalidInput;
  }

  return svccoupling::cli::run(config, std::cout, std::cerr);
}
