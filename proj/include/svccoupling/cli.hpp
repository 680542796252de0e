#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>

#include "svccoupling/graph.hpp"
#include "svccoupling/ingest.hpp"
#include "svccoupling/report.hpp"

namespace svccoupling::cli {

enum class Command { kAnalyze, kCorpus, kExample, kRender };
enum class EmitFormat { kCsv, kDot, kSvg };

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitIoError = 2;
inline constexpr int kExitPartialFailure = 3;

struct CliConfig {
  Command command = Command::kAnalyze;
  std::filesystem::path input;
  std::filesystem::path out_dir = "out";
  std::set<EmitFormat> emit = {EmitFormat::kCsv, EmitFormat::kDot};
  InputFormat format = InputFormat::kAuto;
  RenderOptions render;
  /// Worker threads; 0 keeps the OpenMP default.
  int jobs = 0;
};

/// Parses a comma separated `csv,dot,svg` list. Throws kInvalidOption.
std::set<EmitFormat> parse_emit_set(const std::string& text);

/// Five-service system with edges B->A, C->A, D->A, E->A, A->E and class
/// counts 50/10/11/17/30.
ServiceGraph builtin_example_graph();

/// Every output file for one project, keyed by file name, for the given
/// emit set. Pure; nothing is written.
std::map<std::string, std::string> render_project(const ServiceGraph& graph,
                                                  const std::string& project_name,
                                                  const std::set<EmitFormat>& emit,
                                                  const RenderOptions& options);

/// Writes all files into `dir` through temporary names and renames them only
/// once every write succeeded. Throws kIoError.
void write_outputs(const std::filesystem::path& dir,
                   const std::map<std::string, std::string>& files);

int cmd_analyze(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_corpus(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_example(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const CliConfig& config, std::ostream& out, std::ostream& err);

int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace svccoupling::cli
