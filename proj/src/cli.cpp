#include "svccoupling/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "svccoupling/metrics.hpp"

namespace svccoupling::cli {
namespace fs = std::filesystem;

namespace {

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kIoError ? kExitIoError : kExitInvalidInput;
}

std::string summary_line(const ServiceGraph& graph, const ProjectSummary& summary,
                         const RenderOptions& options) {
  std::ostringstream line;
  line << summary.project_name << ": services=" << graph.service_count()
       << " edges=" << graph.edge_count() << " siy=" << summary.siy;
  if (summary.sc.values) {
    line << " sc_max=" << format_fixed(summary.sc.values->max, options.decimal_places)
         << " sc_avg=" << format_fixed(summary.sc.values->avg, options.decimal_places);
  } else {
    line << " sc_max=- sc_avg=-";
  }
  return line.str();
}

int analyze_graph(const ServiceGraph& graph, const std::string& name, const CliConfig& config,
                  std::ostream& out, std::ostream& err) {
  try {
    const std::vector<PairMetrics> pairs = pair_matrix(graph);
    const ProjectSummary summary = project_summary(graph, name, pairs);
    write_outputs(config.out_dir, render_project(graph, name, config.emit, config.render));
    out << summary_line(graph, summary, config.render) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

// Validates options shared by every command; returns an exit code on failure.
std::optional<int> check_config(const CliConfig& config, std::ostream& err) {
  try {
    config.render.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  if (config.emit.empty()) {
    err << "error: emit set is empty\n";
    return kExitInvalidInput;
  }
  set_thread_count(config.jobs);
  return std::nullopt;
}

struct CorpusOutcome {
  std::optional<ProjectSummary> summary;
  std::string error;
  Warnings warnings;
};

}  // namespace

std::set<EmitFormat> parse_emit_set(const std::string& text) {
  std::set<EmitFormat> emit;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item == "csv") {
      emit.insert(EmitFormat::kCsv);
    } else if (item == "dot") {
      emit.insert(EmitFormat::kDot);
    } else if (item == "svg") {
      emit.insert(EmitFormat::kSvg);
    } else {
      throw Error(ErrorCode::kInvalidOption, "unknown emit format '" + item + "'");
    }
  }
  if (emit.empty()) throw Error(ErrorCode::kInvalidOption, "emit set is empty");
  return emit;
}

ServiceGraph builtin_example_graph() {
  // E's in-degree is 1 here. The published table lists 0 for E while also
  // giving it degree 2 with out-degree 1; the A->E edge keeps the degrees
  // consistent and matches rows A-D.
  ServiceGraph graph;
  const std::pair<const char*, std::uint64_t> services[] = {
      {"A", 50}, {"B", 10}, {"C", 11}, {"D", 17}, {"E", 30}};
  for (const auto& [name, classes] : services) {
    graph = std::move(graph).add_service(ServiceNode{ServiceId(name), classes, std::nullopt});
  }
  const std::pair<const char*, const char*> edges[] = {
      {"B", "A"}, {"C", "A"}, {"D", "A"}, {"E", "A"}, {"A", "E"}};
  for (const auto& [source, target] : edges) {
    graph = std::move(graph).add_dependency(DependencyEdge{source, target});
  }
  return graph;
}

std::map<std::string, std::string> render_project(const ServiceGraph& graph,
                                                  const std::string& project_name,
                                                  const std::set<EmitFormat>& emit,
                                                  const RenderOptions& options) {
  std::map<std::string, std::string> files;
  if (emit.contains(EmitFormat::kCsv)) {
    const std::vector<PairMetrics> pairs = pair_matrix(graph);
    files["service_metrics.csv"] = emit_service_metrics_csv(graph, options);
    for (PairMetric metric : kAllPairMetrics) {
      files["pair_" + std::string(to_string(metric)) + ".csv"] =
          emit_pair_matrix_csv(graph, pairs, metric, options);
    }
    const ProjectSummary summary = project_summary(graph, project_name, pairs);
    files["summary.csv"] = emit_summary_csv(std::span(&summary, 1), options);
  }
  if (emit.contains(EmitFormat::kDot)) files["graph.dot"] = emit_dot(graph, options);
  if (emit.contains(EmitFormat::kSvg)) files["graph.svg"] = emit_svg(graph, options);
  return files;
}

void write_outputs(const fs::path& dir, const std::map<std::string, std::string>& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create output directory '" + dir.string() + "': " + ec.message());
  }

  std::vector<fs::path> staged;
  auto discard = [&] {
    for (const fs::path& path : staged) fs::remove(path, ec);
  };
  for (const auto& [name, content] : files) {
    const fs::path temporary = dir / (name + ".tmp");
    staged.push_back(temporary);
    std::ofstream stream(temporary, std::ios::binary | std::ios::trunc);
    stream << content;
    stream.close();
    if (!stream) {
      discard();
      throw Error(ErrorCode::kIoError, "cannot write '" + temporary.string() + "'");
    }
  }
  for (const auto& [name, content] : files) {
    fs::rename(dir / (name + ".tmp"), dir / name, ec);
    if (ec) {
      discard();
      throw Error(ErrorCode::kIoError, "cannot move '" + name + "' into place: " + ec.message());
    }
  }
}

int cmd_analyze(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (auto code = check_config(config, err)) return *code;
  LoadedProject project;
  try {
    project = load_project(config.input, config.format);
  } catch (const Error& e) {
    err << "error: " << config.input.string() << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
  for (const std::string& warning : project.warnings) err << "warning: " << warning << '\n';
  return analyze_graph(project.graph, project.descriptor.name, config, out, err);
}

int cmd_example(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (auto code = check_config(config, err)) return *code;
  return analyze_graph(builtin_example_graph(), "example", config, out, err);
}

int cmd_render(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (auto code = check_config(config, err)) return *code;
  std::set<EmitFormat> emit;
  for (EmitFormat format : {EmitFormat::kDot, EmitFormat::kSvg}) {
    if (config.emit.contains(format)) emit.insert(format);
  }
  if (emit.empty()) {
    err << "error: render needs dot or svg in the emit set\n";
    return kExitInvalidInput;
  }
  try {
    LoadedProject project = load_project(config.input, config.format);
    for (const std::string& warning : project.warnings) err << "warning: " << warning << '\n';
    const auto files = render_project(project.graph, project.descriptor.name, emit, config.render);
    write_outputs(config.out_dir, files);
    for (const auto& [name, content] : files) out << (config.out_dir / name).string() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << config.input.string() << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_corpus(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (auto code = check_config(config, err)) return *code;
  CorpusIndex index;
  try {
    index = load_corpus(config.input);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  }
  for (const std::string& warning : index.warnings) err << "warning: " << warning << '\n';

  // Each project writes only below its own directory; the combined files are
  // written after the loop in index order.
  std::vector<CorpusOutcome> outcomes(index.projects.size());
  const auto count = static_cast<std::int64_t>(index.projects.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const CorpusEntry& entry = index.projects[static_cast<std::size_t>(i)];
    CorpusOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    try {
      LoadedProject project = load_project(entry.descriptor, InputFormat::kDescriptor);
      outcome.warnings = std::move(project.warnings);
      const std::vector<PairMetrics> pairs = pair_matrix(project.graph);
      ProjectSummary summary = project_summary(project.graph, entry.name, pairs);
      write_outputs(config.out_dir / entry.name,
                    render_project(project.graph, entry.name, config.emit, config.render));
      outcome.summary = std::move(summary);
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
  }

  std::vector<ProjectSummary> summaries;
  std::string errors;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const std::string& name = index.projects[i].name;
    for (const std::string& warning : outcomes[i].warnings) {
      err << "warning: " << name << ": " << warning << '\n';
    }
    if (outcomes[i].summary) {
      summaries.push_back(*outcomes[i].summary);
    } else {
      errors += name + ": " + outcomes[i].error + '\n';
    }
  }

  try {
    std::map<std::string, std::string> files{
        {"corpus_summary.csv", emit_summary_csv(summaries, config.render)}};
    if (!errors.empty()) files["corpus_errors.txt"] = errors;
    write_outputs(config.out_dir, files);
    if (errors.empty()) {
      std::error_code ec;
      fs::remove(config.out_dir / "corpus_errors.txt", ec);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  }

  const std::size_t failed = outcomes.size() - summaries.size();
  out << "projects=" << outcomes.size() << " analyzed=" << summaries.size()
      << " failed=" << failed << '\n';
  if (failed > 0) {
    err << errors;
    return kExitPartialFailure;
  }
  return kExitOk;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::kAnalyze: return cmd_analyze(config, out, err);
    case Command::kCorpus: return cmd_corpus(config, out, err);
    case Command::kExample: return cmd_example(config, out, err);
    case Command::kRender: return cmd_render(config, out, err);
  }
  return kExitInvalidInput;
}

}  // namespace svccoupling::cli
