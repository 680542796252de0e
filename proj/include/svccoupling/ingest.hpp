#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svccoupling/graph.hpp"

namespace svccoupling {

/// Non-fatal diagnostics collected while reading inputs.
using Warnings = std::vector<std::string>;

struct ServiceDecl {
  ServiceId id;
  std::optional<std::uint64_t> class_count;
  std::optional<std::uint64_t> loc;
  /// Source tree used to count classes when `class_count` is absent; relative
  /// paths resolve against the descriptor's directory.
  std::optional<std::string> source_dir;

  friend bool operator==(const ServiceDecl&, const ServiceDecl&) = default;
};

struct EdgeRecord {
  ServiceId source;
  ServiceId target;
  std::uint64_t weight = 1;
  EdgeKind kind = EdgeKind::kCall;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct ProjectDescriptor {
  std::string name;
  std::vector<ServiceDecl> services;
  std::vector<EdgeRecord> edges;

  friend bool operator==(const ProjectDescriptor&, const ProjectDescriptor&) = default;
};

/// Parses and validates a `project.json` document. Unknown fields are
/// reported through `warnings` and otherwise ignored.
/// Throws ParseError for malformed JSON and kValidationError for schema or
/// referential problems.
ProjectDescriptor parse_project_descriptor(std::string_view text,
                                           Warnings* warnings = nullptr);

/// Serializes a descriptor as `project.json` text.
std::string write_project_descriptor(const ProjectDescriptor& descriptor);

/// Reads `source,target[,weight[,kind]]` rows. A header row is expected; a
/// file whose first row is not a header is read as bare source,target rows.
std::vector<EdgeRecord> parse_edge_csv(std::string_view text);

/// Extracts services and `depends_on` / `links` hints from a docker-compose
/// document. Hints between the same pair merge by summing weights; self and
/// dangling hints are dropped with a warning.
ProjectDescriptor parse_compose(std::string_view text, Warnings* warnings = nullptr);

/// Number of regular files below `directory` whose extension is listed.
std::uint64_t count_source_units(const std::filesystem::path& directory,
                                 std::span<const std::string> extensions);
std::uint64_t count_source_units(const std::filesystem::path& directory);

/// Builds the graph for a validated descriptor. Throws kValidationError.
ServiceGraph build_graph(const ProjectDescriptor& descriptor);

/// Canonical descriptor for a graph: services and merged edges in id order.
ProjectDescriptor to_descriptor(const ServiceGraph& graph, std::string name);

enum class InputFormat { kAuto, kDescriptor, kEdges, kCompose };

std::optional<InputFormat> parse_input_format(std::string_view text);

struct LoadedProject {
  ProjectDescriptor descriptor;
  ServiceGraph graph;
  Warnings warnings;
};

/// Loads a project from a descriptor (.json), edge list (.csv) or compose
/// file (.yml/.yaml). `kAuto` dispatches on the extension. Edge lists
/// auto-declare every endpoint.
LoadedProject load_project(const std::filesystem::path& path,
                           InputFormat format = InputFormat::kAuto);

inline constexpr std::string_view kDescriptorFileName = "project.json";

struct CorpusEntry {
  std::string name;
  std::filesystem::path descriptor;
};

struct CorpusIndex {
  std::filesystem::path root;
  std::vector<CorpusEntry> projects;
  Warnings warnings;
};

/// One project per immediate subdirectory holding a `project.json`, ordered
/// by directory name. Subdirectories without one are skipped with a warning.
CorpusIndex load_corpus(const std::filesystem::path& root);

}  // namespace svccoupling
