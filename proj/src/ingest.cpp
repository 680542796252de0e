#include "svccoupling/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

namespace svccoupling {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void warn(Warnings* warnings, std::string message) {
  if (warnings != nullptr) warnings->push_back(std::move(message));
}

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::kValidationError, message);
}

ServiceId to_service_id(const std::string& name, const std::string& where) {
  if (!ServiceId::is_valid(name)) invalid(where + ": invalid service id '" + name + "'");
  return ServiceId(name);
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::optional<std::uint64_t> optional_count(const json& object, const char* key,
                                            const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
    invalid(where + ": '" + key + "' must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

const std::string& required_string(const json& object, const char* key,
                                   const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    invalid(where + ": missing string field '" + key + "'");
  }
  return it->get_ref<const std::string&>();
}

void warn_unknown_fields(const json& object, std::initializer_list<std::string_view> known,
                         const std::string& where, Warnings* warnings) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      warn(warnings, where + ": ignoring unknown field '" + key + "'");
    }
  }
}

void validate(const ProjectDescriptor& descriptor) {
  std::set<ServiceId> declared;
  for (const ServiceDecl& service : descriptor.services) {
    if (!declared.insert(service.id).second) {
      invalid("duplicate service '" + service.id.str() + "'");
    }
  }
  for (const EdgeRecord& edge : descriptor.edges) {
    const std::string label = edge.source.str() + "->" + edge.target.str();
    for (const ServiceId* endpoint : {&edge.source, &edge.target}) {
      if (!declared.contains(*endpoint)) {
        invalid("edge " + label + " references undeclared service '" +
                endpoint->str() + "'");
      }
    }
    if (edge.source == edge.target) invalid("edge " + label + " is a self dependency");
    if (edge.weight == 0) invalid("edge " + label + " has weight 0");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kIoError, "cannot read '" + path.string() + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ProjectDescriptor parse_project_descriptor(std::string_view text, Warnings* warnings) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the offset one past the offending byte.
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_and_column(text, offset);
    throw ParseError(line, column, e.what());
  }
  if (!document.is_object()) invalid("descriptor must be a JSON object");
  warn_unknown_fields(document, {"name", "services", "edges"}, "descriptor", warnings);

  ProjectDescriptor descriptor;
  if (auto it = document.find("name"); it != document.end()) {
    if (!it->is_string()) invalid("descriptor: 'name' must be a string");
    descriptor.name = it->get<std::string>();
  }

  const json services = document.value("services", json::array());
  if (!services.is_array()) invalid("descriptor: 'services' must be an array");
  for (std::size_t i = 0; i < services.size(); ++i) {
    const json& entry = services[i];
    const std::string where = "services[" + std::to_string(i) + "]";
    if (!entry.is_object()) invalid(where + ": must be an object");
    warn_unknown_fields(entry, {"id", "classes", "loc", "source_dir"}, where, warnings);
    ServiceDecl service{.id = to_service_id(required_string(entry, "id", where), where)};
    service.class_count = optional_count(entry, "classes", where);
    service.loc = optional_count(entry, "loc", where);
    if (auto it = entry.find("source_dir"); it != entry.end() && !it->is_null()) {
      if (!it->is_string()) invalid(where + ": 'source_dir' must be a string");
      service.source_dir = it->get<std::string>();
    }
    descriptor.services.push_back(std::move(service));
  }

  const json edges = document.value("edges", json::array());
  if (!edges.is_array()) invalid("descriptor: 'edges' must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& entry = edges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!entry.is_object()) invalid(where + ": must be an object");
    warn_unknown_fields(entry, {"source", "target", "weight", "kind"}, where, warnings);
    EdgeRecord edge{
        .source = to_service_id(required_string(entry, "source", where), where),
        .target = to_service_id(required_string(entry, "target", where), where)};
    if (auto weight = optional_count(entry, "weight", where)) edge.weight = *weight;
    if (auto it = entry.find("kind"); it != entry.end() && !it->is_null()) {
      const auto kind = it->is_string() ? parse_edge_kind(it->get<std::string>())
                                        : std::nullopt;
      if (!kind) invalid(where + ": 'kind' must be one of call, compose, declared");
      edge.kind = *kind;
    }
    descriptor.edges.push_back(std::move(edge));
  }

  validate(descriptor);
  return descriptor;
}

std::string write_project_descriptor(const ProjectDescriptor& descriptor) {
  json services = json::array();
  for (const ServiceDecl& service : descriptor.services) {
    json entry = {{"id", service.id.str()}};
    if (service.class_count) entry["classes"] = *service.class_count;
    if (service.loc) entry["loc"] = *service.loc;
    if (service.source_dir) entry["source_dir"] = *service.source_dir;
    services.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const EdgeRecord& edge : descriptor.edges) {
    edges.push_back({{"source", edge.source.str()},
                     {"target", edge.target.str()},
                     {"weight", edge.weight},
                     {"kind", std::string(to_string(edge.kind))}});
  }
  json document = {{"name", descriptor.name}, {"services", services}, {"edges", edges}};
  return document.dump(2) + "\n";
}

std::vector<EdgeRecord> parse_edge_csv(std::string_view text) {
  std::vector<EdgeRecord> records;
  std::size_t columns = 0;
  bool header_seen = false;
  std::size_t line_number = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    ++line_number;
    start = end + 1;
    if (line.empty()) continue;

    const std::vector<std::string_view> cells = split_csv_row(line);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() >= 2 && cells[0] == "source" && cells[1] == "target") {
        static constexpr std::string_view kOptional[] = {"weight", "kind"};
        if (cells.size() > 4) throw ParseError(line_number, 0, "too many header columns");
        for (std::size_t i = 2; i < cells.size(); ++i) {
          if (cells[i] != kOptional[i - 2]) {
            throw ParseError(line_number, 0,
                             "unexpected header column '" + std::string(cells[i]) + "'");
          }
        }
        columns = cells.size();
        continue;
      }
      // Headerless edge list: the first row fixes the column count.
      columns = cells.size();
      if (columns < 2 || columns > 4) {
        throw ParseError(line_number, 0, "expected 2 to 4 columns");
      }
    }

    if (cells.size() != columns) {
      throw ParseError(line_number, 0,
                       "expected " + std::to_string(columns) + " columns, found " +
                           std::to_string(cells.size()));
    }
    for (std::size_t i = 0; i < 2; ++i) {
      if (!ServiceId::is_valid(cells[i])) {
        throw ParseError(line_number, 0, "invalid service id '" + std::string(cells[i]) + "'");
      }
    }
    EdgeRecord record{.source = ServiceId(std::string(cells[0])),
                      .target = ServiceId(std::string(cells[1]))};
    if (columns >= 3 && !cells[2].empty()) {
      std::uint64_t weight = 0;
      const auto* first = cells[2].data();
      const auto* last = first + cells[2].size();
      const auto [ptr, ec] = std::from_chars(first, last, weight);
      if (ec != std::errc() || ptr != last || weight == 0) {
        throw ParseError(line_number, 0,
                         "weight must be a positive integer, got '" +
                             std::string(cells[2]) + "'");
      }
      record.weight = weight;
    }
    if (columns == 4 && !cells[3].empty()) {
      const auto kind = parse_edge_kind(cells[3]);
      if (!kind) {
        throw ParseError(line_number, 0, "unknown edge kind '" + std::string(cells[3]) + "'");
      }
      record.kind = *kind;
    }
    records.push_back(std::move(record));
  }
  return records;
}

ProjectDescriptor parse_compose(std::string_view text, Warnings* warnings) {
  YAML::Node document;
  try {
    document = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(static_cast<std::size_t>(e.mark.line + 1),
                     static_cast<std::size_t>(e.mark.column + 1), e.msg);
  }

  ProjectDescriptor descriptor;
  if (!document.IsMap()) throw ParseError(0, 0, "compose document must be a mapping");
  if (const YAML::Node name = document["name"]; name && name.IsScalar()) {
    descriptor.name = name.as<std::string>();
  }
  const YAML::Node services = document["services"];
  if (!services || services.IsNull()) return descriptor;
  if (!services.IsMap()) {
    throw ParseError(static_cast<std::size_t>(services.Mark().line + 1), 0,
                     "'services' must be a mapping");
  }

  std::set<ServiceId> declared;
  for (const auto& entry : services) {
    const std::string name = entry.first.as<std::string>();
    if (!ServiceId::is_valid(name)) {
      throw ParseError(static_cast<std::size_t>(entry.first.Mark().line + 1), 0,
                       "invalid service name '" + name + "'");
    }
    ServiceId id(name);
    if (declared.insert(id).second) descriptor.services.push_back(ServiceDecl{.id = id});
  }

  std::map<std::pair<ServiceId, ServiceId>, std::uint64_t> hints;
  auto add_hint = [&](const ServiceId& from, const std::string& raw, std::string_view key) {
    // links entries may carry an alias: "service:alias".
    const std::string target = raw.substr(0, raw.find(':'));
    if (!ServiceId::is_valid(target) || !declared.contains(ServiceId(target))) {
      warn(warnings, "service '" + from.str() + "': dropping " + std::string(key) +
                         " entry '" + raw + "' (not a declared service)");
      return;
    }
    ServiceId to(target);
    if (to == from) {
      warn(warnings, "service '" + from.str() + "': dropping self " + std::string(key));
      return;
    }
    ++hints[{from, to}];
  };

  for (const auto& entry : services) {
    const ServiceId from(entry.first.as<std::string>());
    const YAML::Node body = entry.second;
    if (!body.IsMap()) continue;
    if (const YAML::Node depends = body["depends_on"]; depends) {
      if (depends.IsSequence()) {
        for (const auto& item : depends) add_hint(from, item.as<std::string>(), "depends_on");
      } else if (depends.IsMap()) {
        for (const auto& item : depends) {
          add_hint(from, item.first.as<std::string>(), "depends_on");
        }
      } else if (depends.IsScalar()) {
        add_hint(from, depends.as<std::string>(), "depends_on");
      } else if (!depends.IsNull()) {
        throw ParseError(static_cast<std::size_t>(depends.Mark().line + 1), 0,
                         "'depends_on' must be a list or mapping");
      }
    }
    if (const YAML::Node links = body["links"]; links) {
      if (links.IsSequence()) {
        for (const auto& item : links) add_hint(from, item.as<std::string>(), "links");
      } else if (!links.IsNull()) {
        throw ParseError(static_cast<std::size_t>(links.Mark().line + 1), 0,
                         "'links' must be a list");
      }
    }
  }

  for (const auto& [pair, weight] : hints) {
    descriptor.edges.push_back(EdgeRecord{pair.first, pair.second, weight, EdgeKind::kCompose});
  }
  std::sort(descriptor.services.begin(), descriptor.services.end(),
            [](const ServiceDecl& a, const ServiceDecl& b) { return a.id < b.id; });
  return descriptor;
}

std::uint64_t count_source_units(const fs::path& directory,
                                 std::span<const std::string> extensions) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw Error(ErrorCode::kIoError, "not a directory: '" + directory.string() + "'");
  }
  std::uint64_t count = 0;
  fs::recursive_directory_iterator it(directory, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot read '" + directory.string() + "': " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) {
      throw Error(ErrorCode::kIoError, "cannot read '" + directory.string() + "': " + ec.message());
    }
    if (!it->is_regular_file(ec)) continue;
    const std::string extension = it->path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), extension) != extensions.end()) {
      ++count;
    }
  }
  if (ec) throw Error(ErrorCode::kIoError, "cannot read '" + directory.string() + "': " + ec.message());
  return count;
}

std::uint64_t count_source_units(const fs::path& directory) {
  static const std::string kJava[] = {".java"};
  return count_source_units(directory, kJava);
}

ServiceGraph build_graph(const ProjectDescriptor& descriptor) {
  validate(descriptor);
  ServiceGraph graph;
  for (const ServiceDecl& service : descriptor.services) {
    graph = std::move(graph).add_service(
        ServiceNode{service.id, service.class_count, service.loc});
  }
  for (const EdgeRecord& edge : descriptor.edges) {
    graph = std::move(graph).add_dependency(
        DependencyEdge{edge.source, edge.target, edge.weight, edge.kind});
  }
  return graph;
}

ProjectDescriptor to_descriptor(const ServiceGraph& graph, std::string name) {
  ProjectDescriptor descriptor{.name = std::move(name)};
  for (const ServiceNode& node : graph.nodes()) {
    descriptor.services.push_back(ServiceDecl{node.id, node.class_count, node.loc, {}});
  }
  for (const DependencyEdge& edge : graph.edges()) {
    descriptor.edges.push_back(EdgeRecord{edge.source, edge.target, edge.weight, edge.kind});
  }
  return descriptor;
}

std::optional<InputFormat> parse_input_format(std::string_view text) {
  if (text == "auto") return InputFormat::kAuto;
  if (text == "descriptor") return InputFormat::kDescriptor;
  if (text == "edges") return InputFormat::kEdges;
  if (text == "compose") return InputFormat::kCompose;
  return std::nullopt;
}

LoadedProject load_project(const fs::path& path, InputFormat format) {
  const std::string text = read_file(path);
  if (format == InputFormat::kAuto) {
    const std::string extension = path.extension().string();
    if (extension == ".json") {
      format = InputFormat::kDescriptor;
    } else if (extension == ".csv") {
      format = InputFormat::kEdges;
    } else if (extension == ".yml" || extension == ".yaml") {
      format = InputFormat::kCompose;
    } else {
      throw Error(ErrorCode::kValidationError,
                  "cannot infer input format of '" + path.string() + "'; use --format");
    }
  }

  LoadedProject project{.descriptor = {}, .graph = {}, .warnings = {}};
  switch (format) {
    case InputFormat::kDescriptor:
      project.descriptor = parse_project_descriptor(text, &project.warnings);
      break;
    case InputFormat::kCompose:
      project.descriptor = parse_compose(text, &project.warnings);
      break;
    case InputFormat::kEdges: {
      project.descriptor.edges = parse_edge_csv(text);
      std::set<ServiceId> endpoints;
      for (const EdgeRecord& edge : project.descriptor.edges) {
        endpoints.insert(edge.source);
        endpoints.insert(edge.target);
      }
      for (const ServiceId& id : endpoints) {
        project.descriptor.services.push_back(ServiceDecl{.id = id});
      }
      break;
    }
    case InputFormat::kAuto:
      break;
  }

  if (project.descriptor.name.empty()) {
    project.descriptor.name = format == InputFormat::kDescriptor
                                  ? fs::absolute(path).parent_path().filename().string()
                                  : path.stem().string();
  }

  const fs::path base = path.parent_path();
  for (ServiceDecl& service : project.descriptor.services) {
    if (service.class_count || !service.source_dir) continue;
    fs::path dir(*service.source_dir);
    if (dir.is_relative()) dir = base / dir;
    service.class_count = count_source_units(dir);
  }

  project.graph = build_graph(project.descriptor);
  return project;
}

CorpusIndex load_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::kIoError, "corpus root is not a directory: '" + root.string() + "'");
  }
  CorpusIndex index{.root = root, .projects = {}, .warnings = {}};
  std::vector<fs::path> subdirs;
  for (fs::directory_iterator it(root, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_directory(ec)) subdirs.push_back(it->path());
  }
  if (ec) throw Error(ErrorCode::kIoError, "cannot list '" + root.string() + "': " + ec.message());
  std::sort(subdirs.begin(), subdirs.end());

  for (const fs::path& dir : subdirs) {
    const fs::path descriptor = dir / kDescriptorFileName;
    if (fs::is_regular_file(descriptor, ec)) {
      index.projects.push_back(CorpusEntry{dir.filename().string(), descriptor});
    } else {
      index.warnings.push_back("skipping '" + dir.filename().string() + "': no " +
                               std::string(kDescriptorFileName));
    }
  }
  return index;
}

}  // namespace svccoupling
