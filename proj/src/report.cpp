#include "svccoupling/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace svccoupling {
namespace {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double metric_value(const PairMetrics& pair, PairMetric metric) {
  switch (metric) {
    case PairMetric::kDegree: return static_cast<double>(pair.degree);
    case PairMetric::kLwf: return pair.lwf;
    case PairMetric::kGwf: return pair.gwf;
    case PairMetric::kSc: return pair.sc;
  }
  return 0.0;
}

double size_ratio(std::uint64_t degree, std::uint64_t max_degree) {
  return max_degree == 0 ? 0.0
                         : static_cast<double>(degree) / static_cast<double>(max_degree);
}

// Directed pairs that carry at least one dependency, with their SC.
std::vector<const PairMetrics*> drawn_edges(std::span<const PairMetrics> pairs) {
  std::vector<const PairMetrics*> edges;
  for (const PairMetrics& pair : pairs) {
    if (pair.outdegree > 0) edges.push_back(&pair);
  }
  return edges;
}

}  // namespace

std::string_view fill_color(ColorClass color) {
  switch (color) {
    case ColorClass::kHub: return "green";
    case ColorClass::kBridge: return "yellow";
    case ColorClass::kHighOut: return "blue";
    case ColorClass::kRegular: return "red";
  }
  return "red";
}

void RenderOptions::validate() const {
  if (!(hub_fraction > 0.0 && hub_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidOption, "hub fraction must be in (0, 1]");
  }
  if (!(base_node_size > 0.0) || !std::isfinite(base_node_size)) {
    throw Error(ErrorCode::kInvalidOption, "base node size must be positive");
  }
  if (decimal_places < 0 || decimal_places > 15) {
    throw Error(ErrorCode::kInvalidOption, "decimal places must be in [0, 15]");
  }
}

std::map<ServiceId, ColorClass> classify_all(const ServiceGraph& graph,
                                             const RenderOptions& options) {
  std::map<ServiceId, ColorClass> colors;
  if (graph.service_count() == 0) return colors;
  const std::uint64_t max_degree = graph.max_node_degree();
  const std::vector<ServiceId> cut = graph.articulation_services();
  const std::set<ServiceId> bridges(cut.begin(), cut.end());

  for (const ServiceId& id : graph.service_ids()) {
    const std::uint64_t in = graph.node_indegree(id);
    const std::uint64_t out = graph.node_outdegree(id);
    const std::uint64_t degree = in + out;
    ColorClass color = ColorClass::kRegular;
    if (static_cast<double>(degree) >= options.hub_fraction * static_cast<double>(max_degree) &&
        degree >= options.hub_min_degree) {
      color = ColorClass::kHub;
    } else if (bridges.contains(id)) {
      color = ColorClass::kBridge;
    } else if (out > in) {
      color = ColorClass::kHighOut;
    }
    colors.emplace(id, color);
  }
  return colors;
}

ColorClass classify(const ServiceGraph& graph, const ServiceId& s,
                    const RenderOptions& options) {
  graph.node(s);
  return classify_all(graph, options).at(s);
}

double node_size(const ServiceGraph& graph, const ServiceId& s,
                 const RenderOptions& options) {
  const std::uint64_t degree = graph.node_degree(s);
  return options.base_node_size * (1.0 + 2.0 * size_ratio(degree, graph.max_node_degree()));
}

std::string_view to_string(PairMetric metric) {
  switch (metric) {
    case PairMetric::kDegree: return "degree";
    case PairMetric::kLwf: return "lwf";
    case PairMetric::kGwf: return "gwf";
    case PairMetric::kSc: return "sc";
  }
  return "sc";
}

std::string format_fixed(double value, int decimal_places) {
  char buffer[64];
  const int written = std::snprintf(buffer, sizeof buffer, "%.*f", decimal_places, value);
  std::string text(buffer, static_cast<std::size_t>(std::max(written, 0)));
  // Rounded negative zero would otherwise print as "-0.00".
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) {
    text.erase(0, 1);
  }
  return text;
}

std::string emit_pair_matrix_csv(const ServiceGraph& graph, PairMetric metric,
                                 const RenderOptions& options) {
  const std::vector<PairMetrics> pairs = pair_matrix(graph);
  return emit_pair_matrix_csv(graph, pairs, metric, options);
}

std::string emit_pair_matrix_csv(const ServiceGraph& graph,
                                 std::span<const PairMetrics> pairs, PairMetric metric,
                                 const RenderOptions& options) {
  const std::vector<ServiceId> ids = graph.service_ids();
  std::map<std::pair<ServiceId, ServiceId>, double> cells;
  for (const PairMetrics& pair : pairs) cells.emplace(std::pair{pair.s1, pair.s2}, metric_value(pair, metric));

  std::string out = "service";
  for (const ServiceId& id : ids) out += "," + id.str();
  out += '\n';
  for (const ServiceId& row : ids) {
    out += row.str();
    for (const ServiceId& column : ids) {
      out += ',';
      if (auto it = cells.find({row, column}); it != cells.end()) {
        out += format_fixed(it->second, options.decimal_places);
      }
    }
    out += '\n';
  }
  return out;
}

std::string emit_service_metrics_csv(const ServiceGraph& graph,
                                     const RenderOptions& options) {
  std::string out = "service,in_degree,out_degree,degree,classes,loc,cbm,ais,ads,acs\n";
  auto optional_int = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  for (const ServiceMetrics& row : service_metrics(graph)) {
    out += row.id.str() + ',' + std::to_string(row.indegree) + ',' +
           std::to_string(row.outdegree) + ',' + std::to_string(row.degree) + ',' +
           optional_int(row.class_count) + ',' + optional_int(row.loc) + ',' +
           (row.cbm ? format_fixed(*row.cbm, options.decimal_places) : std::string()) +
           ',' + std::to_string(row.ais) + ',' + std::to_string(row.ads) + ',' +
           std::to_string(row.acs) + '\n';
  }
  return out;
}

std::string emit_summary_csv(std::span<const ProjectSummary> summaries,
                             const RenderOptions& options) {
  static constexpr std::string_view kGroups[] = {"degree", "sc", "cbm", "lwf", "gwf"};
  static constexpr std::string_view kStats[] = {"max", "avg", "med", "stdev", "tot"};

  std::string out = "project";
  for (std::string_view group : kGroups) {
    for (std::string_view stat : kStats) {
      out += ',';
      out += group;
      out += '_';
      out += stat;
    }
  }
  out += ",siy\n";

  auto append_group = [&](const StatSummary* summary) {
    if (summary == nullptr || !summary->values) {
      out += ",,,,,";
      return;
    }
    const StatSummary::Values& v = *summary->values;
    for (double value : {v.max, v.avg, v.median, v.stdev, v.total}) {
      out += ',';
      out += format_fixed(value, options.decimal_places);
    }
  };
  for (const ProjectSummary& summary : summaries) {
    out += csv_field(summary.project_name);
    append_group(&summary.degree);
    append_group(&summary.sc);
    append_group(summary.cbm ? &*summary.cbm : nullptr);
    append_group(&summary.lwf);
    append_group(&summary.gwf);
    out += ',' + std::to_string(summary.siy) + '\n';
  }
  return out;
}

std::string emit_dot(const ServiceGraph& graph, const RenderOptions& options) {
  const std::vector<PairMetrics> pairs = pair_matrix(graph);
  const std::map<ServiceId, ColorClass> colors = classify_all(graph, options);

  std::ostringstream out;
  out << "digraph \"coupling\" {\n";
  out << "  node [shape=circle, style=filled, fixedsize=true];\n";
  for (const auto& [id, color] : colors) {
    const std::string size = format_fixed(node_size(graph, id, options), 2);
    out << "  " << dot_quote(id.str()) << " [label=" << dot_quote(id.str())
        << ", style=filled, fillcolor=" << dot_quote(fill_color(color))
        << ", width=" << size << ", height=" << size << "];\n";
  }
  for (const PairMetrics* edge : drawn_edges(pairs)) {
    out << "  " << dot_quote(edge->s1.str()) << " -> " << dot_quote(edge->s2.str())
        << " [label=" << dot_quote(format_fixed(edge->sc, options.decimal_places))
        << ", penwidth=" << format_fixed(1.0 + 3.0 * edge->sc, 2) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_svg(const ServiceGraph& graph, const RenderOptions& options) {
  if (graph.service_count() == 0) {
    throw Error(ErrorCode::kEmptyGraph, "cannot render a graph without services");
  }
  const std::vector<PairMetrics> pairs = pair_matrix(graph);
  const std::map<ServiceId, ColorClass> colors = classify_all(graph, options);
  const std::vector<ServiceId> ids = graph.service_ids();
  const std::size_t n = ids.size();

  constexpr double kUnitRadius = 12.0;
  constexpr double kLayoutRadius = 200.0;
  const double max_radius = kUnitRadius * options.base_node_size * 3.0;
  const double margin = max_radius + 30.0;
  const double ring = n > 1 ? kLayoutRadius : 0.0;
  const double extent = 2.0 * (ring + margin);
  const double center = extent / 2.0;

  struct Placed {
    double x, y, r;
  };
  std::map<ServiceId, Placed> placed;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = -std::numbers::pi / 2.0 +
                         2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    placed.emplace(ids[i], Placed{center + ring * std::cos(angle), center + ring * std::sin(angle),
                                  kUnitRadius * node_size(graph, ids[i], options)});
  }
  auto fmt = [](double v) { return format_fixed(v, 2); };

  std::ostringstream out;
  const std::string size = fmt(extent);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
      << "  <defs>\n"
      << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" "
         "markerWidth=\"8\" markerHeight=\"8\" orient=\"auto-start-reverse\">\n"
      << "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/>\n"
      << "    </marker>\n"
      << "  </defs>\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "  <g class=\"edges\">\n";
  for (const PairMetrics* edge : drawn_edges(pairs)) {
    const Placed& from = placed.at(edge->s1);
    const Placed& to = placed.at(edge->s2);
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double length = std::hypot(dx, dy);
    const double ux = dx / length;
    const double uy = dy / length;
    // Offset both directions of a mutual pair so their arrows do not overlap.
    const double shift = graph.is_bidirectional(edge->s1, edge->s2) ? 4.0 : 0.0;
    const double ox = -uy * shift;
    const double oy = ux * shift;
    const double x1 = from.x + ux * from.r + ox;
    const double y1 = from.y + uy * from.r + oy;
    const double x2 = to.x - ux * to.r + ox;
    const double y2 = to.y - uy * to.r + oy;
    const std::string label = format_fixed(edge->sc, options.decimal_places);
    out << "    <line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
        << "\" y2=\"" << fmt(y2) << "\" stroke=\"black\" stroke-width=\""
        << fmt(1.0 + 3.0 * edge->sc) << "\" marker-end=\"url(#arrow)\"/>\n";
    out << "    <text x=\"" << fmt((x1 + x2) / 2.0 + ox * 2.0) << "\" y=\""
        << fmt((y1 + y2) / 2.0 + oy * 2.0) << "\" font-family=\"sans-serif\" font-size=\"11\" "
        << "text-anchor=\"middle\">" << label << "</text>\n";
  }
  out << "  </g>\n";

  out << "  <g class=\"services\">\n";
  for (const ServiceId& id : ids) {
    const Placed& p = placed.at(id);
    out << "    <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\"" << fmt(p.r)
        << "\" fill=\"" << fill_color(colors.at(id)) << "\" stroke=\"black\"/>\n";
    out << "    <text x=\"" << fmt(p.x) << "\" y=\"" << fmt(p.y + p.r + 14.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << xml_escape(id.str()) << "</text>\n";
  }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace svccoupling
