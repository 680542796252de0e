#include "svccoupling/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coupling_formulas.hpp"

namespace svccoupling {
namespace {

std::uint64_t connected_degree(const ServiceGraph& graph, const ServiceId& s1,
                               const ServiceId& s2) {
  const std::uint64_t degree = graph.pair_degree(s1, s2);
  if (degree == 0) {
    throw Error(ErrorCode::kUnconnectedPair,
                "services '" + s1.str() + "' and '" + s2.str() + "' are not connected");
  }
  return degree;
}

}  // namespace

double lwf(const ServiceGraph& graph, const ServiceId& s1, const ServiceId& s2) {
  const std::uint64_t degree = connected_degree(graph, s1, s2);
  return detail::local_weight(graph.pair_outdegree(s1, s2), degree);
}

double gwf(const ServiceGraph& graph, const ServiceId& s1, const ServiceId& s2) {
  const std::uint64_t degree = connected_degree(graph, s1, s2);
  return detail::global_weight(degree, graph.max_node_degree());
}

double structural_coupling(const ServiceGraph& graph, const ServiceId& s1,
                           const ServiceId& s2) {
  const std::uint64_t degree = connected_degree(graph, s1, s2);
  return detail::coupling(degree, lwf(graph, s1, s2), gwf(graph, s1, s2));
}

std::optional<double> cbm(const ServiceGraph& graph, const ServiceId& s) {
  const ServiceNode& node = graph.node(s);
  if (!node.class_count || *node.class_count == 0) return std::nullopt;
  return static_cast<double>(graph.node_outdegree(s)) /
         static_cast<double>(*node.class_count);
}

std::uint64_t ais(const ServiceGraph& graph, const ServiceId& s) {
  return graph.predecessors(s).size();
}

std::uint64_t ads(const ServiceGraph& graph, const ServiceId& s) {
  return graph.successors(s).size();
}

std::uint64_t acs(const ServiceGraph& graph, const ServiceId& s) {
  return ais(graph, s) * ads(graph, s);
}

std::uint64_t siy(const ServiceGraph& graph) {
  std::uint64_t count = 0;
  for (const auto& [s1, s2] : graph.connected_pairs()) {
    if (s1 < s2 && graph.is_bidirectional(s1, s2)) ++count;
  }
  return count;
}

std::vector<ServiceMetrics> service_metrics(const ServiceGraph& graph) {
  std::vector<ServiceMetrics> rows;
  rows.reserve(graph.service_count());
  for (const ServiceNode& node : graph.nodes()) {
    ServiceMetrics row{.id = node.id};
    row.indegree = graph.node_indegree(node.id);
    row.outdegree = graph.node_outdegree(node.id);
    row.degree = row.indegree + row.outdegree;
    row.class_count = node.class_count;
    row.loc = node.loc;
    row.cbm = cbm(graph, node.id);
    row.ais = ais(graph, node.id);
    row.ads = ads(graph, node.id);
    row.acs = row.ais * row.ads;
    rows.push_back(std::move(row));
  }
  return rows;
}

StatSummary summarize(std::span<const double> values, std::string metric_name) {
  StatSummary summary{.metric_name = std::move(metric_name), .count = values.size()};
  if (values.empty()) return summary;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  StatSummary::Values out;
  out.max = sorted.back();
  out.total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  out.avg = out.total / static_cast<double>(n);
  out.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  double squares = 0.0;
  for (double v : sorted) squares += (v - out.avg) * (v - out.avg);
  out.stdev = std::sqrt(squares / static_cast<double>(n));
  summary.values = out;
  return summary;
}

ProjectSummary project_summary(const ServiceGraph& graph, std::string project_name) {
  const std::vector<PairMetrics> pairs = pair_matrix(graph);
  return project_summary(graph, std::move(project_name), pairs);
}

ProjectSummary project_summary(const ServiceGraph& graph, std::string project_name,
                               std::span<const PairMetrics> pairs) {
  std::vector<double> degree, lwf_values, gwf_values, sc_values;
  degree.reserve(pairs.size());
  lwf_values.reserve(pairs.size());
  gwf_values.reserve(pairs.size());
  sc_values.reserve(pairs.size());
  for (const PairMetrics& p : pairs) {
    degree.push_back(static_cast<double>(p.degree));
    lwf_values.push_back(p.lwf);
    gwf_values.push_back(p.gwf);
    sc_values.push_back(p.sc);
  }

  std::vector<double> cbm_values;
  for (const ServiceId& id : graph.service_ids()) {
    if (auto value = cbm(graph, id)) cbm_values.push_back(*value);
  }

  ProjectSummary summary{.project_name = std::move(project_name)};
  summary.degree = summarize(degree, "degree");
  summary.lwf = summarize(lwf_values, "lwf");
  summary.gwf = summarize(gwf_values, "gwf");
  summary.sc = summarize(sc_values, "sc");
  if (!cbm_values.empty()) summary.cbm = summarize(cbm_values, "cbm");
  summary.siy = siy(graph);
  return summary;
}

namespace reference {

std::vector<PairMetrics> pair_matrix(const ServiceGraph& graph) {
  std::vector<PairMetrics> out;
  for (const auto& [s1, s2] : graph.connected_pairs()) {
    PairMetrics row{.s1 = s1, .s2 = s2};
    row.outdegree = graph.pair_outdegree(s1, s2);
    row.indegree = graph.pair_indegree(s1, s2);
    row.degree = graph.pair_degree(s1, s2);
    row.lwf = lwf(graph, s1, s2);
    row.gwf = gwf(graph, s1, s2);
    row.sc = structural_coupling(graph, s1, s2);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace reference
}  // namespace svccoupling
