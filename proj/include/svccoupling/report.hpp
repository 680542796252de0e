#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "svccoupling/graph.hpp"
#include "svccoupling/metrics.hpp"

namespace svccoupling {

/// Visual role of a service in a coupling graph. When several apply the
/// first listed wins.
enum class ColorClass { kHub, kBridge, kHighOut, kRegular };

/// "green", "yellow", "blue" or "red".
std::string_view fill_color(ColorClass color);

struct RenderOptions {
  double hub_fraction = 0.6;
  std::uint64_t hub_min_degree = 3;
  double base_node_size = 1.0;
  int decimal_places = 2;

  /// Throws kInvalidOption when a field is out of range.
  void validate() const;
};

ColorClass classify(const ServiceGraph& graph, const ServiceId& s,
                    const RenderOptions& options = {});
/// Classification of every service; computes articulation points once.
std::map<ServiceId, ColorClass> classify_all(const ServiceGraph& graph,
                                             const RenderOptions& options = {});

/// base * (1 + 2 * degree / max_degree); base when the graph has no edges.
double node_size(const ServiceGraph& graph, const ServiceId& s,
                 const RenderOptions& options = {});

enum class PairMetric { kDegree, kLwf, kGwf, kSc };
inline constexpr PairMetric kAllPairMetrics[] = {PairMetric::kDegree, PairMetric::kLwf,
                                                 PairMetric::kGwf, PairMetric::kSc};
std::string_view to_string(PairMetric metric);

/// Fixed-point rendering used by every emitter.
std::string format_fixed(double value, int decimal_places);

std::string emit_pair_matrix_csv(const ServiceGraph& graph, PairMetric metric,
                                 const RenderOptions& options = {});
std::string emit_pair_matrix_csv(const ServiceGraph& graph,
                                 std::span<const PairMetrics> pairs, PairMetric metric,
                                 const RenderOptions& options = {});

std::string emit_service_metrics_csv(const ServiceGraph& graph,
                                     const RenderOptions& options = {});

std::string emit_summary_csv(std::span<const ProjectSummary> summaries,
                             const RenderOptions& options = {});

std::string emit_dot(const ServiceGraph& graph, const RenderOptions& options = {});

/// Circular layout. Throws kEmptyGraph for a graph without services.
std::string emit_svg(const ServiceGraph& graph, const RenderOptions& options = {});

}  // namespace svccoupling
