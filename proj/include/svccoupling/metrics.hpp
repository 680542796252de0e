#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svccoupling/graph.hpp"

namespace svccoupling {

/// Coupling of one ordered, connected service pair.
struct PairMetrics {
  ServiceId s1;
  ServiceId s2;
  std::uint64_t degree = 0;
  std::uint64_t outdegree = 0;
  std::uint64_t indegree = 0;
  double lwf = 0.0;
  double gwf = 0.0;
  double sc = 0.0;

  friend bool operator==(const PairMetrics&, const PairMetrics&) = default;
};

struct ServiceMetrics {
  ServiceId id;
  std::uint64_t indegree = 0;
  std::uint64_t outdegree = 0;
  std::uint64_t degree = 0;
  std::optional<std::uint64_t> class_count;
  std::optional<std::uint64_t> loc;
  std::optional<double> cbm;
  std::uint64_t ais = 0;
  std::uint64_t ads = 0;
  std::uint64_t acs = 0;
};

/// Descriptive statistics of one metric. `values` is empty iff count == 0.
struct StatSummary {
  struct Values {
    double max = 0.0;
    double avg = 0.0;
    double median = 0.0;
    double stdev = 0.0;  // population
    double total = 0.0;
  };

  std::string metric_name;
  std::size_t count = 0;
  std::optional<Values> values;
};

struct ProjectSummary {
  std::string project_name;
  StatSummary degree;
  StatSummary lwf;
  StatSummary gwf;
  StatSummary sc;
  /// Absent when no service has a defined CBM.
  std::optional<StatSummary> cbm;
  std::uint64_t siy = 0;
};

// Pair-level weights. All throw kUnconnectedPair when pair_degree(s1, s2) == 0.

/// (1 + outdegree) / (1 + degree) for the ordered pair.
double lwf(const ServiceGraph& graph, const ServiceId& s1, const ServiceId& s2);
/// Pair degree over the maximum node degree of the graph.
double gwf(const ServiceGraph& graph, const ServiceId& s1, const ServiceId& s2);
/// 1 - LWF * GWF / degree. Lies in [0, 1).
double structural_coupling(const ServiceGraph& graph, const ServiceId& s1,
                           const ServiceId& s2);

/// PairMetrics for every connected ordered pair, lexicographic by (s1, s2).
/// Rows are evaluated in parallel; output is identical to
/// reference::pair_matrix for any thread count.
std::vector<PairMetrics> pair_matrix(const ServiceGraph& graph);

/// Outgoing weight over class count; nullopt when the class count is unknown
/// or zero.
std::optional<double> cbm(const ServiceGraph& graph, const ServiceId& s);
/// Distinct clients of s.
std::uint64_t ais(const ServiceGraph& graph, const ServiceId& s);
/// Distinct services s depends on.
std::uint64_t ads(const ServiceGraph& graph, const ServiceId& s);
std::uint64_t acs(const ServiceGraph& graph, const ServiceId& s);
/// Unordered pairs with dependencies in both directions.
std::uint64_t siy(const ServiceGraph& graph);

/// One row per service, lexicographic.
std::vector<ServiceMetrics> service_metrics(const ServiceGraph& graph);

StatSummary summarize(std::span<const double> values, std::string metric_name);

ProjectSummary project_summary(const ServiceGraph& graph, std::string project_name);

/// Summary built from an already computed pair matrix.
ProjectSummary project_summary(const ServiceGraph& graph, std::string project_name,
                               std::span<const PairMetrics> pairs);

namespace reference {

/// Serial pair matrix built pair by pair from the scalar metric functions.
/// Kept as the baseline for the parallel kernel in tests and benchmarks.
std::vector<PairMetrics> pair_matrix(const ServiceGraph& graph);

}  // namespace reference

/// Worker threads used by the parallel kernels. 0 restores the runtime
/// default. No-op when built without OpenMP.
void set_thread_count(int threads);
int thread_count();

}  // namespace svccoupling
