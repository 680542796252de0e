#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svccoupling/error.hpp"

namespace svccoupling {

/// Name of a service. Non-empty and free of newline, carriage return, comma
/// and tab so it can be emitted verbatim into CSV and DOT output.
class ServiceId {
 public:
  explicit ServiceId(std::string name);
  ServiceId(const char* name) : ServiceId(std::string(name)) {}

  const std::string& str() const noexcept { return name_; }

  static bool is_valid(std::string_view name) noexcept;

  friend auto operator<=>(const ServiceId&, const ServiceId&) = default;
  friend bool operator==(const ServiceId&, const ServiceId&) = default;

 private:
  std::string name_;
};

struct ServiceNode {
  ServiceId id;
  std::optional<std::uint64_t> class_count;
  std::optional<std::uint64_t> loc;

  friend bool operator==(const ServiceNode&, const ServiceNode&) = default;
};

/// Origin of a dependency record. Carried for provenance only; no metric
/// distinguishes kinds.
enum class EdgeKind { kCall, kCompose, kDeclared };

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

struct DependencyEdge {
  ServiceId source;
  ServiceId target;
  std::uint64_t weight = 1;
  EdgeKind kind = EdgeKind::kCall;

  friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

/// Directed, weighted service dependency multigraph.
///
/// Values are built by accumulation: add_service/add_dependency return a new
/// graph and leave the receiver untouched (the rvalue overloads reuse the
/// receiver's storage). A finished graph is never mutated, so concurrent
/// readers need no synchronization.
///
/// Records sharing (source, target, kind) are merged by summing weights.
/// All degree queries sum weights across kinds.
class ServiceGraph {
 public:
  ServiceGraph() = default;

  ServiceGraph add_service(ServiceNode node) const&;
  ServiceGraph add_service(ServiceNode node) &&;
  ServiceGraph add_dependency(const DependencyEdge& edge) const&;
  ServiceGraph add_dependency(const DependencyEdge& edge) &&;

  std::size_t service_count() const noexcept { return nodes_.size(); }
  /// Number of merged (source, target, kind) records.
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::uint64_t total_weight() const noexcept { return total_weight_; }

  bool contains(const ServiceId& id) const { return nodes_.contains(id); }
  const ServiceNode& node(const ServiceId& id) const;

  /// Nodes in lexicographic id order.
  std::vector<ServiceNode> nodes() const;
  std::vector<ServiceId> service_ids() const;
  /// Merged edge records ordered by (source, target, kind).
  std::vector<DependencyEdge> edges() const;

  std::uint64_t pair_outdegree(const ServiceId& s1, const ServiceId& s2) const;
  std::uint64_t pair_indegree(const ServiceId& s1, const ServiceId& s2) const;
  std::uint64_t pair_degree(const ServiceId& s1, const ServiceId& s2) const;
  bool is_bidirectional(const ServiceId& s1, const ServiceId& s2) const;

  std::uint64_t node_outdegree(const ServiceId& s) const;
  std::uint64_t node_indegree(const ServiceId& s) const;
  std::uint64_t node_degree(const ServiceId& s) const;
  /// Throws kEmptyGraph when there are no services.
  std::uint64_t max_node_degree() const;

  /// Distinct services s calls (pair_outdegree(s, t) >= 1), in id order.
  std::vector<ServiceId> successors(const ServiceId& s) const;
  /// Distinct services calling s, in id order.
  std::vector<ServiceId> predecessors(const ServiceId& s) const;

  /// Every ordered (s1, s2) with pair_degree >= 1, both orientations,
  /// lexicographic.
  std::vector<std::pair<ServiceId, ServiceId>> connected_pairs() const;

  /// Articulation points of the undirected simple projection.
  std::vector<ServiceId> articulation_services() const;

  friend bool operator==(const ServiceGraph&, const ServiceGraph&) = default;

 private:
  struct EdgeKey {
    ServiceId source;
    ServiceId target;
    EdgeKind kind;
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  };
  using PairKey = std::pair<ServiceId, ServiceId>;

  void insert_service(ServiceNode node);
  void insert_dependency(const DependencyEdge& edge);
  void require(const ServiceId& id) const;
  void require_distinct(const ServiceId& s1, const ServiceId& s2) const;

  std::map<ServiceId, ServiceNode> nodes_;
  std::map<EdgeKey, std::uint64_t> edges_;
  // Derived views kept in step with edges_.
  std::map<PairKey, std::uint64_t> pair_out_;
  std::map<ServiceId, std::uint64_t> out_weight_;
  std::map<ServiceId, std::uint64_t> in_weight_;
  std::uint64_t total_weight_ = 0;
};

}  // namespace svccoupling
