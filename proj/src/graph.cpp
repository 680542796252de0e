#include "svccoupling/graph.hpp"

#include <algorithm>
#include <set>

namespace svccoupling {

ServiceId::ServiceId(std::string name) : name_(std::move(name)) {
  if (!is_valid(name_)) {
    throw Error(ErrorCode::kInvalidServiceId,
                "invalid service id '" + name_ + "'");
  }
}

bool ServiceId::is_valid(std::string_view name) noexcept {
  return !name.empty() && name.find_first_of(",\t\n\r") == std::string_view::npos;
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kCall: return "call";
    case EdgeKind::kCompose: return "compose";
    case EdgeKind::kDeclared: return "declared";
  }
  return "call";
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
  if (text == "call") return EdgeKind::kCall;
  if (text == "compose") return EdgeKind::kCompose;
  if (text == "declared") return EdgeKind::kDeclared;
  return std::nullopt;
}

ServiceGraph ServiceGraph::add_service(ServiceNode node) const& {
  ServiceGraph copy = *this;
  copy.insert_service(std::move(node));
  return copy;
}

ServiceGraph ServiceGraph::add_service(ServiceNode node) && {
  insert_service(std::move(node));
  return std::move(*this);
}

ServiceGraph ServiceGraph::add_dependency(const DependencyEdge& edge) const& {
  ServiceGraph copy = *this;
  copy.insert_dependency(edge);
  return copy;
}

ServiceGraph ServiceGraph::add_dependency(const DependencyEdge& edge) && {
  insert_dependency(edge);
  return std::move(*this);
}

void ServiceGraph::insert_service(ServiceNode node) {
  if (nodes_.contains(node.id)) {
    throw Error(ErrorCode::kDuplicateService,
                "duplicate service '" + node.id.str() + "'");
  }
  ServiceId id = node.id;
  nodes_.emplace(std::move(id), std::move(node));
}

void ServiceGraph::insert_dependency(const DependencyEdge& edge) {
  require(edge.source);
  require(edge.target);
  if (edge.source == edge.target) {
    throw Error(ErrorCode::kSelfDependency,
                "self dependency on '" + edge.source.str() + "'");
  }
  if (edge.weight == 0) {
    throw Error(ErrorCode::kInvalidWeight,
                "dependency " + edge.source.str() + "->" + edge.target.str() +
                    " has weight 0");
  }
  edges_[EdgeKey{edge.source, edge.target, edge.kind}] += edge.weight;
  pair_out_[PairKey{edge.source, edge.target}] += edge.weight;
  out_weight_[edge.source] += edge.weight;
  in_weight_[edge.target] += edge.weight;
  total_weight_ += edge.weight;
}

void ServiceGraph::require(const ServiceId& id) const {
  if (!nodes_.contains(id)) {
    throw Error(ErrorCode::kUnknownService, "unknown service '" + id.str() + "'");
  }
}

void ServiceGraph::require_distinct(const ServiceId& s1, const ServiceId& s2) const {
  require(s1);
  require(s2);
  if (s1 == s2) {
    throw Error(ErrorCode::kSelfDependency,
                "pair query on identical services '" + s1.str() + "'");
  }
}

const ServiceNode& ServiceGraph::node(const ServiceId& id) const {
  require(id);
  return nodes_.find(id)->second;
}

std::vector<ServiceNode> ServiceGraph::nodes() const {
  std::vector<ServiceNode> out;
  out.reserve(nodes_.size());
  for (const auto& [id, node] : nodes_) out.push_back(node);
  return out;
}

std::vector<ServiceId> ServiceGraph::service_ids() const {
  std::vector<ServiceId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, node] : nodes_) out.push_back(id);
  return out;
}

std::vector<DependencyEdge> ServiceGraph::edges() const {
  std::vector<DependencyEdge> out;
  out.reserve(edges_.size());
  for (const auto& [key, weight] : edges_) {
    out.push_back(DependencyEdge{key.source, key.target, weight, key.kind});
  }
  return out;
}

std::uint64_t ServiceGraph::pair_outdegree(const ServiceId& s1,
                                           const ServiceId& s2) const {
  require_distinct(s1, s2);
  auto it = pair_out_.find(PairKey{s1, s2});
  return it == pair_out_.end() ? 0 : it->second;
}

std::uint64_t ServiceGraph::pair_indegree(const ServiceId& s1,
                                          const ServiceId& s2) const {
  return pair_outdegree(s2, s1);
}

std::uint64_t ServiceGraph::pair_degree(const ServiceId& s1,
                                        const ServiceId& s2) const {
  return pair_outdegree(s1, s2) + pair_outdegree(s2, s1);
}

bool ServiceGraph::is_bidirectional(const ServiceId& s1, const ServiceId& s2) const {
  return pair_outdegree(s1, s2) >= 1 && pair_outdegree(s2, s1) >= 1;
}

std::uint64_t ServiceGraph::node_outdegree(const ServiceId& s) const {
  require(s);
  auto it = out_weight_.find(s);
  return it == out_weight_.end() ? 0 : it->second;
}

std::uint64_t ServiceGraph::node_indegree(const ServiceId& s) const {
  require(s);
  auto it = in_weight_.find(s);
  return it == in_weight_.end() ? 0 : it->second;
}

std::uint64_t ServiceGraph::node_degree(const ServiceId& s) const {
  return node_indegree(s) + node_outdegree(s);
}

std::uint64_t ServiceGraph::max_node_degree() const {
  if (nodes_.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "graph has no services");
  }
  std::uint64_t best = 0;
  for (const auto& [id, node] : nodes_) best = std::max(best, node_degree(id));
  return best;
}

std::vector<ServiceId> ServiceGraph::successors(const ServiceId& s) const {
  require(s);
  std::vector<ServiceId> out;
  for (const auto& [key, weight] : pair_out_) {
    if (key.first == s) out.push_back(key.second);
  }
  return out;
}

std::vector<ServiceId> ServiceGraph::predecessors(const ServiceId& s) const {
  require(s);
  std::vector<ServiceId> out;
  for (const auto& [key, weight] : pair_out_) {
    if (key.second == s) out.push_back(key.first);
  }
  return out;
}

std::vector<std::pair<ServiceId, ServiceId>> ServiceGraph::connected_pairs() const {
  std::set<PairKey> pairs;
  for (const auto& [key, weight] : pair_out_) {
    pairs.insert(key);
    pairs.insert(PairKey{key.second, key.first});
  }
  return {pairs.begin(), pairs.end()};
}

std::vector<ServiceId> ServiceGraph::articulation_services() const {
  const std::vector<ServiceId> ids = service_ids();
  const std::size_t n = ids.size();
  auto index_of = [&](const ServiceId& id) {
    return static_cast<std::size_t>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<std::vector<std::size_t>> adjacent(n);
  for (const auto& [key, weight] : pair_out_) {
    const std::size_t a = index_of(key.first);
    const std::size_t b = index_of(key.second);
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  for (auto& list : adjacent) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  // Iterative Hopcroft-Tarjan lowpoint search.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> discovery(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<std::size_t> parent(n, kUnvisited);
  std::vector<std::size_t> next_child(n, 0);
  std::vector<bool> is_cut(n, false);
  std::size_t clock = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (discovery[root] != kUnvisited) continue;
    std::size_t root_children = 0;
    std::vector<std::size_t> stack{root};
    discovery[root] = low[root] = clock++;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      if (next_child[v] < adjacent[v].size()) {
        const std::size_t w = adjacent[v][next_child[v]++];
        if (discovery[w] == kUnvisited) {
          parent[w] = v;
          discovery[w] = low[w] = clock++;
          if (v == root) ++root_children;
          stack.push_back(w);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], discovery[w]);
        }
        continue;
      }
      stack.pop_back();
      const std::size_t p = parent[v];
      if (p != kUnvisited) {
        low[p] = std::min(low[p], low[v]);
        if (p != root && low[v] >= discovery[p]) is_cut[p] = true;
      }
    }
    if (root_children >= 2) is_cut[root] = true;
  }

  std::vector<ServiceId> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_cut[i]) out.push_back(ids[i]);
  }
  return out;
}

}  // namespace svccoupling
