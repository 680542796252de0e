#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coupling_formulas.hpp"
#include "svccoupling/metrics.hpp"

namespace svccoupling {
namespace {

struct Cell {
  std::size_t partner;
  std::uint64_t out;
  std::uint64_t in;
};

// Undirected adjacency with per-direction weights. Rows are indexed by the
// position of the service in lexicographic order, and each row is sorted by
// partner index, so walking rows in order yields pairs lexicographically.
struct PairIndex {
  std::vector<ServiceId> ids;
  std::vector<std::vector<Cell>> rows;
  std::uint64_t max_node_degree = 0;
};

PairIndex build_index(const ServiceGraph& graph) {
  PairIndex index;
  index.ids = graph.service_ids();
  const auto n = static_cast<std::int64_t>(index.ids.size());
  index.rows.resize(index.ids.size());

  auto position = [&](const ServiceId& id) {
    return static_cast<std::size_t>(
        std::lower_bound(index.ids.begin(), index.ids.end(), id) - index.ids.begin());
  };
  for (const DependencyEdge& edge : graph.edges()) {
    const std::size_t s = position(edge.source);
    const std::size_t t = position(edge.target);
    index.rows[s].push_back(Cell{t, edge.weight, 0});
    index.rows[t].push_back(Cell{s, 0, edge.weight});
  }

  std::uint64_t max_degree = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : max_degree)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = index.rows[static_cast<std::size_t>(i)];
    std::sort(row.begin(), row.end(),
              [](const Cell& a, const Cell& b) { return a.partner < b.partner; });
    std::vector<Cell> merged;
    merged.reserve(row.size());
    std::uint64_t degree = 0;
    for (const Cell& cell : row) {
      degree += cell.out + cell.in;
      if (!merged.empty() && merged.back().partner == cell.partner) {
        merged.back().out += cell.out;
        merged.back().in += cell.in;
      } else {
        merged.push_back(cell);
      }
    }
    row = std::move(merged);
    max_degree = std::max(max_degree, degree);
  }
  index.max_node_degree = max_degree;
  return index;
}

}  // namespace

std::vector<PairMetrics> pair_matrix(const ServiceGraph& graph) {
  const PairIndex index = build_index(graph);
  const std::size_t n = index.rows.size();

  // Exclusive prefix sum of row lengths gives each row its output slot.
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + index.rows[i].size();

  struct Slot {
    std::size_t s1, s2;
    std::uint64_t out, in;
    double lwf, gwf, sc;
  };
  std::vector<Slot> slots(offsets[n]);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    std::size_t k = offsets[r];
    for (const Cell& cell : index.rows[r]) {
      const std::uint64_t degree = cell.out + cell.in;
      const double lwf = detail::local_weight(cell.out, degree);
      const double gwf = detail::global_weight(degree, index.max_node_degree);
      slots[k++] = Slot{r, cell.partner, cell.out, cell.in, lwf, gwf,
                        detail::coupling(degree, lwf, gwf)};
    }
  }

  std::vector<PairMetrics> out;
  out.reserve(slots.size());
  for (const Slot& slot : slots) {
    out.push_back(PairMetrics{index.ids[slot.s1], index.ids[slot.s2],
                              slot.out + slot.in, slot.out, slot.in, slot.lwf,
                              slot.gwf, slot.sc});
  }
  return out;
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  static const int runtime_default = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : runtime_default);
#else
  (void)threads;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace svccoupling
