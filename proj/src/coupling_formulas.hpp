#pragma once

#include <cstdint>

namespace svccoupling::detail {

// Shared by the scalar API, the serial reference and the parallel kernel so
// that every path rounds identically.

inline double local_weight(std::uint64_t outdegree, std::uint64_t degree) {
  return static_cast<double>(1 + outdegree) / static_cast<double>(1 + degree);
}

inline double global_weight(std::uint64_t degree, std::uint64_t max_node_degree) {
  return static_cast<double>(degree) / static_cast<double>(max_node_degree);
}

inline double coupling(std::uint64_t degree, double lwf, double gwf) {
  return 1.0 - (1.0 / static_cast<double>(degree)) * lwf * gwf;
}

}  // namespace svccoupling::detail
