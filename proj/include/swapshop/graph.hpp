#pragma once

#include <span>
#include <utility>
#include <vector>

#include "swapshop/instance.hpp"

namespace swapshop {

// Weighted adjacency in CSR form. Parallel edges are kept.
struct WeightedGraph {
  int n = 0;
  std::vector<int> offset;  // n + 1 entries
  std::vector<int> target;
  std::vector<double> weight;

  static WeightedGraph from_instance(const Instance& inst);

  std::span<const int> neighbors(int v) const {
    return {target.data() + offset[v], static_cast<std::size_t>(offset[v + 1] - offset[v])};
  }
  std::span<const double> weights(int v) const {
    return {weight.data() + offset[v], static_cast<std::size_t>(offset[v + 1] - offset[v])};
  }
};

// Single-source shortest paths; unreachable vertices get +inf.
void dijkstra(const WeightedGraph& g, int source, std::span<double> out);
std::vector<double> dijkstra(const WeightedGraph& g, int source);

// Row-major n x n table. The parallel version distributes sources over
// OpenMP threads and produces the same table as the serial one.
std::vector<double> all_pairs_serial(const WeightedGraph& g);
std::vector<double> all_pairs_parallel(const WeightedGraph& g);

// Unweighted edge list used by the r-division code. Edges are identified by
// their index; vertices 0..n-1 may be isolated.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static SimpleGraph from_instance(const Instance& inst);
  std::vector<int> degrees() const;
};

}  // namespace swapshop
