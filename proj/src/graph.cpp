#include "swapshop/graph.hpp"

#include <limits>
#include <queue>

#include "swapshop/error.hpp"

namespace swapshop {

WeightedGraph WeightedGraph::from_instance(const Instance& inst) {
  if (!inst.is_graph()) throw Error("graph operation on a Euclidean instance");
  WeightedGraph g;
  g.n = inst.num_elements;
  g.offset.assign(g.n + 1, 0);
  for (const auto& e : inst.edges) {
    ++g.offset[e.u + 1];
    ++g.offset[e.v + 1];
  }
  for (int i = 0; i < g.n; ++i) g.offset[i + 1] += g.offset[i];
  g.target.resize(g.offset[g.n]);
  g.weight.resize(g.offset[g.n]);
  std::vector<int> fill(g.offset.begin(), g.offset.end() - 1);
  for (const auto& e : inst.edges) {
    g.target[fill[e.u]] = e.v;
    g.weight[fill[e.u]++] = e.weight;
    g.target[fill[e.v]] = e.u;
    g.weight[fill[e.v]++] = e.weight;
  }
  return g;
}

void dijkstra(const WeightedGraph& g, int source, std::span<double> out) {
  std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  out[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > out[v]) continue;
    const auto nbr = g.neighbors(v);
    const auto w = g.weights(v);
    for (std::size_t i = 0; i < nbr.size(); ++i) {
      const double nd = d + w[i];
      if (nd < out[nbr[i]]) {
        out[nbr[i]] = nd;
        heap.push({nd, nbr[i]});
      }
    }
  }
}

std::vector<double> dijkstra(const WeightedGraph& g, int source) {
  std::vector<double> out(g.n);
  dijkstra(g, source, out);
  return out;
}

std::vector<double> all_pairs_serial(const WeightedGraph& g) {
  std::vector<double> table(static_cast<std::size_t>(g.n) * g.n);
  for (int s = 0; s < g.n; ++s) {
    dijkstra(g, s, std::span<double>(table.data() + static_cast<std::size_t>(s) * g.n, g.n));
  }
  return table;
}

std::vector<double> all_pairs_parallel(const WeightedGraph& g) {
  std::vector<double> table(static_cast<std::size_t>(g.n) * g.n);
#pragma omp parallel for schedule(dynamic, 8)
  for (int s = 0; s < g.n; ++s) {
    dijkstra(g, s, std::span<double>(table.data() + static_cast<std::size_t>(s) * g.n, g.n));
  }
  return table;
}

SimpleGraph SimpleGraph::from_instance(const Instance& inst) {
  if (!inst.is_graph()) throw Error("graph operation on a Euclidean instance");
  SimpleGraph g;
  g.n = inst.num_elements;
  g.edges.reserve(inst.edges.size());
  for (const auto& e : inst.edges) g.edges.emplace_back(e.u, e.v);
  return g;
}

std::vector<int> SimpleGraph::degrees() const {
  std::vector<int> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

}  // namespace swapshop
