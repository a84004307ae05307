#include "swapshop/voronoi.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>
#include <tuple>

#include "swapshop/error.hpp"

namespace swapshop {

std::vector<std::vector<int>> VoronoiPartition::cells() const {
  std::vector<std::vector<int>> out(centers.size());
  for (int v = 0; v < static_cast<int>(cell_of.size()); ++v) {
    const auto it = std::lower_bound(centers.begin(), centers.end(), cell_of[v]);
    out[it - centers.begin()].push_back(v);
  }
  return out;
}

VoronoiPartition voronoi_partition(const Instance& inst, const Solution& s) {
  if (!inst.is_graph()) throw Error("voronoi_partition needs a graph instance");
  if (s.empty()) throw Error("voronoi_partition needs a nonempty center set");
  const auto g = WeightedGraph::from_instance(inst);
  VoronoiPartition part;
  part.centers = s.centers();
  part.cell_of.assign(g.n, -1);
  part.dist.assign(g.n, std::numeric_limits<double>::infinity());

  using Label = std::tuple<double, int, int>;  // dist, center, vertex
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
  for (int c : part.centers) {
    if (c < 0 || c >= g.n) throw Error("center id out of range");
    part.dist[c] = 0.0;
    part.cell_of[c] = c;
    heap.push({0.0, c, c});
  }
  while (!heap.empty()) {
    auto [d, c, v] = heap.top();
    heap.pop();
    if (d != part.dist[v] || c != part.cell_of[v]) continue;
    const auto nbr = g.neighbors(v);
    const auto w = g.weights(v);
    for (std::size_t i = 0; i < nbr.size(); ++i) {
      const int u = nbr[i];
      const double nd = d + w[i];
      if (nd < part.dist[u] || (nd == part.dist[u] && c < part.cell_of[u])) {
        part.dist[u] = nd;
        part.cell_of[u] = c;
        heap.push({nd, c, u});
      }
    }
  }
  return part;
}

ContractedGraph contract(const Instance& inst, const VoronoiPartition& part) {
  if (!inst.is_graph()) throw Error("contract needs a graph instance");
  if (static_cast<int>(part.cell_of.size()) != inst.num_elements) {
    throw Error("partition does not match the instance");
  }
  ContractedGraph out;
  out.centers = part.centers;
  out.hat.resize(inst.num_elements);
  for (int v = 0; v < inst.num_elements; ++v) {
    const auto it = std::lower_bound(out.centers.begin(), out.centers.end(), part.cell_of[v]);
    if (it == out.centers.end() || *it != part.cell_of[v]) {
      throw Error("partition assigns a vertex to a non-center");
    }
    out.hat[v] = static_cast<int>(it - out.centers.begin());
  }
  out.quotient.n = static_cast<int>(out.centers.size());
  for (const auto& e : inst.edges) {
    int a = out.hat[e.u], b = out.hat[e.v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    out.quotient.edges.emplace_back(a, b);
  }
  auto& edges = out.quotient.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return out;
}

bool cells_connected(const Instance& inst, const VoronoiPartition& part) {
  const auto g = WeightedGraph::from_instance(inst);
  std::vector<char> seen(g.n, 0);
  for (int c : part.centers) {
    // BFS from the center restricted to its own cell.
    std::vector<int> stack{c};
    seen[c] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v)) {
        if (!seen[u] && part.cell_of[u] == c) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char x) { return x != 0; });
}

void write_partition(std::ostream& out, const VoronoiPartition& part) {
  out << "# vertex center\n";
  for (std::size_t v = 0; v < part.cell_of.size(); ++v) {
    out << v << ' ' << part.cell_of[v] << '\n';
  }
}

void write_quotient(std::ostream& out, const ContractedGraph& g) {
  out << "# quotient edges over center ids\n";
  for (const auto& [a, b] : g.quotient.edges) {
    out << g.centers[a] << ' ' << g.centers[b] << " 1\n";
  }
}

}  // namespace swapshop
