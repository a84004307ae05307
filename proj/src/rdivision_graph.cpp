#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "swapshop/error.hpp"
#include "swapshop/rdivision.hpp"

namespace swapshop {

namespace {

using EdgeSet = std::vector<int>;

struct Piece {
  std::vector<int> verts;  // sorted global ids
  std::vector<std::vector<std::pair<int, int>>> adj;  // local: (neighbor local, edge id)

  Piece(const SimpleGraph& g, const EdgeSet& eids) {
    for (int e : eids) {
      verts.push_back(g.edges[e].first);
      verts.push_back(g.edges[e].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    adj.resize(verts.size());
    for (int e : eids) {
      const int a = local(g.edges[e].first), b = local(g.edges[e].second);
      adj[a].push_back({b, e});
      adj[b].push_back({a, e});
    }
  }

  int local(int v) const {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  }
  int size() const { return static_cast<int>(verts.size()); }

  std::vector<int> bfs(int root, std::vector<int>* order = nullptr) const {
    std::vector<int> level(verts.size(), -1);
    std::vector<int> queue{root};
    level[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (auto [u, e] : adj[v]) {
        if (level[u] < 0) {
          level[u] = level[v] + 1;
          queue.push_back(u);
        }
      }
    }
    if (order) *order = std::move(queue);
    return level;
  }
};

class Divider {
 public:
  Divider(const SimpleGraph& g, int r, bool parallel) : g_(g), r_(r), parallel_(parallel) {}

  std::vector<EdgeSet> run(EdgeSet eids) const {
    std::vector<EdgeSet> out;
    if (!eids.empty()) split(std::move(eids), out);
    return out;
  }

 private:
  void split(EdgeSet eids, std::vector<EdgeSet>& out) const {
    const Piece piece(g_, eids);
    if (piece.size() <= r_) {
      out.push_back(std::move(eids));
      return;
    }
    auto comps = components(piece);
    if (comps.size() > 1) {
      split_components(piece, comps, out);
      return;
    }
    auto [a, b] = separate(piece, eids);
    recurse_pair(std::move(a), std::move(b), out);
  }

  void recurse_pair(EdgeSet a, EdgeSet b, std::vector<EdgeSet>& out) const {
    std::vector<EdgeSet> left, right;
    if (parallel_ && a.size() + b.size() > 4096) {
#pragma omp task shared(left) firstprivate(a)
      split(std::move(a), left);
#pragma omp task shared(right) firstprivate(b)
      split(std::move(b), right);
#pragma omp taskwait
    } else {
      split(std::move(a), left);
      if (!b.empty()) split(std::move(b), right);
    }
    for (auto& x : left) out.push_back(std::move(x));
    for (auto& x : right) out.push_back(std::move(x));
  }

  // Connected components as lists of edge ids, ordered by smallest vertex.
  std::vector<EdgeSet> components(const Piece& piece) const {
    std::vector<int> comp(piece.size(), -1);
    int count = 0;
    for (int s = 0; s < piece.size(); ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = count;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (auto [u, e] : piece.adj[v]) {
          if (comp[u] < 0) {
            comp[u] = count;
            stack.push_back(u);
          }
        }
      }
      ++count;
    }
    std::vector<EdgeSet> out(count);
    std::vector<char> taken(g_.edges.size(), 0);
    for (int v = 0; v < piece.size(); ++v) {
      for (auto [u, e] : piece.adj[v]) {
        if (!taken[e]) {
          taken[e] = 1;
          out[comp[v]].push_back(e);
        }
      }
    }
    for (auto& c : out) std::sort(c.begin(), c.end());
    return out;
  }

  int vertex_count(const EdgeSet& eids) const {
    std::vector<int> vs;
    for (int e : eids) {
      vs.push_back(g_.edges[e].first);
      vs.push_back(g_.edges[e].second);
    }
    std::sort(vs.begin(), vs.end());
    return static_cast<int>(std::unique(vs.begin(), vs.end()) - vs.begin());
  }

  void split_components(const Piece&, std::vector<EdgeSet>& comps,
                        std::vector<EdgeSet>& out) const {
    // Small components are packed first-fit; large ones recurse.
    std::vector<EdgeSet> bins;
    std::vector<int> bin_size;
    for (auto& c : comps) {
      const int size = vertex_count(c);
      if (size > r_) {
        split(std::move(c), out);
        continue;
      }
      bool placed = false;
      for (std::size_t i = 0; i < bins.size() && !placed; ++i) {
        if (bin_size[i] + size <= r_) {
          bins[i].insert(bins[i].end(), c.begin(), c.end());
          bin_size[i] += size;
          placed = true;
        }
      }
      if (!placed) {
        bins.push_back(std::move(c));
        bin_size.push_back(size);
      }
    }
    for (auto& b : bins) {
      std::sort(b.begin(), b.end());
      out.push_back(std::move(b));
    }
  }

  std::pair<EdgeSet, EdgeSet> separate(const Piece& piece, const EdgeSet& eids) const {
    // Pseudo-peripheral root: two sweeps from the smallest vertex.
    int root = 0;
    for (int sweep = 0; sweep < 2; ++sweep) {
      const auto level = piece.bfs(root);
      root = static_cast<int>(std::max_element(level.begin(), level.end()) - level.begin());
    }
    std::vector<int> order;
    const auto level = piece.bfs(root, &order);
    const int depth = *std::max_element(level.begin(), level.end());
    if (depth >= 2) {
      std::vector<int> width(depth + 1, 0);
      for (int l : level) ++width[l];
      std::vector<int> prefix(depth + 2, 0);
      for (int i = 0; i <= depth; ++i) prefix[i + 1] = prefix[i] + width[i];
      const int total = piece.size();
      int best = -1, best_balanced = -1;
      for (int l = 1; l < depth; ++l) {
        const int a = prefix[l + 1];
        const int b = total - prefix[l];
        const int big = std::max(a, b);
        if (4 * big <= 3 * total && (best < 0 || width[l] < width[best])) best = l;
        if (best_balanced < 0) {
          best_balanced = l;
        } else {
          const int cur = std::max(prefix[best_balanced + 1], total - prefix[best_balanced]);
          if (big < cur) best_balanced = l;
        }
      }
      const int cut = best >= 0 ? best : best_balanced;
      EdgeSet a, b;
      for (int e : eids) {
        const int lu = level[piece.local(g_.edges[e].first)];
        const int lv = level[piece.local(g_.edges[e].second)];
        if (std::max(lu, lv) <= cut && std::min(lu, lv) < cut) {
          a.push_back(e);
        } else {
          b.push_back(e);
        }
      }
      return {std::move(a), std::move(b)};
    }
    // Shallow piece (e.g. a star): peel the first r vertices in BFS order.
    std::vector<char> in_head(piece.size(), 0);
    for (int i = 0; i < r_ && i < static_cast<int>(order.size()); ++i) in_head[order[i]] = 1;
    EdgeSet a, b;
    for (int e : eids) {
      const int lu = piece.local(g_.edges[e].first);
      const int lv = piece.local(g_.edges[e].second);
      (in_head[lu] && in_head[lv] ? a : b).push_back(e);
    }
    return {std::move(a), std::move(b)};
  }

  const SimpleGraph& g_;
  int r_;
  bool parallel_;
};

}  // namespace

bool GraphRDivision::contains(int region, int v) const {
  const auto& vs = regions[region].vertices;
  return std::binary_search(vs.begin(), vs.end(), v);
}

bool GraphRDivision::is_internal(int region, int v) const {
  const auto& b = regions[region].boundary;
  return contains(region, v) && !std::binary_search(b.begin(), b.end(), v);
}

GraphRDivision graph_r_division(const SimpleGraph& g, int r, bool parallel) {
  if (r < 2) throw Error("r-division needs r >= 2");
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) throw Error("edge endpoint out of range");
  }
  EdgeSet all(g.edges.size());
  std::iota(all.begin(), all.end(), 0);
  const Divider divider(g, r, parallel);
  std::vector<EdgeSet> sets;
  if (parallel) {
#pragma omp parallel
#pragma omp single
    sets = divider.run(std::move(all));
  } else {
    sets = divider.run(std::move(all));
  }

  const auto deg = g.degrees();
  GraphRDivision div;
  div.r = r;
  div.num_vertices = g.n;
  for (auto& eids : sets) {
    GraphRegion region;
    std::sort(eids.begin(), eids.end());
    region.edges = std::move(eids);
    std::vector<int> local_deg;
    for (int e : region.edges) {
      region.vertices.push_back(g.edges[e].first);
      region.vertices.push_back(g.edges[e].second);
    }
    std::sort(region.vertices.begin(), region.vertices.end());
    region.vertices.erase(std::unique(region.vertices.begin(), region.vertices.end()),
                          region.vertices.end());
    local_deg.assign(region.vertices.size(), 0);
    for (int e : region.edges) {
      for (int v : {g.edges[e].first, g.edges[e].second}) {
        ++local_deg[std::lower_bound(region.vertices.begin(), region.vertices.end(), v) -
                    region.vertices.begin()];
      }
    }
    for (std::size_t i = 0; i < region.vertices.size(); ++i) {
      if (local_deg[i] < deg[region.vertices[i]]) region.boundary.push_back(region.vertices[i]);
    }
    div.regions.push_back(std::move(region));
  }
  GraphRegion loose;
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] != 0) continue;
    loose.vertices.push_back(v);
    if (static_cast<int>(loose.vertices.size()) == r) {
      div.regions.push_back(std::move(loose));
      loose = {};
    }
  }
  if (!loose.vertices.empty()) div.regions.push_back(std::move(loose));

  auto& st = div.stats;
  st.regions = static_cast<int>(div.regions.size());
  for (const auto& region : div.regions) {
    st.max_region_size = std::max(st.max_region_size, static_cast<int>(region.vertices.size()));
    st.boundary_total += static_cast<long long>(region.boundary.size());
  }
  const double n = std::max(1, g.n);
  st.c1 = st.regions * static_cast<double>(r) / n;
  st.c2 = static_cast<double>(st.boundary_total) * std::sqrt(static_cast<double>(r)) / n;
  return div;
}

GraphRDivision graph_r_division(const Instance& inst, int r, bool parallel) {
  return graph_r_division(SimpleGraph::from_instance(inst), r, parallel);
}

std::vector<std::string> audit_graph_division(const SimpleGraph& g, const GraphRDivision& div) {
  std::vector<std::string> problems;
  std::vector<int> edge_count(g.edges.size(), 0);
  std::vector<char> covered(g.n, 0);
  const auto deg = g.degrees();
  for (std::size_t i = 0; i < div.regions.size(); ++i) {
    const auto& region = div.regions[i];
    const std::string tag = "region " + std::to_string(i) + ": ";
    if (static_cast<int>(region.vertices.size()) > div.r) {
      problems.push_back(tag + std::to_string(region.vertices.size()) + " vertices > r");
    }
    std::vector<int> local_deg(region.vertices.size(), 0);
    for (int e : region.edges) {
      if (e < 0 || e >= static_cast<int>(g.edges.size())) {
        problems.push_back(tag + "bad edge id");
        continue;
      }
      ++edge_count[e];
      for (int v : {g.edges[e].first, g.edges[e].second}) {
        auto it = std::lower_bound(region.vertices.begin(), region.vertices.end(), v);
        if (it == region.vertices.end() || *it != v) {
          problems.push_back(tag + "edge endpoint missing from vertex list");
        } else {
          ++local_deg[it - region.vertices.begin()];
        }
      }
    }
    for (std::size_t j = 0; j < region.vertices.size(); ++j) {
      const int v = region.vertices[j];
      covered[v] = 1;
      const bool boundary = local_deg[j] < deg[v];
      if (boundary != std::binary_search(region.boundary.begin(), region.boundary.end(), v)) {
        problems.push_back(tag + "boundary set wrong at vertex " + std::to_string(v));
      }
      if (local_deg[j] == 0 && deg[v] != 0) {
        problems.push_back(tag + "vertex " + std::to_string(v) + " without region edges");
      }
    }
  }
  for (std::size_t e = 0; e < edge_count.size(); ++e) {
    if (edge_count[e] != 1) {
      problems.push_back("edge " + std::to_string(e) + " in " + std::to_string(edge_count[e]) +
                         " regions");
    }
  }
  for (int v = 0; v < g.n; ++v) {
    if (!covered[v]) problems.push_back("vertex " + std::to_string(v) + " in no region");
  }
  return problems;
}

void write_division(std::ostream& out, const GraphRDivision& div) {
  out << "r=" << div.r << "\nregions=" << div.stats.regions
      << "\nmax_region_size=" << div.stats.max_region_size
      << "\nboundary_total=" << div.stats.boundary_total << "\nc1=" << format_number(div.stats.c1)
      << "\nc2=" << format_number(div.stats.c2) << '\n';
  for (std::size_t i = 0; i < div.regions.size(); ++i) {
    out << "\n[region " << i << "]\nmembers=";
    const auto& region = div.regions[i];
    for (std::size_t j = 0; j < region.vertices.size(); ++j) {
      out << (j ? "," : "") << region.vertices[j];
    }
    out << "\nboundary=";
    for (std::size_t j = 0; j < region.boundary.size(); ++j) {
      out << (j ? "," : "") << region.boundary[j];
    }
    out << '\n';
  }
}

}  // namespace swapshop
