#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "swapshop/analysis.hpp"
#include "swapshop/error.hpp"

namespace swapshop {

std::map<int, int> color_functional_graph(const std::map<int, int>& phi,
                                          const std::vector<int>& vertices) {
  std::map<int, int> color;
  for (int v : vertices) color[v] = -1;
  for (const auto& [f, t] : phi) {
    color.try_emplace(f, -1);
    color.try_emplace(t, -1);
  }
  for (auto& [v, c] : color) {
    if (!phi.count(v)) c = 0;
  }

  // Cycles: walk from each uncoloured vertex until the path repeats.
  std::map<int, int> state;  // 1 on the current walk, 2 done
  for (const auto& [start, unused] : phi) {
    if (state[start]) continue;
    std::vector<int> walk;
    int v = start;
    while (phi.count(v) && !state[v]) {
      state[v] = 1;
      walk.push_back(v);
      v = phi.at(v);
    }
    if (phi.count(v) && state[v] == 1) {
      const auto pos = std::find(walk.begin(), walk.end(), v);
      std::vector<int> cycle(pos, walk.end());
      const auto low = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), low, cycle.end());
      const std::size_t len = cycle.size();
      for (std::size_t i = 0; i < len; ++i) color[cycle[i]] = static_cast<int>(i % 2);
      if (len % 2 == 1) color[cycle.back()] = 2;
    }
    for (int w : walk) state[w] = 2;
  }

  // Tree vertices, successor first.
  for (const auto& [start, unused] : phi) {
    std::vector<int> chain;
    int v = start;
    while (color[v] < 0) {
      chain.push_back(v);
      v = phi.at(v);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      color[*it] = color[phi.at(*it)] == 0 ? 1 : 0;
    }
  }
  return color;
}

DeletionResult delete_centers(const Instance& inst, const Solution& L, const Solution& G,
                              double epsilon) {
  const DistanceOracle d(inst);
  return delete_centers(inst, d, L, G, epsilon);
}

namespace {

bool leq(double lhs, double rhs) { return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs)); }

// Spreads `mass` over bins of the given capacities by raising a common
// level; returns the amount placed in each bin.
std::vector<double> water_fill(const std::vector<double>& cap, double mass) {
  std::vector<double> out(cap.size(), 0.0);
  std::vector<std::size_t> order(cap.size());
  for (std::size_t i = 0; i < cap.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cap[a] < cap[b]; });
  double left = mass;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double level = left / static_cast<double>(order.size() - k);
    const double take = std::min(cap[order[k]], level);
    out[order[k]] = take;
    left -= take;
  }
  return out;
}

}  // namespace

DeletionResult delete_centers(const Instance& inst, const DistanceOracle& d, const Solution& L,
                              const Solution& G, double epsilon) {
  if (!(epsilon > 0) || epsilon >= 0.5) throw Error("epsilon must be in (0, 1/2)");
  if (G.size() < 2) throw Error("deletion needs |G| >= 2");
  const int p = inst.p;
  const IsolationReport iso = detect_isolation(inst, d, L, G, epsilon);

  DeletionResult res;
  res.epsilon = epsilon;
  res.p = p;
  res.k_bar = iso.k_bar;
  res.cost_L = cost(inst, d, L);
  res.cost_before = cost(inst, d, G);
  const double scale = std::pow(2.0, 3 * p + 1);
  res.bound_rhs = (1.0 + scale * epsilon) * res.cost_before + scale * epsilon * res.cost_L;
  res.size_bound = epsilon * epsilon * epsilon * res.k_bar / 6.0;
  res.redirect_bound = scale / (epsilon * epsilon) * (res.cost_L + res.cost_before);

  std::set<int> isolated;
  for (const auto& r : iso.isolated_regions) isolated.insert(r.f0);
  for (int f : G) {
    if (!isolated.count(f)) res.g_tilde.push_back(f);
  }

  for (int f : res.g_tilde) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int g : G) {
      if (g == f) continue;
      const double t = d(f, g);
      if (t < bd) {
        bd = t;
        best = g;
      }
    }
    res.phi[f] = best;
  }
  res.coloring = color_functional_graph(res.phi, G.centers());
  res.dichromatic = true;
  for (const auto& [f, t] : res.phi) {
    if (res.coloring.at(f) == res.coloring.at(t)) res.dichromatic = false;
  }

  // Per-client data shared by the surrogate and redirect computations.
  const std::size_t n = inst.clients.size();
  std::vector<double> g_val(n);
  std::map<int, std::vector<std::size_t>> cell_G;
  std::map<int, int> size_L;
  std::map<std::pair<int, int>, int> overlap;  // (l, f)
  for (std::size_t i = 0; i < n; ++i) {
    g_val[i] = ipow(d(inst.clients[i], iso.global_center[i]), p);
    cell_G[iso.global_center[i]].push_back(i);
    ++size_L[iso.local_center[i]];
    ++overlap[{iso.local_center[i], iso.global_center[i]}];
  }
  auto reroute = [&](int f) {
    double inc = 0.0;
    const auto it = cell_G.find(f);
    if (it == cell_G.end()) return inc;
    for (std::size_t i : it->second) inc += ipow(d(inst.clients[i], res.phi.at(f)), p) - g_val[i];
    return inc;
  };

  // Redirect bookkeeping.
  for (int f : res.g_tilde) {
    res.redirect_surrogate_increase += reroute(f);
    const auto it = cell_G.find(f);
    if (it == cell_G.end()) continue;
    std::vector<int> hat;
    std::vector<double> cap;
    double shared = 0.0;
    for (int l : L) {
      const auto ov = overlap.find({l, f});
      if (ov == overlap.end()) continue;
      if (ov->second >= 1 && ov->second < (1.0 - epsilon) * size_L[l]) {
        hat.push_back(l);
        cap.push_back(ov->second / epsilon);
        shared += ov->second;
      }
    }
    const double mass = static_cast<double>(it->second.size());
    if (!(shared > epsilon * mass)) res.glob2loc_counting = false;
    if (hat.empty()) continue;
    const auto amount = water_fill(cap, mass);
    for (std::size_t j = 0; j < hat.size(); ++j) {
      // psi(l, f): facility of G - {f} closest to l.
      int psi = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (int g : G) {
        if (g == f) continue;
        const double t = d(hat[j], g);
        if (t < bd) {
          bd = t;
          psi = g;
        }
      }
      const double share = amount[j] / mass;
      for (std::size_t i : it->second) {
        res.redirect_fractional_increase +=
            share * (ipow(d(inst.clients[i], psi), p) - g_val[i]);
      }
    }
  }

  if (res.g_tilde.empty()) {
    res.vacuous = true;
    res.cost_after = res.cost_before;
    res.surrogate_cost = res.cost_before;
    res.size_ok = res.size_bound <= 0.0;
    res.cost_ok = leq(res.cost_after, res.bound_rhs);
    res.sound = true;
    return res;
  }

  int best_color = 0;
  std::size_t best_size = 0;
  for (int c = 0; c < 3; ++c) {
    std::size_t size = 0;
    for (int f : res.g_tilde) size += res.coloring.at(f) == c;
    if (size > best_size) {
      best_size = size;
      best_color = c;
    }
  }
  for (int f : res.g_tilde) {
    if (res.coloring.at(f) == best_color) res.color_class.push_back(f);
  }

  const std::size_t want = static_cast<std::size_t>(
      std::ceil(1.0 / (epsilon * epsilon * epsilon) - 1e-9));
  const std::size_t m = std::min(want, res.color_class.size());
  const std::size_t base = res.color_class.size() / m;
  const std::size_t extra = res.color_class.size() % m;
  std::size_t pos = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t len = base + (j < extra ? 1 : 0);
    res.parts.emplace_back(res.color_class.begin() + pos, res.color_class.begin() + pos + len);
    pos += len;
  }

  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& part : res.parts) {
    std::vector<int> rest;
    std::set_difference(G.begin(), G.end(), part.begin(), part.end(), std::back_inserter(rest));
    const double c = cost(inst, d, Solution(std::move(rest)));
    if (c < best_cost) {
      best_cost = c;
      res.S0 = part;
    }
  }
  res.cost_after = best_cost;
  res.surrogate_cost = res.cost_before;
  for (int f : res.S0) res.surrogate_cost += reroute(f);

  res.size_ok = static_cast<double>(res.S0.size()) >= res.size_bound;
  res.cost_ok = leq(res.cost_after, res.bound_rhs);
  res.sound = leq(res.cost_after, res.surrogate_cost);
  return res;
}

}  // namespace swapshop
