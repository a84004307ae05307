#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "swapshop/analysis.hpp"
#include "swapshop/error.hpp"

namespace swapshop {

int IsolationReport::num_good() const {
  return static_cast<int>(std::count(good.begin(), good.end(), true));
}

IsolationReport detect_isolation(const Instance& inst, const Solution& L, const Solution& G,
                                 double epsilon) {
  const DistanceOracle d(inst);
  return detect_isolation(inst, d, L, G, epsilon);
}

IsolationReport detect_isolation(const Instance& inst, const DistanceOracle& d,
                                 const Solution& L, const Solution& G, double epsilon) {
  if (!(epsilon > 0) || epsilon >= 0.5) throw Error("epsilon must be in (0, 1/2)");
  if (L.empty() || G.empty()) throw Error("isolation needs nonempty solutions");

  IsolationReport rep;
  rep.epsilon = epsilon;
  rep.local_center = assign_clients(inst, d, L);
  rep.global_center = assign_clients(inst, d, G);
  const std::size_t n = inst.clients.size();

  std::map<int, int> size_L, size_G;
  std::map<std::pair<int, int>, int> overlap;  // (l, f)
  for (std::size_t c = 0; c < n; ++c) {
    ++size_L[rep.local_center[c]];
    ++size_G[rep.global_center[c]];
    ++overlap[{rep.local_center[c], rep.global_center[c]}];
  }
  auto get = [](const auto& m, const auto& key) {
    const auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
  };

  std::set<int> isolated_f, isolated_l;
  std::map<int, std::set<int>> l0_of;
  for (int f : G) {
    const int vg = get(size_G, f);
    IsolatedRegion region{f, {}};
    int shared = 0;
    for (int l : L) {
      const int vl = get(size_L, l);
      const int ov = get(overlap, std::pair{l, f});
      if (vl > 0 && ov >= (1.0 - epsilon) * vl) {
        region.L0.push_back(l);
        shared += ov;
      }
    }
    if (!region.L0.empty() && shared >= (1.0 - epsilon) * vg) {
      for (int l : region.L0) {
        if (!isolated_l.insert(l).second) rep.l_sides_disjoint = false;
      }
      isolated_f.insert(f);
      l0_of[f] = {region.L0.begin(), region.L0.end()};
      rep.isolated_regions.push_back(std::move(region));
    }
    for (int l : L) {
      const int ov = get(overlap, std::pair{l, f});
      if (ov > 0 && ov >= (1.0 - epsilon) * get(size_L, l) && ov >= (1.0 - epsilon) * vg) {
        rep.one_one_pairs.emplace_back(f, l);
      }
    }
  }

  std::set<int> paired;
  for (const auto& [f, l] : rep.one_one_pairs) paired.insert(f);
  rep.k_bar = static_cast<int>(G.size() - paired.size());

  rep.good.assign(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    const int l = rep.local_center[c];
    const int f = rep.global_center[c];
    const auto it = l0_of.find(f);
    if (it != l0_of.end()) {
      rep.good[c] = it->second.count(l) > 0;
    } else {
      rep.good[c] = !isolated_l.count(l);
    }
  }
  return rep;
}

std::vector<ReassignmentCheck> check_reassignment(const Instance& inst, const DistanceOracle& d,
                                                  const IsolationReport& iso, double eps1) {
  if (!(eps1 > 0) || eps1 >= 0.5) throw Error("eps1 must be in (0, 1/2)");
  const int p = inst.p;
  const double eps = iso.epsilon;
  const double second = std::pow(2.0, p) * std::pow(1.0 + eps1, p) * std::pow(eps1, -p) * eps /
                        (1.0 - eps);
  const double first = std::pow(1.0 + eps1, p);
  std::vector<ReassignmentCheck> out;
  for (const auto& region : iso.isolated_regions) {
    const int f0 = region.f0;
    int l_star = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int l : region.L0) {
      const double t = d(f0, l);
      if (t < best) {
        best = t;
        l_star = l;
      }
    }
    auto in_l0 = [&](int l) {
      return std::binary_search(region.L0.begin(), region.L0.end(), l);
    };
    double g2l_lhs = 0, g2l_g = 0, l2g_lhs = 0, l2g_l = 0, mass = 0;
    for (std::size_t i = 0; i < inst.clients.size(); ++i) {
      const int c = inst.clients[i];
      const int l = iso.local_center[i];
      const int f = iso.global_center[i];
      const double gc = ipow(d(c, f), p);
      const double lc = ipow(d(c, l), p);
      if (f == f0) mass += gc + lc;
      if (f == f0 && !in_l0(l)) {
        g2l_lhs += ipow(d(c, l_star), p);
        g2l_g += gc;
      }
      if (in_l0(l) && f != f0) {
        l2g_lhs += ipow(d(c, f0), p);
        l2g_l += lc;
      }
    }
    const double g2l_rhs = first * g2l_g + second * mass;
    const double l2g_rhs = first * l2g_l + second * mass;
    const double tol = 1e-12;
    out.push_back({f0, "global-to-local", g2l_lhs, g2l_rhs,
                   g2l_lhs <= g2l_rhs + tol * std::max(1.0, g2l_rhs)});
    out.push_back({f0, "local-to-global", l2g_lhs, l2g_rhs,
                   l2g_lhs <= l2g_rhs + tol * std::max(1.0, l2g_rhs)});
  }
  return out;
}

}  // namespace swapshop
