#include <algorithm>
#include <cmath>
#include <set>

#include "swapshop/analysis.hpp"
#include "swapshop/error.hpp"

namespace swapshop {

namespace {

struct Group {
  std::vector<int> parts;
  long long surplus = 0;
};

}  // namespace

CoarsenResult balanced_coarsen(const std::vector<std::vector<int>>& parts,
                               const std::vector<int>& A, const std::vector<int>& B,
                               double epsilon, double c) {
  if (!(epsilon > 0) || epsilon >= 1) throw Error("epsilon must be in (0, 1)");
  const std::set<int> a(A.begin(), A.end());
  const std::set<int> b(B.begin(), B.end());
  if (a.size() < b.size()) throw Error("infeasible: |A| < |B|");

  const double lo = 1.0 / (2.0 * epsilon * epsilon);
  const double hi = 1.0 / (epsilon * epsilon);
  std::set<int> ground;
  std::vector<long long> surplus(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double size = static_cast<double>(parts[i].size());
    if (size < lo - 1e-9 || size > hi + 1e-9) {
      throw Error("part " + std::to_string(i) + " has size " + std::to_string(parts[i].size()) +
                  " outside [1/(2eps^2), 1/eps^2]");
    }
    for (int x : parts[i]) {
      if (!ground.insert(x).second) throw Error("parts are not disjoint");
      surplus[i] += static_cast<long long>(a.count(x)) - static_cast<long long>(b.count(x));
    }
  }
  for (int x : a) {
    if (!ground.count(x)) throw Error("A is not a subset of the ground set");
  }
  for (int x : b) {
    if (!ground.count(x)) throw Error("B is not a subset of the ground set");
  }

  std::vector<Group> open, closed;
  std::vector<int> pool;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (surplus[i] < 0) {
      open.push_back({{static_cast<int>(i)}, surplus[i]});
    } else {
      pool.push_back(static_cast<int>(i));
    }
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [&](int x, int y) { return surplus[x] > surplus[y]; });
  std::size_t next = 0;

  while (!open.empty()) {
    auto worst = std::min_element(open.begin(), open.end(), [](const Group& x, const Group& y) {
      return x.surplus < y.surplus;
    });
    if (next < pool.size()) {
      worst->parts.push_back(pool[next]);
      worst->surplus += surplus[pool[next]];
      ++next;
    } else {
      auto donor = std::max_element(closed.begin(), closed.end(), [](const Group& x,
                                                                     const Group& y) {
        return x.surplus < y.surplus;
      });
      if (donor == closed.end() || donor->surplus <= 0) {
        throw Error("greedy coarsening failed: no surplus left");
      }
      worst->parts.insert(worst->parts.end(), donor->parts.begin(), donor->parts.end());
      worst->surplus += donor->surplus;
      closed.erase(donor);
    }
    if (worst->surplus >= 0) {
      closed.push_back(std::move(*worst));
      open.erase(worst);
    }
  }
  for (; next < pool.size(); ++next) closed.push_back({{pool[next]}, surplus[pool[next]]});

  CoarsenResult res;
  res.part_limit = static_cast<int>(std::ceil(c / std::pow(epsilon, 5) - 1e-9));
  for (auto& g : closed) {
    std::sort(g.parts.begin(), g.parts.end());
    res.max_group_parts = std::max(res.max_group_parts, static_cast<int>(g.parts.size()));
    res.groups.push_back(std::move(g.parts));
  }
  std::sort(res.groups.begin(), res.groups.end());
  if (res.max_group_parts > res.part_limit) {
    throw Error("greedy coarsening produced a group of " + std::to_string(res.max_group_parts) +
                " parts, limit " + std::to_string(res.part_limit));
  }
  return res;
}

}  // namespace swapshop
