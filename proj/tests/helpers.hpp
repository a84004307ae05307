#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "swapshop/instance.hpp"
#include "swapshop/metric.hpp"

namespace swapshop::fixtures {

inline Instance path3(std::optional<double> f = std::nullopt, int p = 1) {
  Instance inst = parse_instance_text("0 1 1\n1 2 1\n", InstanceFormat::EdgeList);
  inst.opening_cost = f;
  inst.p = p;
  return inst;
}

inline Instance points(const std::vector<std::vector<double>>& pts, int p = 2) {
  Instance inst;
  inst.kind = MetricKind::Euclidean;
  inst.dimension = static_cast<int>(pts.front().size());
  inst.num_elements = static_cast<int>(pts.size());
  for (const auto& q : pts) inst.coords.insert(inst.coords.end(), q.begin(), q.end());
  for (int i = 0; i < inst.num_elements; ++i) {
    inst.clients.push_back(i);
    inst.candidates.push_back(i);
  }
  inst.p = p;
  inst.validate();
  return inst;
}

struct BruteForce {
  Solution best;
  double cost = std::numeric_limits<double>::infinity();
};

// Independent reference: every subset of the candidates by bitmask, costed
// through cost(). Lex-least among minima.
inline BruteForce brute_force(const Instance& inst, int max_size) {
  const DistanceOracle d(inst);
  const auto& cand = inst.candidates;
  const int n = static_cast<int>(cand.size());
  BruteForce out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) ids.push_back(cand[i]);
    }
    if (static_cast<int>(ids.size()) > max_size) continue;
    Solution s(ids);
    const double c = cost(inst, d, s);
    if (c < out.cost || (c == out.cost && s < out.best)) {
      out.cost = c;
      out.best = s;
    }
  }
  return out;
}

}  // namespace swapshop::fixtures
