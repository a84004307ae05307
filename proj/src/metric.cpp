#include "swapshop/metric.hpp"

#include <cmath>
#include <limits>

#include "swapshop/error.hpp"

namespace swapshop {

DistanceOracle::DistanceOracle(const Instance& inst, int table_threshold)
    : DistanceOracle(inst, !inst.is_graph()                      ? Backend::Euclidean
                           : inst.num_elements <= table_threshold ? Backend::Table
                                                                  : Backend::OnDemand) {}

DistanceOracle::DistanceOracle(const Instance& inst, Backend backend)
    : backend_(backend), n_(inst.num_elements) {
  if (inst.is_graph() == (backend == Backend::Euclidean)) {
    throw Error("distance backend does not match the instance kind");
  }
  switch (backend) {
    case Backend::Table:
      graph_ = WeightedGraph::from_instance(inst);
      table_ = all_pairs_parallel(graph_);
      break;
    case Backend::OnDemand:
      graph_ = WeightedGraph::from_instance(inst);
      rows_ = std::make_unique<std::atomic<const double*>[]>(n_);
      for (int i = 0; i < n_; ++i) rows_[i].store(nullptr, std::memory_order_relaxed);
      row_storage_.resize(n_);
      break;
    case Backend::Euclidean:
      dim_ = inst.dimension;
      coords_ = inst.coords;
      break;
  }
}

DistanceOracle::~DistanceOracle() = default;

void DistanceOracle::check_id(int id) const {
  if (id < 0 || id >= n_) throw Error("unknown element id " + std::to_string(id));
}

std::span<const double> DistanceOracle::row(int source) const {
  check_id(source);
  if (backend_ == Backend::Table) {
    return {table_.data() + static_cast<std::size_t>(source) * n_, static_cast<std::size_t>(n_)};
  }
  if (backend_ != Backend::OnDemand) throw Error("row() needs a graph backend");
  const double* r = rows_[source].load(std::memory_order_acquire);
  if (!r) {
    // Compute outside the lock; the first writer publishes, later ones drop.
    auto fresh = std::make_unique<double[]>(n_);
    dijkstra(graph_, source, std::span<double>(fresh.get(), n_));
    std::lock_guard lock(fill_mutex_);
    r = rows_[source].load(std::memory_order_acquire);
    if (!r) {
      r = fresh.get();
      row_storage_[source] = std::move(fresh);
      rows_[source].store(r, std::memory_order_release);
    }
  }
  return {r, static_cast<std::size_t>(n_)};
}

double DistanceOracle::distance(int a, int b) const {
  check_id(a);
  check_id(b);
  if (backend_ == Backend::Euclidean) {
    const double* pa = coords_.data() + static_cast<std::size_t>(a) * dim_;
    const double* pb = coords_.data() + static_cast<std::size_t>(b) * dim_;
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double t = pa[i] - pb[i];
      s += t * t;
    }
    return std::sqrt(s);
  }
  if (backend_ == Backend::Table) return table_[static_cast<std::size_t>(a) * n_ + b];
  // Rows are symmetric; reuse whichever one is already cached.
  if (rows_[b].load(std::memory_order_acquire) && !rows_[a].load(std::memory_order_acquire)) {
    return row(b)[a];
  }
  return row(a)[b];
}

namespace {

std::pair<int, double> nearest(const DistanceOracle& d, int client, const Solution& s, int p) {
  int best = -1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int u : s) {
    const double v = ipow(d(client, u), p);
    if (v < best_value) {
      best_value = v;
      best = u;
    }
  }
  return {best, best_value};
}

}  // namespace

CostBreakdown cost_breakdown(const Instance& inst, const DistanceOracle& d,
                             const Solution& s) {
  if (s.empty()) throw Error("cost of an empty solution");
  CostBreakdown out;
  out.per_client.reserve(inst.clients.size());
  double service = 0.0;
  for (int c : inst.clients) {
    auto [u, v] = nearest(d, c, s, inst.p);
    service += v;
    out.per_client.push_back({c, u, v});
  }
  out.service = service;
  out.opening = inst.opening_cost ? static_cast<double>(s.size()) * *inst.opening_cost : 0.0;
  out.total = inst.opening_cost ? service + out.opening : service;
  return out;
}

double cost(const Instance& inst, const DistanceOracle& d, const Solution& s) {
  if (s.empty()) throw Error("cost of an empty solution");
  double service = 0.0;
  for (int c : inst.clients) service += nearest(d, c, s, inst.p).second;
  return inst.opening_cost ? service + static_cast<double>(s.size()) * *inst.opening_cost
                           : service;
}

double cost(const Instance& inst, const Solution& s) {
  DistanceOracle d(inst);
  return cost(inst, d, s);
}

std::vector<int> assign_clients(const Instance& inst, const DistanceOracle& d,
                                const Solution& s) {
  if (s.empty()) throw Error("assignment to an empty solution");
  std::vector<int> out;
  out.reserve(inst.clients.size());
  for (int c : inst.clients) out.push_back(nearest(d, c, s, inst.p).first);
  return out;
}

PowerTriangleReport check_power_triangle(const DistanceOracle& d, int a, int b, int c,
                                         int p, double eps1) {
  PowerTriangleReport r;
  const double ac = ipow(d(a, c), p);
  const double cb = ipow(d(c, b), p);
  r.lhs = ipow(d(a, b), p);
  r.bound1 = ipow(1.0 + eps1, p) * (ac + cb / ipow(eps1, p));
  r.bound2 = ipow(2.0, p) * (ac + cb);
  const double slack = 1e-12 * std::max(1.0, r.lhs);
  r.holds = r.lhs <= r.bound1 + slack && r.lhs <= r.bound2 + slack;
  return r;
}

}  // namespace swapshop
