#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "swapshop/graph.hpp"
#include "swapshop/instance.hpp"

namespace swapshop {

inline double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Immutable after construction; safe to share between threads. The
// on-demand backend fills rows lazily, and concurrent fills of one row are
// allowed (they write identical values).
class DistanceOracle {
 public:
  enum class Backend { Table, OnDemand, Euclidean };

  static constexpr int kDefaultTableThreshold = 4096;

  explicit DistanceOracle(const Instance& inst,
                          int table_threshold = kDefaultTableThreshold);
  DistanceOracle(const Instance& inst, Backend backend);
  ~DistanceOracle();

  DistanceOracle(const DistanceOracle&) = delete;
  DistanceOracle& operator=(const DistanceOracle&) = delete;

  double operator()(int a, int b) const { return distance(a, b); }
  double distance(int a, int b) const;

  // Distances from `source` to every element. Graph backends only.
  std::span<const double> row(int source) const;

  Backend backend() const noexcept { return backend_; }
  int size() const noexcept { return n_; }

 private:
  void check_id(int id) const;

  Backend backend_;
  int n_ = 0;
  WeightedGraph graph_;
  std::vector<double> table_;
  std::unique_ptr<std::atomic<const double*>[]> rows_;
  mutable std::vector<std::unique_ptr<double[]>> row_storage_;
  mutable std::mutex fill_mutex_;
  int dim_ = 0;
  std::vector<double> coords_;
};

struct Assignment {
  int client = 0;  // element id
  int center = 0;
  double value = 0.0;  // dist^p
};

struct CostBreakdown {
  double total = 0.0;
  double service = 0.0;
  double opening = 0.0;
  std::vector<Assignment> per_client;  // in client-list order
};

// Each client goes to the nearest center of S, ties toward the lowest id.
// The opening term |S| * f is added when the instance carries f.
CostBreakdown cost_breakdown(const Instance& inst, const DistanceOracle& d,
                             const Solution& s);
double cost(const Instance& inst, const DistanceOracle& d, const Solution& s);
double cost(const Instance& inst, const Solution& s);

// Nearest center of `s` for each client, same tie rule as cost().
std::vector<int> assign_clients(const Instance& inst, const DistanceOracle& d,
                                const Solution& s);

struct PowerTriangleReport {
  double lhs = 0.0;     // dist(a,b)^p
  double bound1 = 0.0;  // (1+e)^p (dist(a,c)^p + dist(c,b)^p / e^p)
  double bound2 = 0.0;  // 2^p (dist(a,c)^p + dist(c,b)^p)
  bool holds = false;
};

PowerTriangleReport check_power_triangle(const DistanceOracle& d, int a, int b, int c,
                                         int p, double eps1);

}  // namespace swapshop
