#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "swapshop/instance.hpp"
#include "swapshop/kernels.hpp"
#include "swapshop/metric.hpp"

namespace swapshop {

enum class SearchMode { KClustering, UFL };
enum class InitRule { LowestIds, SeededRandom, Provided };
enum class ScanPolicy { Serial, Parallel };

struct SearchConfig {
  SearchMode mode = SearchMode::KClustering;
  int k = 1;  // k-clustering only
  int s = 1;
  double epsilon = 0.01;  // drives only the (1 - eps/n) threshold
  InitRule init = InitRule::LowestIds;
  std::uint64_t seed = 0;
  std::optional<Solution> initial;  // InitRule::Provided
  std::optional<long long> max_iterations;
  ScanPolicy scan = ScanPolicy::Serial;
};

struct Move {
  std::vector<int> removed;  // element ids, ascending
  std::vector<int> added;
};

struct SwapStep {
  long long iteration = 0;
  Move move;
  double cost_before = 0.0;
  double cost_after = 0.0;
};

enum class Termination { LocalOptimum, IterationCap, ZeroCost };

struct SearchTrace {
  Solution initial;
  double initial_cost = 0.0;
  std::vector<SwapStep> steps;
  Solution final_solution;
  double final_cost = 0.0;
  Termination reason = Termination::LocalOptimum;
  long long moves_evaluated = 0;
};

// First improving move in canonical order, accepted when
// cost(S') <= (1 - eps/|C|) cost(S).
SearchTrace local_search(const Instance& inst, const SearchConfig& config);
SearchTrace local_search(const Instance& inst, const ServiceTable& table,
                         const SearchConfig& config);

// Visits every S' with |S \ S'| + |S' \ S| <= s in canonical order:
// by total size, then removed ids lexicographically, then added ids.
// Only nonempty S' are produced, and |S'| <= k in k-clustering mode.
// The visitor returns false to stop early.
void for_each_swap(const Solution& s, const std::vector<int>& candidates, SearchMode mode, int k,
                   int swap_size, const std::function<bool(const Move&)>& visit);
std::vector<Solution> enumerate_swaps(const Solution& s, const std::vector<int>& candidates,
                                      SearchMode mode, int k, int swap_size);

Solution apply_move(const Solution& s, const Move& m);

// Independent re-check of the loop guard with full cost() evaluations.
// Returns the first improving move if one exists.
std::optional<Move> find_improving_move(const Instance& inst, const DistanceOracle& d,
                                        const Solution& s, SearchMode mode, int k, int swap_size,
                                        double epsilon);
bool is_local_optimum(const Instance& inst, const DistanceOracle& d, const Solution& s,
                      SearchMode mode, int k, int swap_size, double epsilon);

// Same scan through the incremental evaluator, for larger neighbourhoods.
std::optional<Move> first_improving_move(const ServiceTable& table, const Solution& s,
                                         SearchMode mode, int k, int swap_size, double epsilon,
                                         ScanPolicy scan = ScanPolicy::Parallel);

// ln(c0/cT) / -ln(1 - eps/n) + 1; the final zero-cost step is counted
// separately since ln(c0/0) is unbounded.
double iteration_bound(double initial_cost, double final_cost, double epsilon, int n);
bool within_iteration_bound(const SearchTrace& trace, double epsilon, int n);

enum class Setting { Graph, Euclidean, UFL };
constexpr int kDefaultSExponent = 4;
// ceil(1/eps^2) for UFL with p = 1, ceil(1/eps^c) otherwise. Advisory only.
int suggest_s(double epsilon, int p, Setting setting, int c = kDefaultSExponent);

const char* to_string(Termination t);
void write_trace(std::ostream& out, const SearchTrace& trace);

}  // namespace swapshop
