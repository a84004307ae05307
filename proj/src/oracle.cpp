#include "swapshop/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <optional>

#include "swapshop/error.hpp"

namespace swapshop {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

struct Best {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<int> set;

  void offer(double c, const std::vector<int>& s) {
    if (c < cost || (c == cost && s < set)) {
      cost = c;
      set = s;
    }
  }
};

// Depth-first subset enumeration in lexicographic order. Column-major copy
// of the service table so the per-depth minimum update is contiguous.
class Enumerator {
 public:
  Enumerator(const ServiceTable& t, int max_size, std::optional<double> f)
      : table_(t), clients_(t.num_clients()), max_size_(max_size), f_(f) {
    const int nc = t.num_candidates();
    column_.resize(static_cast<std::size_t>(nc) * clients_);
    for (int c = 0; c < clients_; ++c) {
      const double* row = t.client_row(c);
      for (int j = 0; j < nc; ++j) column_[static_cast<std::size_t>(j) * clients_ + c] = row[j];
    }
  }

  // Visits every set whose smallest element is `first`.
  void run_from(int first, Best& best, std::uint64_t& count) const {
    std::vector<double> mins(static_cast<std::size_t>(max_size_ + 1) * clients_);
    std::vector<int> set{first};
    const double* col = column_.data() + static_cast<std::size_t>(first) * clients_;
    std::copy(col, col + clients_, mins.begin() + clients_);
    visit(1, set, mins, best, count);
  }

 private:
  void visit(int depth, std::vector<int>& set, std::vector<double>& mins, Best& best,
             std::uint64_t& count) const {
    const double* cur = mins.data() + static_cast<std::size_t>(depth) * clients_;
    double service = 0.0;
    for (int c = 0; c < clients_; ++c) service += cur[c];
    const double value = f_ ? service + static_cast<double>(depth) * *f_ : service;
    ++count;
    best.offer(value, set);
    if (depth == max_size_) return;
    if (f_ && static_cast<double>(depth + 1) * *f_ >= best.cost) return;
    double* next = mins.data() + static_cast<std::size_t>(depth + 1) * clients_;
    for (int j = set.back() + 1; j < table_.num_candidates(); ++j) {
      const double* col = column_.data() + static_cast<std::size_t>(j) * clients_;
      for (int c = 0; c < clients_; ++c) next[c] = std::min(cur[c], col[c]);
      set.push_back(j);
      visit(depth + 1, set, mins, best, count);
      set.pop_back();
    }
  }

  const ServiceTable& table_;
  int clients_;
  int max_size_;
  std::optional<double> f_;
  std::vector<double> column_;
};

OracleResult run(const ServiceTable& table, int max_size, std::optional<double> f,
                 const OracleOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const Enumerator en(table, max_size, f);
  const int n = table.num_candidates();
  std::vector<Best> best(n);
  std::vector<std::uint64_t> counts(n, 0);
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) en.run_from(i, best[i], counts[i]);
  } else {
    for (int i = 0; i < n; ++i) en.run_from(i, best[i], counts[i]);
  }
  Best overall;
  OracleResult res;
  for (int i = 0; i < n; ++i) {
    overall.offer(best[i].cost, best[i].set);
    res.enumerated += counts[i];
  }
  std::vector<int> ids;
  for (int j : overall.set) ids.push_back(table.candidate_id(j));
  res.optimum = Solution(std::move(ids));
  res.cost = overall.cost;
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

std::uint64_t oracle_budget_from_env() {
  const char* env = std::getenv("SWAPSHOP_BUDGET");
  if (!env || !*env) return kDefaultOracleBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) return kDefaultOracleBudget;
  return v;
}

std::uint64_t k_clustering_subsets(int candidates, int k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(candidates, j)
  for (int j = 1; j <= std::min(k, candidates); ++j) {
    // C(n, j) = C(n, j-1) * (n-j+1) / j, exact in 128-bit.
    const unsigned __int128 next = static_cast<unsigned __int128>(binom) * (candidates - j + 1) / j;
    binom = next > kSaturated ? kSaturated : static_cast<std::uint64_t>(next);
    total = sat_add(total, binom);
    if (binom == kSaturated) return kSaturated;
  }
  return total;
}

std::uint64_t ufl_subsets(int candidates) {
  if (candidates >= 64) return kSaturated;
  return (std::uint64_t{1} << candidates) - 1;
}

OracleResult exact_k_clustering(const Instance& inst, int k, const OracleOptions& opts) {
  const DistanceOracle d(inst);
  const ServiceTable table(inst, d, opts.parallel);
  return exact_k_clustering(inst, table, k, opts);
}

OracleResult exact_k_clustering(const Instance& inst, const ServiceTable& table, int k,
                                const OracleOptions& opts) {
  if (k < 1) throw Error("k must be >= 1");
  if (inst.opening_cost) throw Error("k-clustering oracle on an instance with an opening cost");
  if (table.num_candidates() == 0) throw Error("empty candidate set");
  const std::uint64_t need = k_clustering_subsets(table.num_candidates(), k);
  if (need > opts.budget) throw BudgetExceeded(need, opts.budget);
  return run(table, std::min(k, table.num_candidates()), std::nullopt, opts);
}

OracleResult exact_ufl(const Instance& inst, const OracleOptions& opts) {
  const DistanceOracle d(inst);
  const ServiceTable table(inst, d, opts.parallel);
  return exact_ufl(inst, table, opts);
}

OracleResult exact_ufl(const Instance& inst, const ServiceTable& table,
                       const OracleOptions& opts) {
  if (!inst.opening_cost) throw Error("facility location oracle needs an opening cost f");
  if (table.num_candidates() == 0) throw Error("empty candidate set");
  const std::uint64_t need = ufl_subsets(table.num_candidates());
  if (need > opts.budget) throw BudgetExceeded(need, opts.budget);
  return run(table, table.num_candidates(), inst.opening_cost, opts);
}

}  // namespace swapshop
