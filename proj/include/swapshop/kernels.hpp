#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swapshop/instance.hpp"
#include "swapshop/metric.hpp"

namespace swapshop {

// clients x candidates matrix of dist^p, the only quantity the search and
// the oracle need. Candidate index order equals candidate id order.
class ServiceTable {
 public:
  ServiceTable(const Instance& inst, const DistanceOracle& d, bool parallel = true);

  int num_clients() const noexcept { return clients_; }
  int num_candidates() const noexcept { return static_cast<int>(candidates_.size()); }
  const std::vector<int>& candidates() const noexcept { return candidates_; }
  int candidate_id(int index) const { return candidates_[index]; }
  int candidate_index(int id) const;  // -1 if `id` is not a candidate
  std::optional<double> opening_cost() const noexcept { return opening_; }

  const double* client_row(int client) const {
    return values_.data() + static_cast<std::size_t>(client) * candidates_.size();
  }

  // cost() of a set of candidate indices, computed from scratch.
  double cost(std::span<const int> set) const;

 private:
  int clients_ = 0;
  std::vector<int> candidates_;
  std::vector<double> values_;
  std::optional<double> opening_;
};

// Evaluates swaps against the current solution. Each client keeps the
// current centers sorted by (value, index), so a move removing r and
// adding a centers costs O(r + 1 + a) per client. Results are bit-identical
// to ServiceTable::cost on the resulting set.
class SwapEvaluator {
 public:
  explicit SwapEvaluator(const ServiceTable& table) : table_(&table) {}

  void reset(std::span<const int> solution);  // sorted candidate indices
  const std::vector<int>& solution() const noexcept { return solution_; }

  double evaluate(std::span<const int> removed, std::span<const int> added) const;
  double current_cost() const { return evaluate({}, {}); }

 private:
  const ServiceTable* table_;
  std::vector<int> solution_;
  std::vector<double> sorted_value_;
  std::vector<int> sorted_index_;
};

}  // namespace swapshop
