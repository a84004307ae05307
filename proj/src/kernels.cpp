#include "swapshop/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "swapshop/error.hpp"

namespace swapshop {

ServiceTable::ServiceTable(const Instance& inst, const DistanceOracle& d, bool parallel)
    : clients_(static_cast<int>(inst.clients.size())),
      candidates_(inst.candidates),
      opening_(inst.opening_cost) {
  std::sort(candidates_.begin(), candidates_.end());
  const std::size_t f = candidates_.size();
  values_.resize(static_cast<std::size_t>(clients_) * f);
  const int p = inst.p;
  auto fill = [&](int ci) {
    const int c = inst.clients[ci];
    double* row = values_.data() + static_cast<std::size_t>(ci) * f;
    if (d.backend() == DistanceOracle::Backend::Euclidean) {
      for (std::size_t j = 0; j < f; ++j) row[j] = ipow(d(c, candidates_[j]), p);
    } else {
      const auto dist = d.row(c);
      for (std::size_t j = 0; j < f; ++j) row[j] = ipow(dist[candidates_[j]], p);
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int ci = 0; ci < clients_; ++ci) fill(ci);
  } else {
    for (int ci = 0; ci < clients_; ++ci) fill(ci);
  }
}

int ServiceTable::candidate_index(int id) const {
  const auto it = std::lower_bound(candidates_.begin(), candidates_.end(), id);
  return it != candidates_.end() && *it == id ? static_cast<int>(it - candidates_.begin()) : -1;
}

double ServiceTable::cost(std::span<const int> set) const {
  if (set.empty()) throw Error("cost of an empty solution");
  double service = 0.0;
  for (int c = 0; c < clients_; ++c) {
    const double* row = client_row(c);
    double best = std::numeric_limits<double>::infinity();
    for (int j : set) best = std::min(best, row[j]);
    service += best;
  }
  return opening_ ? service + static_cast<double>(set.size()) * *opening_ : service;
}

void SwapEvaluator::reset(std::span<const int> solution) {
  solution_.assign(solution.begin(), solution.end());
  const int clients = table_->num_clients();
  const std::size_t k = solution_.size();
  sorted_value_.resize(static_cast<std::size_t>(clients) * k);
  sorted_index_.resize(static_cast<std::size_t>(clients) * k);
  std::vector<std::pair<double, int>> buf(k);
  for (int c = 0; c < clients; ++c) {
    const double* row = table_->client_row(c);
    for (std::size_t j = 0; j < k; ++j) buf[j] = {row[solution_[j]], solution_[j]};
    std::sort(buf.begin(), buf.end());
    for (std::size_t j = 0; j < k; ++j) {
      sorted_value_[c * k + j] = buf[j].first;
      sorted_index_[c * k + j] = buf[j].second;
    }
  }
}

double SwapEvaluator::evaluate(std::span<const int> removed, std::span<const int> added) const {
  const int clients = table_->num_clients();
  const std::size_t k = solution_.size();
  double service = 0.0;
  for (int c = 0; c < clients; ++c) {
    double best = std::numeric_limits<double>::infinity();
    const int* idx = sorted_index_.data() + c * k;
    for (std::size_t j = 0; j < k; ++j) {
      if (std::find(removed.begin(), removed.end(), idx[j]) == removed.end()) {
        best = sorted_value_[c * k + j];
        break;
      }
    }
    const double* row = table_->client_row(c);
    for (int a : added) best = std::min(best, row[a]);
    service += best;
  }
  const auto f = table_->opening_cost();
  if (!f) return service;
  const auto size = static_cast<double>(k - removed.size() + added.size());
  return service + size * *f;
}

}  // namespace swapshop
