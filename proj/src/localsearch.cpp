#include "swapshop/localsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <span>

#include "swapshop/error.hpp"

namespace swapshop {

namespace {

// Canonical move order over arbitrary integer labels (ids or indices).
// `current` and `outside` must be sorted. fn(removed, added) returns false
// to stop; the function then returns false as well.
template <class Fn>
bool enumerate_moves(const std::vector<int>& current, const std::vector<int>& outside,
                     SearchMode mode, int k, int swap_size, Fn&& fn) {
  const int size = static_cast<int>(current.size());
  std::vector<int> removed, added, pick;
  bool go = true;

  auto emit_added = [&](int a) {
    const int out = static_cast<int>(outside.size());
    if (a > out) return;
    const int new_size = size - static_cast<int>(removed.size()) + a;
    if (new_size < 1) return;
    if (mode == SearchMode::KClustering && new_size > k) return;
    pick.resize(a);
    for (int i = 0; i < a; ++i) pick[i] = i;
    while (true) {
      added.resize(a);
      for (int i = 0; i < a; ++i) added[i] = outside[pick[i]];
      if (!fn(std::span<const int>(removed), std::span<const int>(added))) {
        go = false;
        return;
      }
      int i = a - 1;
      while (i >= 0 && pick[i] == out - a + i) --i;
      if (i < 0) return;
      ++pick[i];
      for (int j = i + 1; j < a; ++j) pick[j] = pick[j - 1] + 1;
    }
  };

  for (int total = 1; total <= swap_size && go; ++total) {
    // Removed subsets in lexicographic (DFS pre-) order.
    auto rec = [&](auto&& self, int start) -> void {
      const int r = static_cast<int>(removed.size());
      emit_added(total - r);
      if (!go || r == total) return;
      for (int i = start; i < size && go; ++i) {
        removed.push_back(current[i]);
        self(self, i + 1);
        removed.pop_back();
      }
    };
    rec(rec, 0);
  }
  return go;
}

std::vector<int> complement(const std::vector<int>& universe, const std::vector<int>& set) {
  std::vector<int> out;
  std::set_difference(universe.begin(), universe.end(), set.begin(), set.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> to_ids(const ServiceTable& t, std::span<const int> idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(t.candidate_id(i));
  return out;
}

struct Found {
  std::vector<int> removed, added;
  double value = 0.0;
};

class Scanner {
 public:
  Scanner(const SwapEvaluator& eval, ScanPolicy policy) : eval_(eval), policy_(policy) {}

  std::optional<Found> first_improving(const std::vector<int>& current,
                                       const std::vector<int>& outside, SearchMode mode, int k,
                                       int s, double threshold, long long& evaluated) {
    if (policy_ == ScanPolicy::Serial) {
      std::optional<Found> hit;
      enumerate_moves(current, outside, mode, k, s,
                      [&](std::span<const int> rem, std::span<const int> add) {
                        ++evaluated;
                        const double v = eval_.evaluate(rem, add);
                        if (v <= threshold) {
                          hit = Found{{rem.begin(), rem.end()}, {add.begin(), add.end()}, v};
                          return false;
                        }
                        return true;
                      });
      return hit;
    }
    clear();
    std::optional<Found> hit;
    auto flush = [&] {
      const int count = static_cast<int>(rem_off_.size()) - 1;
      values_.assign(count, 0.0);
#pragma omp parallel for schedule(static)
      for (int i = 0; i < count; ++i) {
        values_[i] = eval_.evaluate(
            std::span<const int>(rem_.data() + rem_off_[i], rem_off_[i + 1] - rem_off_[i]),
            std::span<const int>(add_.data() + add_off_[i], add_off_[i + 1] - add_off_[i]));
      }
      for (int i = 0; i < count; ++i) {
        ++evaluated;
        if (values_[i] <= threshold) {
          hit = Found{{rem_.begin() + rem_off_[i], rem_.begin() + rem_off_[i + 1]},
                      {add_.begin() + add_off_[i], add_.begin() + add_off_[i + 1]},
                      values_[i]};
          return true;
        }
      }
      clear();
      return false;
    };
    const bool finished = enumerate_moves(
        current, outside, mode, k, s, [&](std::span<const int> rem, std::span<const int> add) {
          rem_.insert(rem_.end(), rem.begin(), rem.end());
          add_.insert(add_.end(), add.begin(), add.end());
          rem_off_.push_back(static_cast<int>(rem_.size()));
          add_off_.push_back(static_cast<int>(add_.size()));
          if (rem_off_.size() > kBatch) return !flush();
          return true;
        });
    if (finished && rem_off_.size() > 1) flush();
    return hit;
  }

 private:
  static constexpr std::size_t kBatch = 4096;

  void clear() {
    rem_.clear();
    add_.clear();
    rem_off_.assign(1, 0);
    add_off_.assign(1, 0);
  }

  const SwapEvaluator& eval_;
  ScanPolicy policy_;
  std::vector<int> rem_, add_, rem_off_, add_off_;
  std::vector<double> values_;
};

std::vector<int> initial_indices(const ServiceTable& table, const SearchConfig& cfg) {
  const int f = table.num_candidates();
  const int want = cfg.mode == SearchMode::KClustering ? cfg.k : 1;
  std::vector<int> out;
  switch (cfg.init) {
    case InitRule::LowestIds:
      for (int i = 0; i < want; ++i) out.push_back(i);
      break;
    case InitRule::SeededRandom: {
      std::mt19937_64 rng(cfg.seed);
      std::vector<int> perm(f);
      for (int i = 0; i < f; ++i) perm[i] = i;
      for (int i = f - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
      out.assign(perm.begin(), perm.begin() + want);
      break;
    }
    case InitRule::Provided: {
      if (!cfg.initial || cfg.initial->empty()) throw Error("provided initial solution is empty");
      for (int id : *cfg.initial) {
        const int idx = table.candidate_index(id);
        if (idx < 0) throw Error("initial center " + std::to_string(id) + " is not a candidate");
        out.push_back(idx);
      }
      if (cfg.mode == SearchMode::KClustering && static_cast<int>(out.size()) > cfg.k) {
        throw Error("initial solution has more than k centers");
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_config(const Instance& inst, const ServiceTable& table, const SearchConfig& cfg) {
  if (table.num_candidates() == 0) throw Error("empty candidate set");
  if (cfg.s < 1) throw Error("swap size s must be >= 1");
  if (!(cfg.epsilon > 0) || cfg.epsilon >= 0.5) throw Error("epsilon must be in (0, 1/2)");
  if (inst.clients.empty()) throw Error("instance has no clients");
  if (cfg.mode == SearchMode::KClustering) {
    if (cfg.k < 1 || cfg.k > table.num_candidates()) {
      throw Error("infeasible k = " + std::to_string(cfg.k) + " for " +
                  std::to_string(table.num_candidates()) + " candidates");
    }
    if (inst.opening_cost) throw Error("k-clustering mode on an instance with an opening cost");
  } else if (!inst.opening_cost) {
    throw Error("facility location mode needs an opening cost f");
  }
}

}  // namespace

SearchTrace local_search(const Instance& inst, const SearchConfig& config) {
  const DistanceOracle d(inst);
  const ServiceTable table(inst, d, config.scan == ScanPolicy::Parallel);
  return local_search(inst, table, config);
}

SearchTrace local_search(const Instance& inst, const ServiceTable& table,
                         const SearchConfig& config) {
  check_config(inst, table, config);
  std::vector<int> all(table.num_candidates());
  for (int i = 0; i < table.num_candidates(); ++i) all[i] = i;

  std::vector<int> current = initial_indices(table, config);
  SwapEvaluator eval(table);
  eval.reset(current);
  Scanner scanner(eval, config.scan);

  SearchTrace trace;
  trace.initial = Solution(to_ids(table, current));
  trace.initial_cost = eval.current_cost();
  double cost_now = trace.initial_cost;
  const double n = static_cast<double>(table.num_clients());
  const double factor = 1.0 - config.epsilon / n;

  while (true) {
    if (cost_now <= 0.0) {
      trace.reason = Termination::ZeroCost;
      break;
    }
    if (config.max_iterations &&
        static_cast<long long>(trace.steps.size()) >= *config.max_iterations) {
      trace.reason = Termination::IterationCap;
      break;
    }
    const auto outside = complement(all, current);
    const auto hit = scanner.first_improving(current, outside, config.mode, config.k, config.s,
                                             factor * cost_now, trace.moves_evaluated);
    if (!hit) {
      trace.reason = Termination::LocalOptimum;
      break;
    }
    SwapStep step;
    step.iteration = static_cast<long long>(trace.steps.size()) + 1;
    step.move = {to_ids(table, hit->removed), to_ids(table, hit->added)};
    step.cost_before = cost_now;
    step.cost_after = hit->value;
    trace.steps.push_back(std::move(step));

    std::vector<int> next;
    std::set_difference(current.begin(), current.end(), hit->removed.begin(), hit->removed.end(),
                        std::back_inserter(next));
    next.insert(next.end(), hit->added.begin(), hit->added.end());
    std::sort(next.begin(), next.end());
    current = std::move(next);
    eval.reset(current);
    cost_now = hit->value;
  }
  trace.final_solution = Solution(to_ids(table, current));
  trace.final_cost = cost_now;
  return trace;
}

void for_each_swap(const Solution& s, const std::vector<int>& candidates, SearchMode mode, int k,
                   int swap_size, const std::function<bool(const Move&)>& visit) {
  if (swap_size < 1) throw Error("swap size s must be >= 1");
  std::vector<int> universe = candidates;
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  const auto outside = complement(universe, s.centers());
  Move m;
  enumerate_moves(s.centers(), outside, mode, k, swap_size,
                  [&](std::span<const int> rem, std::span<const int> add) {
                    m.removed.assign(rem.begin(), rem.end());
                    m.added.assign(add.begin(), add.end());
                    return visit(m);
                  });
}

std::vector<Solution> enumerate_swaps(const Solution& s, const std::vector<int>& candidates,
                                      SearchMode mode, int k, int swap_size) {
  std::vector<Solution> out;
  for_each_swap(s, candidates, mode, k, swap_size, [&](const Move& m) {
    out.push_back(apply_move(s, m));
    return true;
  });
  return out;
}

Solution apply_move(const Solution& s, const Move& m) {
  std::vector<int> next;
  std::set_difference(s.begin(), s.end(), m.removed.begin(), m.removed.end(),
                      std::back_inserter(next));
  next.insert(next.end(), m.added.begin(), m.added.end());
  return Solution(std::move(next));
}

std::optional<Move> find_improving_move(const Instance& inst, const DistanceOracle& d,
                                        const Solution& s, SearchMode mode, int k, int swap_size,
                                        double epsilon) {
  const double base = cost(inst, d, s);
  const double threshold = (1.0 - epsilon / static_cast<double>(inst.clients.size())) * base;
  std::optional<Move> found;
  if (base <= 0.0) return found;
  for_each_swap(s, inst.candidates, mode, k, swap_size, [&](const Move& m) {
    if (cost(inst, d, apply_move(s, m)) <= threshold) {
      found = m;
      return false;
    }
    return true;
  });
  return found;
}

bool is_local_optimum(const Instance& inst, const DistanceOracle& d, const Solution& s,
                      SearchMode mode, int k, int swap_size, double epsilon) {
  return !find_improving_move(inst, d, s, mode, k, swap_size, epsilon).has_value();
}

std::optional<Move> first_improving_move(const ServiceTable& table, const Solution& s,
                                         SearchMode mode, int k, int swap_size, double epsilon,
                                         ScanPolicy scan) {
  if (s.empty()) throw Error("empty solution");
  std::vector<int> current;
  for (int id : s) {
    const int idx = table.candidate_index(id);
    if (idx < 0) throw Error("center " + std::to_string(id) + " is not a candidate");
    current.push_back(idx);
  }
  std::vector<int> all(table.num_candidates());
  for (int i = 0; i < table.num_candidates(); ++i) all[i] = i;
  SwapEvaluator eval(table);
  eval.reset(current);
  const double base = eval.current_cost();
  if (base <= 0.0) return std::nullopt;
  const double threshold = (1.0 - epsilon / table.num_clients()) * base;
  Scanner scanner(eval, scan);
  long long evaluated = 0;
  const auto hit = scanner.first_improving(current, complement(all, current), mode, k,
                                           swap_size, threshold, evaluated);
  if (!hit) return std::nullopt;
  return Move{to_ids(table, hit->removed), to_ids(table, hit->added)};
}

double iteration_bound(double initial_cost, double final_cost, double epsilon, int n) {
  if (final_cost <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(initial_cost / final_cost) / -std::log1p(-epsilon / n) + 1.0;
}

bool within_iteration_bound(const SearchTrace& trace, double epsilon, int n) {
  const auto steps = static_cast<double>(trace.steps.size());
  if (trace.steps.empty()) return true;
  if (trace.final_cost > 0.0) {
    return steps <= iteration_bound(trace.initial_cost, trace.final_cost, epsilon, n);
  }
  // The last step reached zero; bound the ones before it.
  const double before = trace.steps.back().cost_before;
  return steps - 1.0 <= iteration_bound(trace.initial_cost, before, epsilon, n);
}

int suggest_s(double epsilon, int p, Setting setting, int c) {
  if (!(epsilon > 0) || epsilon > 0.5) throw Error("suggest_s needs 0 < epsilon <= 1/2");
  const int exponent = setting == Setting::UFL && p == 1 ? 2 : c;
  const double raw = std::pow(1.0 / epsilon, exponent);
  return static_cast<int>(std::ceil(raw * (1.0 - 1e-12)));
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::LocalOptimum:
      return "local-optimum";
    case Termination::IterationCap:
      return "iteration-cap";
    case Termination::ZeroCost:
      return "zero-cost";
  }
  return "?";
}

namespace {

void write_ids(std::ostream& out, const std::vector<int>& ids) {
  if (ids.empty()) {
    out << '-';
    return;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
}

}  // namespace

void write_trace(std::ostream& out, const SearchTrace& trace) {
  for (const auto& step : trace.steps) {
    out << "iteration=" << step.iteration << " removed=";
    write_ids(out, step.move.removed);
    out << " added=";
    write_ids(out, step.move.added);
    out << " cost_before=" << format_number(step.cost_before)
        << " cost_after=" << format_number(step.cost_after) << '\n';
  }
}

}  // namespace swapshop
