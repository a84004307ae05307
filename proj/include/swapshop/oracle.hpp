#pragma once

#include <cstdint>

#include "swapshop/instance.hpp"
#include "swapshop/kernels.hpp"

namespace swapshop {

struct OracleResult {
  Solution optimum;
  double cost = 0.0;
  std::uint64_t enumerated = 0;
  double elapsed_seconds = 0.0;
};

constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

// kDefaultOracleBudget unless SWAPSHOP_BUDGET holds a positive integer.
std::uint64_t oracle_budget_from_env();

struct OracleOptions {
  std::uint64_t budget = oracle_budget_from_env();
  bool parallel = true;
};

// Number of sets the exhaustive scans would visit (saturating).
std::uint64_t k_clustering_subsets(int candidates, int k);
std::uint64_t ufl_subsets(int candidates);

// All center sets of size 1..k in lexicographic order; the lex-least set
// among those of minimum cost wins. Throws BudgetExceeded.
OracleResult exact_k_clustering(const Instance& inst, int k, const OracleOptions& opts = {});
OracleResult exact_k_clustering(const Instance& inst, const ServiceTable& table, int k,
                                const OracleOptions& opts = {});

// All nonempty subsets; a branch is cut once the opening cost alone reaches
// the incumbent.
OracleResult exact_ufl(const Instance& inst, const OracleOptions& opts = {});
OracleResult exact_ufl(const Instance& inst, const ServiceTable& table,
                       const OracleOptions& opts = {});

}  // namespace swapshop
