#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swapshop/instance.hpp"
#include "swapshop/metric.hpp"

namespace swapshop {

// ---- isolation ------------------------------------------------------------

struct IsolatedRegion {
  int f0 = 0;
  std::vector<int> L0;  // sorted ids
};

struct IsolationReport {
  double epsilon = 0.0;
  std::vector<std::pair<int, int>> one_one_pairs;  // (f in G, l in L)
  std::vector<IsolatedRegion> isolated_regions;    // by ascending f0
  int k_bar = 0;

  // Per client-list position.
  std::vector<int> local_center;
  std::vector<int> global_center;
  std::vector<bool> good;

  bool l_sides_disjoint = true;
  int num_good() const;
};

// V_L and V_G come from assign_clients (lowest id wins ties). A local
// center with an empty cell never joins an L0.
IsolationReport detect_isolation(const Instance& inst, const DistanceOracle& d,
                                 const Solution& L, const Solution& G, double epsilon);
IsolationReport detect_isolation(const Instance& inst, const Solution& L, const Solution& G,
                                 double epsilon);

struct ReassignmentCheck {
  int f0 = 0;
  std::string direction;  // "global-to-local" or "local-to-global"
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Both reassignment inequalities for every isolated region of `iso`.
std::vector<ReassignmentCheck> check_reassignment(const Instance& inst, const DistanceOracle& d,
                                                  const IsolationReport& iso, double eps1);

// ---- deletion ------------------------------------------------------------

struct DeletionResult {
  double epsilon = 0.0;
  int p = 1;
  std::vector<int> g_tilde;        // G minus isolated f0's
  std::map<int, int> phi;          // f in g_tilde -> nearest other facility of G
  std::map<int, int> coloring;     // every f in G -> {0, 1, 2}
  std::vector<int> color_class;    // S
  std::vector<std::vector<int>> parts;
  std::vector<int> S0;

  int k_bar = 0;
  double cost_L = 0.0;
  double cost_before = 0.0;     // cost(G)
  double cost_after = 0.0;      // cost(G \ S0), true nearest reassignment
  double surrogate_cost = 0.0;  // V_G(f) of f in S0 sent to phi(f)
  double bound_rhs = 0.0;
  double size_bound = 0.0;  // eps^3 k_bar / 6

  // Redirect bookkeeping over all of g_tilde.
  double redirect_surrogate_increase = 0.0;
  double redirect_fractional_increase = 0.0;
  double redirect_bound = 0.0;  // 2^(3p+1) eps^-2 (cost(L) + cost(G))
  bool glob2loc_counting = true;

  bool vacuous = false;
  bool size_ok = false;
  bool cost_ok = false;
  bool dichromatic = false;
  bool sound = false;

  bool redirect_ok() const {
    return redirect_surrogate_increase <= redirect_bound &&
           redirect_fractional_increase <= redirect_bound;
  }
  bool passed() const { return size_ok && cost_ok && dichromatic && sound; }
};

// 3-colouring of the functional graph f -> phi(f). Cycles alternate 0/1
// from their lowest id with colour 2 closing odd cycles; tree vertices take
// 1 if their successor has 0 and 0 otherwise; vertices without an arc get 0.
std::map<int, int> color_functional_graph(const std::map<int, int>& phi,
                                          const std::vector<int>& vertices);

DeletionResult delete_centers(const Instance& inst, const DistanceOracle& d, const Solution& L,
                              const Solution& G, double epsilon);
DeletionResult delete_centers(const Instance& inst, const Solution& L, const Solution& G,
                              double epsilon);

// ---- balanced coarsening -------------------------------------------------

struct CoarsenResult {
  std::vector<std::vector<int>> groups;  // indices into the input parts
  int part_limit = 0;                    // ceil(c / eps^5)
  int max_group_parts = 0;
};

constexpr double kCoarsenConstant = 2.0;

// Groups parts so that every group has |group ∩ A| >= |group ∩ B|. Parts
// must be disjoint, sized within [1/(2 eps^2), 1/eps^2], and |A| >= |B|.
CoarsenResult balanced_coarsen(const std::vector<std::vector<int>>& parts,
                               const std::vector<int>& A, const std::vector<int>& B,
                               double epsilon, double c = kCoarsenConstant);

// ---- UFL certifier -------------------------------------------------------

struct RegionRecord {
  int region = 0;
  int v_size = 0;  // |V_i|
  int b_size = 0;  // |B_i|
  int g_prime = 0;  // |G'_i|
  int l_local = 0;  // |L_i|
  int symdiff = 0;  // |M^i xor L|
  bool empty_mixed = false;
  double mixed_cost = 0.0;
  double exchange_slack = 0.0;     // cost(M^i) - cost(L) + cost(L)/n
  double local_rhs = 0.0;     // (|G'_i|-|L_i|) f + sum over assigned clients (g'_c - l_c)
  double local_slack = 0.0;   // local_rhs + cost(L)/n
  int client_violations = 0;  // per-client bounds on m_c that failed
};

struct CertifierReport {
  double epsilon = 0.0;
  int r = 0;
  int regions = 0;
  std::vector<RegionRecord> records;

  double cost_L = 0.0;
  double cost_G = 0.0;
  double cost_G_prime = 0.0;
  int n = 0;  // |C|
  int size_L = 0;
  int size_G = 0;
  long long sum_g_prime = 0;
  long long sum_boundary = 0;
  int max_symdiff = 0;

  bool locally_optimal = false;  // L re-verified at swap size max(1, max_symdiff)
  int verified_swap_size = 0;

  double division_c1 = 0.0;
  double division_c2 = 0.0;
  double c1_fit = 0.0;
  double c2_fit = 0.0;
  double ratio = 0.0;  // cost(L) / cost(G)
  std::optional<double> ratio_bound;  // absent when the denominator is <= 0
  double summed_lhs = 0.0;  // -(regions/n) cost(L)
  double summed_rhs = 0.0;  // (1 + c2 eps) cost(G) - (1 - c2 eps) cost(L)

  bool symdiff_ok = false;
  bool exchange_ok = false;         // vacuously true when not locally optimal
  bool local_ineq_ok = false;  // same
  bool clients_ok = false;
  bool size_ok = false;        // sum |G'_i| <= |G| + sum |B_i|
  bool chain_ok = false;       // summed_lhs <= summed_rhs and ratio <= bound
  bool passed() const {
    return symdiff_ok && exchange_ok && local_ineq_ok && clients_ok && size_ok && chain_ok;
  }
};

// r = max(2, floor(1/eps^2)). Graph instances with an opening cost only.
CertifierReport certify_ufl(const Instance& inst, const DistanceOracle& d, const Solution& L,
                            const Solution& G, double epsilon);
CertifierReport certify_ufl(const Instance& inst, const Solution& L, const Solution& G,
                            double epsilon);

}  // namespace swapshop
