#include <algorithm>
#include <cmath>
#include <set>

#include "swapshop/analysis.hpp"
#include "swapshop/error.hpp"
#include "swapshop/kernels.hpp"
#include "swapshop/localsearch.hpp"
#include "swapshop/rdivision.hpp"
#include "swapshop/voronoi.hpp"

namespace swapshop {

namespace {

bool leq(double lhs, double rhs) { return lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs)); }

std::vector<int> set_union(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_minus(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_meet(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CertifierReport certify_ufl(const Instance& inst, const Solution& L, const Solution& G,
                            double epsilon) {
  const DistanceOracle d(inst);
  return certify_ufl(inst, d, L, G, epsilon);
}

CertifierReport certify_ufl(const Instance& inst, const DistanceOracle& d, const Solution& L,
                            const Solution& G, double epsilon) {
  if (!inst.is_graph()) throw Error("the UFL certifier handles graph instances only");
  if (!inst.opening_cost) throw Error("the UFL certifier needs an opening cost f");
  if (!(epsilon > 0) || epsilon >= 1) throw Error("epsilon must be in (0, 1)");
  validate_solution(inst, L);
  validate_solution(inst, G);
  const double f = *inst.opening_cost;

  CertifierReport rep;
  rep.epsilon = epsilon;
  rep.r = std::max(2, static_cast<int>(std::floor(1.0 / (epsilon * epsilon) + 1e-9)));
  rep.n = static_cast<int>(inst.clients.size());
  rep.size_L = static_cast<int>(L.size());
  rep.size_G = static_cast<int>(G.size());

  const std::vector<int> F = set_union(L.centers(), G.centers());
  const VoronoiPartition vor = voronoi_partition(inst, Solution(F));
  const ContractedGraph cg = contract(inst, vor);
  const GraphRDivision div = graph_r_division(cg.quotient, rep.r);
  rep.regions = static_cast<int>(div.regions.size());
  rep.division_c1 = div.stats.c1;
  rep.division_c2 = div.stats.c2;

  std::vector<std::vector<int>> V(rep.regions), Bd(rep.regions);
  std::vector<int> g_prime = G.centers();
  for (int i = 0; i < rep.regions; ++i) {
    for (int q : div.regions[i].vertices) V[i].push_back(cg.centers[q]);
    for (int q : div.regions[i].boundary) Bd[i].push_back(cg.centers[q]);
    std::sort(V[i].begin(), V[i].end());
    std::sort(Bd[i].begin(), Bd[i].end());
    g_prime = set_union(g_prime, Bd[i]);
    rep.sum_boundary += static_cast<long long>(Bd[i].size());
  }

  const CostBreakdown costL = cost_breakdown(inst, d, L);
  const CostBreakdown costGp = cost_breakdown(inst, d, Solution(g_prime));
  rep.cost_L = costL.total;
  rep.cost_G = cost(inst, d, G);
  rep.cost_G_prime = costGp.total;

  // Each client is charged to the first region containing its hat vertex.
  std::vector<int> home(inst.clients.size(), -1);
  for (std::size_t c = 0; c < inst.clients.size(); ++c) {
    const int q = cg.hat[inst.clients[c]];
    for (int i = 0; i < rep.regions && home[c] < 0; ++i) {
      if (div.contains(i, q)) home[c] = i;
    }
  }

  rep.records.resize(rep.regions);
  const double n = static_cast<double>(rep.n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < rep.regions; ++i) {
    RegionRecord& rec = rep.records[i];
    rec.region = i;
    rec.v_size = static_cast<int>(V[i].size());
    rec.b_size = static_cast<int>(Bd[i].size());
    const auto L_i = set_meet(L.centers(), V[i]);
    const auto G_i = set_meet(g_prime, V[i]);
    rec.l_local = static_cast<int>(L_i.size());
    rec.g_prime = static_cast<int>(G_i.size());
    const auto M = set_union(set_minus(L.centers(), L_i), G_i);
    rec.symdiff = static_cast<int>(set_minus(M, L.centers()).size() +
                                   set_minus(L.centers(), M).size());
    double assigned = 0.0;
    for (std::size_t c = 0; c < inst.clients.size(); ++c) {
      if (home[c] == i) assigned += costGp.per_client[c].value - costL.per_client[c].value;
    }
    rec.local_rhs = (rec.g_prime - rec.l_local) * f + assigned;
    rec.local_slack = rec.local_rhs + rep.cost_L / n;
    if (M.empty()) {
      rec.empty_mixed = true;
      continue;
    }
    const CostBreakdown costM = cost_breakdown(inst, d, Solution(M));
    rec.mixed_cost = costM.total;
    rec.exchange_slack = costM.total - rep.cost_L + rep.cost_L / n;
    for (std::size_t c = 0; c < inst.clients.size(); ++c) {
      const int q = cg.hat[inst.clients[c]];
      const double m = costM.per_client[c].value;
      if (div.contains(i, q) && !leq(m, costGp.per_client[c].value)) ++rec.client_violations;
      if (!div.is_internal(i, q) && !leq(m, costL.per_client[c].value)) ++rec.client_violations;
    }
  }

  for (const auto& rec : rep.records) {
    rep.max_symdiff = std::max(rep.max_symdiff, rec.symdiff);
    rep.sum_g_prime += rec.g_prime;
  }

  rep.verified_swap_size = std::max(1, rep.max_symdiff);
  {
    const ServiceTable table(inst, d);
    rep.locally_optimal = !first_improving_move(table, L, SearchMode::UFL, 0,
                                                rep.verified_swap_size, epsilon)
                               .has_value();
  }

  rep.symdiff_ok = rep.max_symdiff <= rep.r;
  rep.clients_ok = true;
  rep.exchange_ok = true;
  rep.local_ineq_ok = true;
  for (const auto& rec : rep.records) {
    if (rec.client_violations > 0) rep.clients_ok = false;
    if (!rep.locally_optimal || rec.empty_mixed) continue;
    if (!leq(0.0, rec.exchange_slack)) rep.exchange_ok = false;
    if (!leq(0.0, rec.local_slack)) rep.local_ineq_ok = false;
  }
  rep.size_ok = rep.sum_g_prime <= rep.size_G + rep.sum_boundary;

  const double denom_sizes = static_cast<double>(rep.size_G + rep.size_L);
  rep.c2_fit = static_cast<double>(rep.sum_boundary) / (epsilon * denom_sizes);
  rep.c1_fit = static_cast<double>(rep.regions) / (epsilon * epsilon * n);
  rep.ratio = rep.cost_L / rep.cost_G;
  const double c2e = rep.c2_fit * epsilon;
  rep.summed_lhs = -static_cast<double>(rep.regions) / n * rep.cost_L;
  rep.summed_rhs = (1.0 + c2e) * rep.cost_G - (1.0 - c2e) * rep.cost_L;
  const double denom = 1.0 - c2e - rep.c1_fit * epsilon * epsilon;
  if (denom > 0) rep.ratio_bound = (1.0 + c2e) / denom;
  if (rep.locally_optimal) {
    rep.chain_ok = leq(rep.summed_lhs, rep.summed_rhs) &&
                   (!rep.ratio_bound || leq(rep.ratio, *rep.ratio_bound));
  } else {
    rep.chain_ok = true;
  }
  return rep;
}

}  // namespace swapshop
