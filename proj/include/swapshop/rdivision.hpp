#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "swapshop/graph.hpp"
#include "swapshop/instance.hpp"
#include "swapshop/metric.hpp"
#include "swapshop/voronoi.hpp"

namespace swapshop {

struct DivisionStats {
  int regions = 0;
  int max_region_size = 0;
  long long boundary_total = 0;
  double c1 = 0.0;  // regions * r / |V|
  double c2 = 0.0;  // boundary_total * r^(1/d) / |V|   (d = 2 for graphs)
};

struct GraphRegion {
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // edge ids into the divided graph
  std::vector<int> boundary;  // sorted; vertices with an edge outside the region
};

struct GraphRDivision {
  int r = 0;
  int num_vertices = 0;
  std::vector<GraphRegion> regions;
  DivisionStats stats;

  bool is_internal(int region, int v) const;  // in region and not boundary
  bool contains(int region, int v) const;
};

// Recursive BFS-level separators on edge sets. Isolated vertices are packed
// into regions as well, so every vertex belongs to some region.
GraphRDivision graph_r_division(const SimpleGraph& g, int r, bool parallel = false);
GraphRDivision graph_r_division(const Instance& inst, int r, bool parallel = false);

// Problems found by a direct audit of edge ownership and region size plus vertex coverage
// and boundary correctness. Empty means the division is valid.
std::vector<std::string> audit_graph_division(const SimpleGraph& g, const GraphRDivision& div);

struct EuclideanRDivision {
  int r = 0;
  int dimension = 0;
  int num_points = 0;           // |C|; sites 0..num_points-1 are the input points
  std::vector<double> sites;    // row-major coordinates of C followed by Z
  std::vector<std::vector<int>> regions;  // sorted site ids
  std::vector<int> region_of;   // point id -> region index
  int densifications = 0;
  DivisionStats stats;

  int num_sites() const { return static_cast<int>(sites.size()) / dimension; }
  bool is_boundary(int site) const { return site >= num_points; }
};

struct EuclideanDivisionOptions {
  int max_rounds = 60;
  int max_densify = 8;
  int bisector_samples = 16;  // lines per bisector when d >= 3
  std::uint64_t seed = 1;
};

EuclideanRDivision euclidean_r_division(const Instance& points, int r,
                                        const EuclideanDivisionOptions& opts = {});

// Partition of the points, region size and Voronoi separation over all sites.
// Exact in d <= 2, sampled bisector lines for d >= 3.
std::vector<std::string> audit_euclidean_division(const EuclideanRDivision& div,
                                                  const EuclideanDivisionOptions& opts = {});

// True if the Voronoi cells of sites a and b (among all sites) share a
// boundary point, with a small tolerance that errs towards "adjacent".
bool voronoi_adjacent(const EuclideanRDivision& div, int a, int b,
                      const EuclideanDivisionOptions& opts = {});

struct SeparationQuery {
  int c = 0;
  int v = 0;
};

struct SeparationReport {
  int queries = 0;
  int crossing = 0;  // queries where at least one region met the hypothesis
  int witnesses = 0;
  std::vector<std::string> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

// Graph version: `div` divides the quotient of `cg`; v must be a center.
SeparationReport verify_separation(const Instance& inst, const DistanceOracle& d,
                                   const ContractedGraph& cg, const GraphRDivision& div,
                                   const std::vector<SeparationQuery>& queries);

// Euclidean version: c is an input point, v any site of the division.
SeparationReport verify_separation(const EuclideanRDivision& div,
                                   const std::vector<SeparationQuery>& queries);

void write_division(std::ostream& out, const GraphRDivision& div);
void write_division(std::ostream& out, const EuclideanRDivision& div);

}  // namespace swapshop
