#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "swapshop/graph.hpp"
#include "swapshop/instance.hpp"

namespace swapshop {

// Graph Voronoi cells. Vertex u belongs to the center v minimising
// (dist(u, v), v): the lower id wins ties.
struct VoronoiPartition {
  std::vector<int> centers;  // sorted
  std::vector<int> cell_of;  // vertex -> center id
  std::vector<double> dist;  // vertex -> distance to its center

  std::vector<std::vector<int>> cells() const;  // indexed like `centers`
};

// The quotient G_Vor(S): one vertex per center (in the order of
// `centers`), simple edges between cells joined by an original edge.
struct ContractedGraph {
  std::vector<int> centers;
  std::vector<int> hat;  // original vertex -> quotient vertex
  SimpleGraph quotient;
};

VoronoiPartition voronoi_partition(const Instance& inst, const Solution& s);
ContractedGraph contract(const Instance& inst, const VoronoiPartition& part);

// Fact 1: every cell induces a connected subgraph.
bool cells_connected(const Instance& inst, const VoronoiPartition& part);

// Edge-list dumps: the partition as "vertex center" lines, the quotient as
// an unweighted edge list over center ids.
void write_partition(std::ostream& out, const VoronoiPartition& part);
void write_quotient(std::ostream& out, const ContractedGraph& g);

}  // namespace swapshop
