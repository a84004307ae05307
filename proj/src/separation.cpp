#include <algorithm>
#include <cmath>
#include <limits>

#include "swapshop/error.hpp"
#include "swapshop/rdivision.hpp"

namespace swapshop {

namespace {

bool within(double lhs, double rhs) { return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs)); }

}  // namespace

SeparationReport verify_separation(const Instance& inst, const DistanceOracle& d,
                                   const ContractedGraph& cg, const GraphRDivision& div,
                                   const std::vector<SeparationQuery>& queries) {
  if (div.num_vertices != cg.quotient.n) {
    throw Error("division was not built over this contracted graph");
  }
  SeparationReport rep;
  for (const auto& q : queries) {
    if (q.c < 0 || q.c >= inst.num_elements || q.v < 0 || q.v >= inst.num_elements) {
      throw Error("malformed query: vertex out of range");
    }
    if (!std::binary_search(cg.centers.begin(), cg.centers.end(), q.v)) {
      throw Error("malformed query: v = " + std::to_string(q.v) + " is not a center");
    }
    ++rep.queries;
    const int ch = cg.hat[q.c];
    const int vh = cg.hat[q.v];
    const double dcv = d(q.c, q.v);
    bool crossing = false;
    for (int i = 0; i < static_cast<int>(div.regions.size()); ++i) {
      const bool hyp = (div.contains(i, ch) && !div.is_internal(i, vh)) ||
                       (div.contains(i, vh) && !div.is_internal(i, ch));
      if (!hyp) continue;
      crossing = true;
      double best = std::numeric_limits<double>::infinity();
      int best_x = -1;
      for (int b : div.regions[i].boundary) {
        const int x = cg.centers[b];
        const double dx = d(q.c, x);
        if (dx < best) {
          best = dx;
          best_x = x;
        }
      }
      if (best_x >= 0 && within(best, dcv)) {
        ++rep.witnesses;
      } else {
        rep.counterexamples.push_back("c=" + std::to_string(q.c) + " v=" + std::to_string(q.v) +
                                      " region=" + std::to_string(i) + ": nearest boundary " +
                                      (best_x < 0 ? std::string("none")
                                                  : "center at distance " + format_number(best)) +
                                      " > " + format_number(dcv));
      }
    }
    if (crossing) ++rep.crossing;
  }
  return rep;
}

SeparationReport verify_separation(const EuclideanRDivision& div,
                                   const std::vector<SeparationQuery>& queries) {
  SeparationReport rep;
  const int dim = div.dimension;
  auto dist = [&](int a, int b) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double t = div.sites[static_cast<std::size_t>(a) * dim + i] -
                       div.sites[static_cast<std::size_t>(b) * dim + i];
      s += t * t;
    }
    return std::sqrt(s);
  };
  for (const auto& q : queries) {
    if (q.c < 0 || q.c >= div.num_points) throw Error("malformed query: c must be an input point");
    if (q.v < 0 || q.v >= div.num_sites()) throw Error("malformed query: v out of range");
    ++rep.queries;
    const auto& region = div.regions[div.region_of[q.c]];
    if (std::binary_search(region.begin(), region.end(), q.v)) continue;
    ++rep.crossing;
    double best = std::numeric_limits<double>::infinity();
    for (int s : region) {
      if (div.is_boundary(s)) best = std::min(best, dist(q.c, s));
    }
    const double dcv = dist(q.c, q.v);
    if (within(best, dcv)) {
      ++rep.witnesses;
    } else {
      rep.counterexamples.push_back("c=" + std::to_string(q.c) + " v=" + std::to_string(q.v) +
                                    ": nearest boundary point at " + format_number(best) + " > " +
                                    format_number(dcv));
    }
  }
  return rep;
}

}  // namespace swapshop
