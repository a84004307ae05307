#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swapshop {

enum class MetricKind { Graph, Euclidean };

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

// A clustering / facility-location instance. Element ids are dense
// 0..num_elements-1 (graph vertices or points). Client multiplicity is
// modelled by repetition in `clients`.
struct Instance {
  MetricKind kind = MetricKind::Graph;
  int num_elements = 0;
  std::vector<int> clients;
  std::vector<int> candidates;
  int p = 1;
  std::optional<double> opening_cost;  // present only for facility location
  std::optional<int> k;                // optional hint carried by the file header

  std::vector<Edge> edges;  // kind == Graph

  int dimension = 0;           // kind == Euclidean
  std::vector<double> coords;  // row-major, num_elements * dimension

  bool is_graph() const noexcept { return kind == MetricKind::Graph; }
  std::span<const double> point(int id) const {
    return {coords.data() + static_cast<std::size_t>(id) * dimension,
            static_cast<std::size_t>(dimension)};
  }
  std::size_t num_clients() const noexcept { return clients.size(); }

  // Throws swapshop::Error when an invariant is violated (nonpositive weight,
  // disconnected graph, ids out of range, empty candidate set, p < 1, ...).
  void validate() const;
};

// A set of open centers, kept sorted and duplicate-free.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<int> centers);
  Solution(std::initializer_list<int> centers)
      : Solution(std::vector<int>(centers)) {}

  const std::vector<int>& centers() const noexcept { return centers_; }
  std::size_t size() const noexcept { return centers_.size(); }
  bool empty() const noexcept { return centers_.empty(); }
  bool contains(int id) const;

  auto begin() const noexcept { return centers_.begin(); }
  auto end() const noexcept { return centers_.end(); }

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution& a, const Solution& b) {
    return a.centers_ <=> b.centers_;
  }

 private:
  std::vector<int> centers_;
};

std::string to_string(const Solution& s);

// Nonempty, subset of the candidate set, and at most `k` centers if given.
void validate_solution(const Instance& inst, const Solution& s,
                       std::optional<int> k = std::nullopt);

// ---- file formats -------------------------------------------------------

enum class InstanceFormat { EdgeList, PointsCsv };

// `.csv` selects PointsCsv, anything else EdgeList.
InstanceFormat format_for_path(const std::filesystem::path& path);

Instance load_instance(const std::filesystem::path& path, InstanceFormat format);
Instance load_instance(const std::filesystem::path& path);
Instance parse_instance(std::istream& in, InstanceFormat format);
Instance parse_instance_text(const std::string& text, InstanceFormat format);

// Canonical form: header block (n/d, p, k, f, clients, candidates when not
// the defaults) followed by data lines; numbers in shortest round-trip form.
void write_instance(std::ostream& out, const Instance& inst);
std::string instance_to_string(const Instance& inst);
void save_instance(const std::filesystem::path& path, const Instance& inst);

// Solution files: one center id per line, `#` comments.
Solution parse_solution(std::istream& in);
Solution load_solution(const std::filesystem::path& path);
void write_solution(std::ostream& out, const Solution& s);
void save_solution(const std::filesystem::path& path, const Solution& s);

std::string format_number(double x);

// 64-bit FNV-1a of the canonical serialisation.
std::uint64_t instance_digest(const Instance& inst);

// ---- generators ---------------------------------------------------------

enum class WeightModel { Unit, Random };

// w x h grid; vertex id y*w + x. Random weights are integers in [1, 9].
Instance generate_grid(int w, int h, WeightModel weights = WeightModel::Unit,
                       std::uint64_t seed = 0);

// n points uniform in [0,1)^d.
Instance generate_random_euclid(int n, int d, std::uint64_t seed);

// Random connected graph on n vertices: a random spanning tree plus
// `extra_edges` random chords, integer weights in [1, 9].
Instance generate_random_graph(int n, int extra_edges, std::uint64_t seed);

struct TightnessFamily {
  Instance instance;
  Solution planted;  // locally optimal for swaps of size <= swap_size
  Solution optimum;
  int swap_size = 0;
  double local_edge_length = 0.0;  // client-to-local-center edge length
};

// Locality-gap family on m local and m optimal centers; the planted local
// optimum costs (3 - (2t+1)/m) times the optimum, t = floor(s/2),
// s = round(1/eps_neighborhood). Throws if m is too small.
TightnessFamily generate_tightness(int m, double eps_neighborhood);

}  // namespace swapshop
