#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "swapshop/error.hpp"
#include "swapshop/instance.hpp"

namespace swapshop {

namespace {

// Portable draws: std::uniform_*_distribution is implementation-defined.
int draw_weight(std::mt19937_64& rng) { return static_cast<int>(rng() % 9) + 1; }

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

std::vector<int> iota_vector(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

Instance generate_grid(int w, int h, WeightModel weights, std::uint64_t seed) {
  if (w < 1 || h < 1) throw Error("grid dimensions must be >= 1");
  Instance inst;
  inst.kind = MetricKind::Graph;
  inst.num_elements = w * h;
  std::mt19937_64 rng(seed);
  auto weight = [&] {
    return weights == WeightModel::Unit ? 1.0 : static_cast<double>(draw_weight(rng));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int v = y * w + x;
      if (x + 1 < w) inst.edges.push_back({v, v + 1, weight()});
      if (y + 1 < h) inst.edges.push_back({v, v + w, weight()});
    }
  }
  inst.clients = iota_vector(inst.num_elements);
  inst.candidates = inst.clients;
  inst.validate();
  return inst;
}

Instance generate_random_euclid(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw Error("random-euclid needs n >= 1 and d >= 1");
  Instance inst;
  inst.kind = MetricKind::Euclidean;
  inst.num_elements = n;
  inst.dimension = d;
  std::mt19937_64 rng(seed);
  inst.coords.resize(static_cast<std::size_t>(n) * d);
  for (auto& x : inst.coords) x = draw_unit(rng);
  inst.clients = iota_vector(n);
  inst.candidates = inst.clients;
  inst.validate();
  return inst;
}

Instance generate_random_graph(int n, int extra_edges, std::uint64_t seed) {
  if (n < 2) throw Error("random graph needs n >= 2");
  Instance inst;
  inst.kind = MetricKind::Graph;
  inst.num_elements = n;
  std::mt19937_64 rng(seed);
  std::vector<int> order = iota_vector(n);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[draw_below(rng, i + 1)]);
  }
  std::set<std::pair<int, int>> seen;
  auto add = [&](int u, int v) {
    if (u == v) return false;
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) return false;
    inst.edges.push_back({u, v, static_cast<double>(draw_weight(rng))});
    return true;
  };
  for (int i = 1; i < n; ++i) add(order[i], order[draw_below(rng, i)]);
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  int added = 0;
  for (int attempt = 0; added < extra_edges && attempt < 50 * (extra_edges + 1); ++attempt) {
    if (static_cast<long long>(seen.size()) >= max_edges) break;
    const int u = static_cast<int>(draw_below(rng, n));
    const int v = static_cast<int>(draw_below(rng, n));
    if (add(u, v)) ++added;
  }
  inst.clients = iota_vector(n);
  inst.candidates = inst.clients;
  inst.validate();
  return inst;
}

TightnessFamily generate_tightness(int m, double eps_neighborhood) {
  if (!(eps_neighborhood > 0) || eps_neighborhood > 1) {
    throw Error("eps_neighborhood must be in (0, 1]");
  }
  const int s = static_cast<int>(std::lround(1.0 / eps_neighborhood));
  const int t = s / 2;
  if (m < std::max(s, 2)) {
    throw Error("tightness family needs m >= max(s, 2); m = " + std::to_string(m) +
                ", s = " + std::to_string(s));
  }
  const double L = 3.0 - static_cast<double>(2 * t + 1) / m;
  if (!(L > 1.0)) throw Error("tightness family: m too small for s");

  TightnessFamily fam;
  fam.swap_size = s;
  fam.local_edge_length = L;
  Instance& inst = fam.instance;
  inst.kind = MetricKind::Graph;
  inst.num_elements = 2 * m + m * m;
  inst.k = m;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int c = 2 * m + i * m + j;
      inst.edges.push_back({i, c, L});
      inst.edges.push_back({m + j, c, 1.0});
      inst.clients.push_back(c);
    }
  }
  inst.candidates = iota_vector(2 * m);
  inst.validate();

  std::vector<int> planted = iota_vector(m);
  std::vector<int> optimum(m);
  std::iota(optimum.begin(), optimum.end(), m);
  fam.planted = Solution(planted);
  fam.optimum = Solution(optimum);
  return fam;
}

}  // namespace swapshop
