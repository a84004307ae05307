#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <utility>

#include "swapshop/error.hpp"
#include "swapshop/rdivision.hpp"

namespace swapshop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Witness {
  bool adjacent = false;
  std::vector<double> x;  // a point on the shared boundary (finite part)
  std::vector<double> far_direction;  // nonempty if the boundary is unbounded
};

class SiteSet {
 public:
  SiteSet(int dim, std::vector<double> coords, double scale, const EuclideanDivisionOptions& opts)
      : dim_(dim), coords_(std::move(coords)), scale_(scale), opts_(opts) {}

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(coords_.size()) / dim_; }
  const double* at(int i) const { return coords_.data() + static_cast<std::size_t>(i) * dim_; }
  double scale() const { return scale_; }
  std::vector<double>& coords() { return coords_; }
  const std::vector<double>& coords() const { return coords_; }

  int add(const std::vector<double>& p) {
    coords_.insert(coords_.end(), p.begin(), p.end());
    return size() - 1;
  }
  void truncate(int count) { coords_.resize(static_cast<std::size_t>(count) * dim_); }

  double dist2(const double* a, const double* b) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
      const double t = a[i] - b[i];
      s += t * t;
    }
    return s;
  }

  // Is some existing site within `tol` of p?
  bool near_existing(const std::vector<double>& p) const {
    const double tol2 = std::pow(1e-9 * scale_, 2);
    for (int i = 0; i < size(); ++i) {
      if (dist2(at(i), p.data()) <= tol2) return true;
    }
    return false;
  }

  // Sites sorted by distance from site a (a itself excluded).
  std::vector<int> order_from(int a) const {
    std::vector<std::pair<double, int>> keyed;
    keyed.reserve(size());
    for (int i = 0; i < size(); ++i) {
      if (i != a) keyed.push_back({dist2(at(a), at(i)), i});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    out.reserve(keyed.size());
    for (const auto& [d, i] : keyed) out.push_back(i);
    return out;
  }

  Witness adjacency(int a, int b, const std::vector<int>& order) const {
    const double* pa = at(a);
    const double* pb = at(b);
    std::vector<double> m(dim_), w(dim_);
    double wn = 0.0;
    for (int i = 0; i < dim_; ++i) {
      m[i] = 0.5 * (pa[i] + pb[i]);
      w[i] = pb[i] - pa[i];
      wn += w[i] * w[i];
    }
    const double r2 = dist2(m.data(), pa);
    Witness wit;
    if (wn == 0.0) {
      wit.adjacent = true;
      wit.x = m;
      return wit;
    }
    if (dim_ == 1) {
      const double tol = 1e-12 * scale_ * scale_;
      for (int s : order) {
        if (s == b) continue;
        if (dist2(m.data(), at(s)) < r2 - tol) return wit;
      }
      wit.adjacent = true;
      wit.x = m;
      return wit;
    }
    std::vector<std::vector<double>> lines;
    if (dim_ == 2) {
      const double norm = std::sqrt(wn);
      lines.push_back({-w[1] / norm, w[0] / norm});
    } else {
      std::mt19937_64 rng(opts_.seed ^ (static_cast<std::uint64_t>(a) * 1000003u + b));
      std::normal_distribution<double> gauss;
      for (int k = 0; k < opts_.bisector_samples; ++k) {
        std::vector<double> u(dim_);
        double dot = 0.0;
        for (int i = 0; i < dim_; ++i) {
          u[i] = gauss(rng);
          dot += u[i] * w[i];
        }
        double un = 0.0;
        for (int i = 0; i < dim_; ++i) {
          u[i] -= dot / wn * w[i];
          un += u[i] * u[i];
        }
        un = std::sqrt(un);
        if (un == 0.0) continue;
        for (auto& x : u) x /= un;
        lines.push_back(std::move(u));
      }
    }
    for (const auto& u : lines) {
      if (line_witness(m, u, r2, b, order, wit)) return wit;
    }
    return wit;
  }

 private:
  // Interval of t for which m + t*u is at least as close to a (and b) as to
  // every other site.
  bool line_witness(const std::vector<double>& m, const std::vector<double>& u, double r2, int b,
                    const std::vector<int>& order, Witness& wit) const {
    double lo = -kInf, hi = kInf;
    const double tol_t = 1e-9 * scale_;
    const double tol_b = 1e-12 * scale_ * scale_;
    for (int s : order) {
      if (s == b) continue;
      const double* ps = at(s);
      double a_coef = 0.0;
      double ms2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const double sm = ps[i] - m[i];
        a_coef += 2.0 * u[i] * sm;
        ms2 += sm * sm;
      }
      const double b_coef = ms2 - r2;
      if (std::abs(a_coef) <= 1e-15 * scale_) {
        if (b_coef < -tol_b) return false;
        continue;
      }
      const double t = b_coef / a_coef;
      if (a_coef > 0) {
        hi = std::min(hi, t);
      } else {
        lo = std::max(lo, t);
      }
      if (lo > hi + tol_t) return false;
    }
    wit.adjacent = true;
    wit.x = m;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      const double t = 0.5 * (lo + hi);
      for (int i = 0; i < dim_; ++i) wit.x[i] += t * u[i];
    } else if (std::isfinite(lo)) {
      wit.far_direction = u;
    } else if (std::isfinite(hi)) {
      wit.far_direction = u;
      for (auto& x : wit.far_direction) x = -x;
    }
    return true;
  }

  int dim_;
  std::vector<double> coords_;
  double scale_;
  const EuclideanDivisionOptions& opts_;
};

struct Sphere {
  std::vector<double> center;
  double radius = 0.0;
};

class EuclidDivider {
 public:
  EuclidDivider(const Instance& inst, int r, const EuclideanDivisionOptions& opts)
      : n_(inst.num_elements), r_(r), opts_(opts),
        sites_(inst.dimension, inst.coords, bounding_scale(inst), opts) {}

  EuclideanRDivision run() {
    std::vector<int> all(n_);
    std::iota(all.begin(), all.end(), 0);
    branches_.push_back(std::move(all));
    std::deque<int> work{0};
    while (!work.empty()) {
      const int id = work.front();
      work.pop_front();
      if (static_cast<int>(branches_[id].size()) <= r_) continue;
      split(id, work);
    }
    return finish();
  }

 private:
  static double bounding_scale(const Instance& inst) {
    double s2 = 0.0;
    for (int i = 0; i < inst.dimension; ++i) {
      double lo = kInf, hi = -kInf;
      for (int p = 0; p < inst.num_elements; ++p) {
        lo = std::min(lo, inst.point(p)[i]);
        hi = std::max(hi, inst.point(p)[i]);
      }
      s2 += (hi - lo) * (hi - lo);
    }
    return s2 > 0 ? std::sqrt(s2) : 1.0;
  }

  std::vector<Sphere> candidate_spheres(const std::vector<int>& members) const {
    const int dim = sites_.dim();
    std::vector<std::vector<double>> centers;
    std::vector<double> median(dim), mean(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
      std::vector<double> xs;
      for (int s : members) xs.push_back(sites_.at(s)[i]);
      std::nth_element(xs.begin(), xs.begin() + xs.size() / 2, xs.end());
      median[i] = xs[xs.size() / 2];
      for (double x : xs) mean[i] += x / xs.size();
    }
    centers.push_back(median);
    centers.push_back(mean);
    // Nudged medians break ties when many points share one coordinate.
    for (int i = 0; i < dim; ++i) {
      auto c = median;
      c[i] += 1e-3 * sites_.scale();
      centers.push_back(c);
    }

    // Distant centres give nearly flat spheres.
    for (int i = 0; i < dim; ++i) {
      for (double sign : {-1.0, 1.0}) {
        auto c = median;
        c[i] += sign * 20.0 * sites_.scale();
        centers.push_back(c);
      }
    }
    if (dim == 2) {
      for (double sx : {-1.0, 1.0}) {
        auto c = median;
        c[0] += sx * 14.0 * sites_.scale();
        c[1] += 14.0 * sites_.scale();
        centers.push_back(c);
      }
    }

    std::vector<Sphere> out;
    const int n = static_cast<int>(members.size());
    const int lo = std::max(1, static_cast<int>(std::ceil(0.25 * n)));
    const int hi = std::min(n - 1, static_cast<int>(std::floor(0.75 * n)));
    for (const auto& c : centers) {
      std::vector<double> d;
      for (int s : members) d.push_back(std::sqrt(sites_.dist2(c.data(), sites_.at(s))));
      std::sort(d.begin(), d.end());
      // Inside count k means d[k-1] < radius < d[k].
      std::vector<std::pair<double, int>> gaps;
      for (int k = lo; k <= hi; ++k) {
        const double gap = d[k] - d[k - 1];
        if (gap > 1e-12 * sites_.scale()) gaps.push_back({-gap, k});
      }
      std::sort(gaps.begin(), gaps.end());
      for (std::size_t g = 0; g < gaps.size() && g < 3; ++g) {
        const int k = gaps[g].second;
        out.push_back({c, 0.5 * (d[k - 1] + d[k])});
      }
    }
    return out;
  }

  std::vector<double> project(const Sphere& s, const Witness& w) const {
    const int dim = sites_.dim();
    std::vector<double> dir(dim);
    if (!w.far_direction.empty()) {
      dir = w.far_direction;
    } else {
      for (int i = 0; i < dim; ++i) dir[i] = w.x[i] - s.center[i];
    }
    double norm = 0.0;
    for (double x : dir) norm += x * x;
    norm = std::sqrt(norm);
    std::vector<double> z(dim);
    if (norm == 0.0) {
      z = s.center;
      z[0] += s.radius;
      return z;
    }
    for (int i = 0; i < dim; ++i) z[i] = s.center[i] + s.radius * dir[i] / norm;
    return z;
  }

  std::vector<std::vector<double>> uniform_on_sphere(const Sphere& s, int count,
                                                     std::uint64_t salt) const {
    const int dim = sites_.dim();
    std::vector<std::vector<double>> out;
    if (dim == 1) {
      out.push_back({s.center[0] - s.radius});
      out.push_back({s.center[0] + s.radius});
      return out;
    }
    if (dim == 2) {
      for (int i = 0; i < count; ++i) {
        const double a = 2.0 * std::numbers::pi * (i + 0.5 * (salt % 2)) / count;
        out.push_back({s.center[0] + s.radius * std::cos(a), s.center[1] + s.radius * std::sin(a)});
      }
      return out;
    }
    std::mt19937_64 rng(opts_.seed + salt);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < count; ++i) {
      std::vector<double> v(dim);
      double norm = 0.0;
      for (auto& x : v) {
        x = gauss(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (int j = 0; j < dim; ++j) v[j] = s.center[j] + s.radius * v[j] / norm;
      out.push_back(std::move(v));
    }
    return out;
  }

  struct Attempt {
    std::vector<int> inside, outside;  // both include the new Z ids
    std::vector<std::vector<double>> z;
    int largest = 0;
  };

  // Nearest site to y among existing sites and `extra`; returns (distance, id)
  // with extra points reported as id -1.
  std::pair<double, int> nearest(const std::vector<double>& y,
                                 const std::vector<std::vector<double>>& extra) const {
    double best = kInf;
    int id = -1;
    for (int i = 0; i < sites_.size(); ++i) {
      const double d = sites_.dist2(sites_.at(i), y.data());
      if (d < best) {
        best = d;
        id = i;
      }
    }
    for (const auto& e : extra) {
      const double d = sites_.dist2(e.data(), y.data());
      if (d < best) {
        best = d;
        id = -1;
      }
    }
    return {std::sqrt(best), id};
  }

  // Walks the circle and drops points on it wherever the circle runs through
  // the cell of a branch point, spaced by the distance to that point.
  std::vector<std::vector<double>> cover_circle(const std::vector<char>& is_member,
                                                const Sphere& s) const {
    std::vector<std::vector<double>> placed;
    const double two_pi = 2.0 * std::numbers::pi;
    const double min_step = 1e-7 * sites_.scale() / s.radius;
    auto at_angle = [&](double t) {
      return std::vector<double>{s.center[0] + s.radius * std::cos(t),
                                 s.center[1] + s.radius * std::sin(t)};
    };
    double t = 0.0;
    while (t < two_pi) {
      const auto y = at_angle(t);
      const auto [dist, id] = nearest(y, placed);
      if (id >= 0 && id < n_ && is_member[id]) {
        placed.push_back(at_angle(t + 0.6 * dist / s.radius));
        continue;
      }
      t += std::max(0.25 * dist / s.radius, min_step);
    }
    return placed;
  }

  // Separates inside from outside members; old boundary points adjacent to
  // both sides are copied into both.
  bool try_sphere(const std::vector<int>& members, const Sphere& s, Attempt& out) {
    std::vector<int> inside, outside;
    for (int m : members) {
      const double d = std::sqrt(sites_.dist2(s.center.data(), sites_.at(m)));
      (d < s.radius ? inside : outside).push_back(m);
    }
    const int base = sites_.size();
    const int total = static_cast<int>(members.size());
    auto fail = [&] {
      sites_.truncate(base);
      return false;
    };
    if (sites_.dim() == 2) {
      std::vector<char> is_member(n_, 0);
      for (int m : members) {
        if (m < n_) is_member[m] = 1;
      }
      for (auto& z : cover_circle(is_member, s)) {
        if (!sites_.near_existing(z)) sites_.add(z);
      }
    }
    int densify = 0;
    for (int round = 0; round < opts_.max_rounds; ++round) {
      const int zc = sites_.size() - base;
      if (static_cast<int>(inside.size()) + zc >= total ||
          static_cast<int>(outside.size()) + zc >= total) {
        return fail();
      }
      std::vector<std::vector<double>> fresh;
      std::vector<int> to_inside, to_outside;
      bool any = false;
      auto scan = [&](const std::vector<int>& from, const std::vector<int>& to, bool from_inside) {
        for (int a : from) {
          const auto order = sites_.order_from(a);
          for (int b : to) {
            if (a >= n_ && b >= n_) continue;
            const auto w = sites_.adjacency(a, b, order);
            if (!w.adjacent) continue;
            if (a >= n_) {
              (from_inside ? to_outside : to_inside).push_back(a);
              continue;
            }
            if (b >= n_) {
              (from_inside ? to_inside : to_outside).push_back(b);
              continue;
            }
            any = true;
            auto z = project(s, w);
            bool dup = sites_.near_existing(z);
            for (const auto& f : fresh) {
              if (sites_.dist2(f.data(), z.data()) <= std::pow(1e-9 * sites_.scale(), 2)) dup = true;
            }
            if (!dup) fresh.push_back(std::move(z));
          }
        }
      };
      scan(inside, outside, true);
      if (!any) {
        std::vector<int> z_new;
        for (int i = base; i < sites_.size(); ++i) {
          z_new.push_back(i);
          out.z.emplace_back(sites_.at(i), sites_.at(i) + sites_.dim());
        }
        auto merge = [&](std::vector<int> side, const std::vector<int>& extra) {
          side.insert(side.end(), extra.begin(), extra.end());
          side.insert(side.end(), z_new.begin(), z_new.end());
          std::sort(side.begin(), side.end());
          side.erase(std::unique(side.begin(), side.end()), side.end());
          return side;
        };
        out.inside = merge(inside, to_inside);
        out.outside = merge(outside, to_outside);
        out.largest = static_cast<int>(std::max(out.inside.size(), out.outside.size()));
        densifications_ += densify;
        sites_.truncate(base);
        return out.largest < total;
      }
      if (fresh.empty()) {
        if (densify >= opts_.max_densify) break;
        ++densify;
        for (auto& z : uniform_on_sphere(s, 8 << densify, densify)) {
          if (!sites_.near_existing(z)) fresh.push_back(std::move(z));
        }
        if (fresh.empty()) break;
      }
      for (const auto& z : fresh) sites_.add(z);
    }
    return fail();
  }

  void split(int id, std::deque<int>& work) {
    const auto members = branches_[id];
    Attempt best;
    bool ok = false;
    for (const auto& sphere : candidate_spheres(members)) {
      Attempt a;
      if (try_sphere(members, sphere, a) && (!ok || a.largest < best.largest)) {
        best = std::move(a);
        ok = true;
      }
    }
    if (!ok) {
      throw Error("Euclidean separator search failed on a branch of " +
                  std::to_string(members.size()) + " sites after " +
                  std::to_string(densifications_) + " densifications");
    }
    std::vector<int> z_new;
    for (const auto& z : best.z) z_new.push_back(sites_.add(z));
    branches_[id] = std::move(best.inside);
    branches_.push_back(std::move(best.outside));
    work.push_back(id);
    work.push_back(static_cast<int>(branches_.size()) - 1);

    // New sites may touch cells of points in other branches; those branches
    // absorb them so every cell neighbour stays inside the point's region.
    const int new_id = static_cast<int>(branches_.size()) - 1;
    for (int other = 0; other < static_cast<int>(branches_.size()); ++other) {
      if (other == id || other == new_id) continue;
      auto& branch = branches_[other];
      bool grew = false;
      for (int a : std::vector<int>(branch)) {
        if (a >= n_) continue;
        const auto order = sites_.order_from(a);
        for (int z : z_new) {
          if (std::binary_search(branch.begin(), branch.end(), z)) continue;
          if (sites_.adjacency(a, z, order).adjacent) {
            branch.insert(std::lower_bound(branch.begin(), branch.end(), z), z);
            grew = true;
          }
        }
      }
      if (grew && static_cast<int>(branch.size()) > r_) work.push_back(other);
    }
  }

  EuclideanRDivision finish() {
    EuclideanRDivision div;
    div.r = r_;
    div.dimension = sites_.dim();
    div.num_points = n_;
    div.sites = sites_.coords();
    div.regions = branches_;
    div.region_of.assign(n_, -1);
    div.densifications = densifications_;
    for (std::size_t i = 0; i < div.regions.size(); ++i) {
      for (int s : div.regions[i]) {
        if (s < n_) div.region_of[s] = static_cast<int>(i);
      }
    }
    auto& st = div.stats;
    st.regions = static_cast<int>(div.regions.size());
    for (const auto& region : div.regions) {
      st.max_region_size = std::max(st.max_region_size, static_cast<int>(region.size()));
      for (int s : region) st.boundary_total += s >= n_ ? 1 : 0;
    }
    st.c1 = st.regions * static_cast<double>(r_) / n_;
    st.c2 = static_cast<double>(st.boundary_total) *
            std::pow(static_cast<double>(r_), 1.0 / div.dimension) / n_;
    return div;
  }

  int n_;
  int r_;
  const EuclideanDivisionOptions& opts_;
  SiteSet sites_;
  std::vector<std::vector<int>> branches_;
  int densifications_ = 0;
};

SiteSet site_set(const EuclideanRDivision& div, const EuclideanDivisionOptions& opts) {
  double s2 = 0.0;
  for (int i = 0; i < div.dimension; ++i) {
    double lo = kInf, hi = -kInf;
    for (int p = 0; p < div.num_points; ++p) {
      lo = std::min(lo, div.sites[static_cast<std::size_t>(p) * div.dimension + i]);
      hi = std::max(hi, div.sites[static_cast<std::size_t>(p) * div.dimension + i]);
    }
    s2 += (hi - lo) * (hi - lo);
  }
  return SiteSet(div.dimension, div.sites, s2 > 0 ? std::sqrt(s2) : 1.0, opts);
}

}  // namespace

EuclideanRDivision euclidean_r_division(const Instance& points, int r,
                                        const EuclideanDivisionOptions& opts) {
  if (points.is_graph()) throw Error("euclidean_r_division needs a Euclidean instance");
  if (r < 2) throw Error("r-division needs r >= 2");
  EuclidDivider divider(points, r, opts);
  return divider.run();
}

bool voronoi_adjacent(const EuclideanRDivision& div, int a, int b,
                      const EuclideanDivisionOptions& opts) {
  const auto sites = site_set(div, opts);
  return sites.adjacency(a, b, sites.order_from(a)).adjacent;
}

std::vector<std::string> audit_euclidean_division(const EuclideanRDivision& div,
                                                  const EuclideanDivisionOptions& opts) {
  std::vector<std::string> problems;
  std::vector<int> seen(div.num_points, 0);
  for (std::size_t i = 0; i < div.regions.size(); ++i) {
    const auto& region = div.regions[i];
    if (static_cast<int>(region.size()) > div.r) {
      problems.push_back("region " + std::to_string(i) + ": " + std::to_string(region.size()) +
                         " sites > r");
    }
    if (!std::is_sorted(region.begin(), region.end())) {
      problems.push_back("region " + std::to_string(i) + ": member list not sorted");
    }
    for (int s : region) {
      if (s < 0 || s >= div.num_sites()) {
        problems.push_back("region " + std::to_string(i) + ": bad site id");
      } else if (s < div.num_points) {
        ++seen[s];
      }
    }
  }
  for (int p = 0; p < div.num_points; ++p) {
    if (seen[p] != 1) {
      problems.push_back("point " + std::to_string(p) + " in " + std::to_string(seen[p]) +
                         " regions");
    }
  }
  if (!problems.empty()) return problems;

  const auto sites = site_set(div, opts);
  for (int p = 0; p < div.num_points; ++p) {
    const auto& region = div.regions[div.region_of[p]];
    const auto order = sites.order_from(p);
    for (int q = 0; q < sites.size(); ++q) {
      if (q == p || std::binary_search(region.begin(), region.end(), q)) continue;
      if (sites.adjacency(p, q, order).adjacent) {
        problems.push_back("cell of point " + std::to_string(p) + " (region " +
                           std::to_string(div.region_of[p]) + ") touches site " +
                           std::to_string(q) + " outside its region");
      }
    }
  }
  return problems;
}

void write_division(std::ostream& out, const EuclideanRDivision& div) {
  out << "r=" << div.r << "\nd=" << div.dimension << "\npoints=" << div.num_points
      << "\nboundary_points=" << div.num_sites() - div.num_points
      << "\nregions=" << div.stats.regions << "\nmax_region_size=" << div.stats.max_region_size
      << "\nboundary_total=" << div.stats.boundary_total << "\nc1=" << format_number(div.stats.c1)
      << "\nc2=" << format_number(div.stats.c2) << "\ndensifications=" << div.densifications
      << '\n';
  for (int z = div.num_points; z < div.num_sites(); ++z) {
    out << "z " << z;
    for (int i = 0; i < div.dimension; ++i) {
      out << ' ' << format_number(div.sites[static_cast<std::size_t>(z) * div.dimension + i]);
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < div.regions.size(); ++i) {
    out << "\n[region " << i << "]\nmembers=";
    bool first = true;
    for (int s : div.regions[i]) {
      if (s >= div.num_points) continue;
      out << (first ? "" : ",") << s;
      first = false;
    }
    out << "\nboundary=";
    first = true;
    for (int s : div.regions[i]) {
      if (s < div.num_points) continue;
      out << (first ? "" : ",") << s;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace swapshop
