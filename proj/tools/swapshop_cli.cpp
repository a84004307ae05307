// swapshop: local search for clustering and facility location, with exact
// oracles and the analysis checks.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swapshop/analysis.hpp"
#include "swapshop/error.hpp"
#include "swapshop/instance.hpp"
#include "swapshop/kernels.hpp"
#include "swapshop/localsearch.hpp"
#include "swapshop/metric.hpp"
#include "swapshop/oracle.hpp"
#include "swapshop/rdivision.hpp"
#include "swapshop/report.hpp"
#include "swapshop/voronoi.hpp"

namespace {

using namespace swapshop;

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string hex_digest(const Instance& inst) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(instance_digest(inst)));
  return buf;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string instance, mode, out, init = "lowest", initial, save_solution, trace, scan = "parallel";
  std::optional<int> k, p;
  std::optional<double> f;
  int s = 1;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  bool oracle = false;
};

int run_solve(const SolveArgs& a) {
  Instance inst = load_instance(a.instance);
  SearchConfig cfg;
  if (a.mode == "ufl") {
    cfg.mode = SearchMode::UFL;
    if (a.f) inst.opening_cost = *a.f;
    if (!inst.opening_cost) throw Error("--mode ufl needs --f or an f= header");
    inst.p = a.p.value_or(1);
  } else {
    cfg.mode = SearchMode::KClustering;
    inst.opening_cost.reset();
    inst.p = a.p.value_or(a.mode == "kmeans" ? 2 : 1);
    const auto k = a.k ? a.k : inst.k;
    if (!k) throw Error("--mode " + a.mode + " needs --k or a k= header");
    cfg.k = *k;
  }
  inst.validate();
  cfg.s = a.s;
  cfg.epsilon = a.epsilon;
  cfg.seed = a.seed;
  cfg.scan = a.scan == "serial" ? ScanPolicy::Serial : ScanPolicy::Parallel;
  if (!a.initial.empty()) {
    cfg.init = InitRule::Provided;
    cfg.initial = load_solution(a.initial);
  } else {
    cfg.init = a.init == "random" ? InitRule::SeededRandom : InitRule::LowestIds;
  }

  const DistanceOracle d(inst);
  const ServiceTable table(inst, d);
  const auto t0 = std::chrono::steady_clock::now();
  const SearchTrace trace = local_search(inst, table, cfg);
  const double search_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Sink sink(a.out);
  std::ostream& out = sink.get();
  Report rep(out);
  rep.section("run");
  rep.field("instance", a.instance);
  rep.field("digest", hex_digest(inst));
  rep.field("mode", a.mode);
  rep.field("p", inst.p);
  if (cfg.mode == SearchMode::KClustering) rep.field("k", cfg.k);
  if (inst.opening_cost) rep.field("f", *inst.opening_cost);
  rep.field("s", cfg.s);
  rep.field("epsilon", cfg.epsilon);
  rep.field("seed", static_cast<long long>(cfg.seed));
  rep.field("init", a.initial.empty() ? a.init : "provided:" + a.initial);
  rep.field("initial_solution", join_ids(trace.initial.centers()));
  rep.field("initial_cost", trace.initial_cost);
  rep.field("iterations", static_cast<long long>(trace.steps.size()));
  rep.field("moves_evaluated", trace.moves_evaluated);
  rep.field("termination", std::string(to_string(trace.reason)));
  rep.field("solution", join_ids(trace.final_solution.centers()));
  rep.field("final_cost", trace.final_cost);
  const int n = static_cast<int>(inst.clients.size());
  if (trace.final_cost > 0) {
    rep.field("iteration_bound", iteration_bound(trace.initial_cost, trace.final_cost,
                                                 cfg.epsilon, n));
  }
  rep.check("iteration_bound", within_iteration_bound(trace, cfg.epsilon, n));

  double oracle_seconds = 0.0;
  if (a.oracle) {
    rep.section("oracle");
    try {
      const OracleResult o = cfg.mode == SearchMode::UFL ? exact_ufl(inst, table)
                                                         : exact_k_clustering(inst, table, cfg.k);
      oracle_seconds = o.elapsed_seconds;
      rep.field("oracle_solution", join_ids(o.optimum.centers()));
      rep.field("oracle_cost", o.cost);
      rep.field("enumerated", static_cast<long long>(o.enumerated));
      if (o.cost > 0) {
        const double ratio = trace.final_cost / o.cost;
        rep.field("ratio", ratio);
        rep.check("ratio_at_least_one", ratio >= 1.0 - 1e-12);
      } else {
        rep.field("ratio", std::string(trace.final_cost > 0 ? "inf" : "1"));
      }
    } catch (const BudgetExceeded& e) {
      rep.field("warning", std::string(e.what()));
      std::cerr << "warning: " << e.what() << '\n';
    }
  }
  out << "timing search_seconds=" << format_number(search_seconds)
      << " oracle_seconds=" << format_number(oracle_seconds) << '\n';
  rep.finish();

  if (!a.save_solution.empty()) save_solution(a.save_solution, trace.final_solution);
  if (!a.trace.empty()) {
    std::ofstream t(a.trace);
    if (!t) throw Error("cannot write " + a.trace);
    write_trace(t, trace);
  }
  return rep.passed() ? kOk : kAssertion;
}

// ---- certify --------------------------------------------------------------

struct CertifyArgs {
  std::string instance, local, global, check = "all", out;
  double epsilon = 0.3;
  double eps1 = 0.25;
  std::optional<int> p;
  std::optional<double> f;
};

int run_certify(const CertifyArgs& a) {
  Instance inst = load_instance(a.instance);
  if (a.p) inst.p = *a.p;
  if (a.f) inst.opening_cost = *a.f;
  inst.validate();
  const Solution L = load_solution(a.local);
  const Solution G = load_solution(a.global);
  validate_solution(inst, L);
  validate_solution(inst, G);
  const bool want_ufl = a.check == "ufl-chain" || a.check == "all";
  if (a.check == "ufl-chain" && (!inst.opening_cost || !inst.is_graph())) {
    throw Error("mode mismatch: ufl-chain needs a graph instance with an opening cost");
  }
  const DistanceOracle d(inst);

  Sink sink(a.out);
  Report rep(sink.get());
  rep.section("certify");
  rep.field("instance", a.instance);
  rep.field("digest", hex_digest(inst));
  rep.field("local", join_ids(L.centers()));
  rep.field("global", join_ids(G.centers()));
  rep.field("check", a.check);
  if (a.check == "isolation" || a.check == "all") {
    const auto iso = detect_isolation(inst, d, L, G, a.epsilon);
    report_isolation(rep, iso, check_reassignment(inst, d, iso, a.eps1));
  }
  if (a.check == "deletion" || a.check == "all") {
    report_deletion(rep, delete_centers(inst, d, L, G, a.epsilon));
  }
  if (want_ufl) {
    if (inst.opening_cost && inst.is_graph()) {
      report_certifier(rep, certify_ufl(inst, d, L, G, a.epsilon));
    } else {
      rep.section("ufl-chain");
      rep.field("skipped", std::string("instance has no opening cost"));
    }
  }
  rep.finish();
  return rep.passed() ? kOk : kAssertion;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string family, out;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::optional<int> p, k;
  std::optional<double> f;
};

// Positional and key=value parameters; positional ones fill `names` in order.
std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw,
                                                const std::vector<std::string>& names) {
  std::map<std::string, std::string> out;
  std::size_t next = 0;
  for (const auto& tok : raw) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) {
      out[tok.substr(0, eq)] = tok.substr(eq + 1);
    } else {
      if (next >= names.size()) throw Error("too many parameters");
      out[names[next++]] = tok;
    }
  }
  for (const auto& [key, unused] : out) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw Error("unknown parameter '" + key + "'");
    }
  }
  return out;
}

int param_int(const std::map<std::string, std::string>& m, const std::string& key,
              std::optional<int> fallback = std::nullopt) {
  const auto it = m.find(key);
  if (it == m.end()) {
    if (fallback) return *fallback;
    throw Error("missing parameter '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw Error("parameter '" + key + "' is not an integer");
  }
}

double param_double(const std::map<std::string, std::string>& m, const std::string& key,
                    double fallback) {
  const auto it = m.find(key);
  if (it == m.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw Error("parameter '" + key + "' is not a number");
  }
}

int run_generate(const GenerateArgs& a) {
  Instance inst;
  std::optional<TightnessFamily> tight;
  if (a.family == "grid") {
    const auto m = parse_params(a.params, {"w", "h", "weights"});
    const auto weights = m.count("weights") ? m.at("weights") : std::string("unit");
    if (weights != "unit" && weights != "random") throw Error("weights must be unit or random");
    inst = generate_grid(param_int(m, "w"), param_int(m, "h"),
                         weights == "random" ? WeightModel::Random : WeightModel::Unit, a.seed);
  } else if (a.family == "random-euclid") {
    const auto m = parse_params(a.params, {"n", "d"});
    inst = generate_random_euclid(param_int(m, "n"), param_int(m, "d", 2), a.seed);
  } else if (a.family == "random-graph") {
    const auto m = parse_params(a.params, {"n", "extra"});
    inst = generate_random_graph(param_int(m, "n"), param_int(m, "extra", 0), a.seed);
  } else if (a.family == "tightness") {
    const auto m = parse_params(a.params, {"m", "eps"});
    tight = generate_tightness(param_int(m, "m"), param_double(m, "eps", 0.5));
    inst = tight->instance;
  } else {
    throw Error("unknown family " + a.family);
  }
  if (a.p) inst.p = *a.p;
  if (a.k) inst.k = *a.k;
  if (a.f) inst.opening_cost = *a.f;
  inst.validate();
  save_instance(a.out, inst);
  if (tight) {
    save_solution(a.out + ".planted", tight->planted);
    save_solution(a.out + ".opt", tight->optimum);
    std::cout << "planted=" << a.out << ".planted swap_size=" << tight->swap_size << '\n';
  }
  std::cout << "wrote " << a.out << " elements=" << inst.num_elements << '\n';
  return kOk;
}

// ---- divide / voronoi -----------------------------------------------------

struct DivideArgs {
  std::string instance, centers, out;
  int r = 16;
  int queries = 100;
  std::uint64_t seed = 1;
};

int run_divide(const DivideArgs& a) {
  const Instance inst = load_instance(a.instance);
  Sink sink(a.out);
  Report rep(sink.get());
  std::mt19937_64 rng(a.seed);
  std::vector<SeparationQuery> qs;
  rep.section("division");
  rep.field("instance", a.instance);
  rep.field("r", a.r);
  if (inst.is_graph()) {
    const DistanceOracle d(inst);
    const Solution S = a.centers.empty() ? [&] {
      std::vector<int> all(inst.num_elements);
      for (int i = 0; i < inst.num_elements; ++i) all[i] = i;
      return Solution(all);
    }()
                                         : load_solution(a.centers);
    const auto vor = voronoi_partition(inst, S);
    const auto cg = contract(inst, vor);
    const auto div = graph_r_division(cg.quotient, a.r);
    rep.field("regions", div.stats.regions);
    rep.field("max_region_size", div.stats.max_region_size);
    rep.field("boundary_total", div.stats.boundary_total);
    rep.field("c1", div.stats.c1);
    rep.field("c2", div.stats.c2);
    const auto problems = audit_graph_division(cg.quotient, div);
    for (const auto& p : problems) rep.field("problem", p);
    rep.check("division.audit", problems.empty());
    for (int i = 0; i < a.queries; ++i) {
      qs.push_back({static_cast<int>(rng() % inst.num_elements),
                    S.centers()[rng() % S.size()]});
    }
    const auto sep = verify_separation(inst, d, cg, div, qs);
    rep.field("queries", sep.queries);
    rep.field("crossing", sep.crossing);
    rep.field("witnesses", sep.witnesses);
    for (const auto& c : sep.counterexamples) rep.field("counterexample", c);
    rep.check("division.separation", sep.passed());
  } else {
    const auto div = euclidean_r_division(inst, a.r);
    rep.field("regions", div.stats.regions);
    rep.field("max_region_size", div.stats.max_region_size);
    rep.field("boundary_points", div.num_sites() - div.num_points);
    rep.field("c1", div.stats.c1);
    rep.field("c2", div.stats.c2);
    const auto problems = audit_euclidean_division(div);
    for (const auto& p : problems) rep.field("problem", p);
    rep.check("division.audit", problems.empty());
    for (int i = 0; i < a.queries; ++i) {
      qs.push_back({static_cast<int>(rng() % div.num_points),
                    static_cast<int>(rng() % div.num_sites())});
    }
    const auto sep = verify_separation(div, qs);
    rep.field("queries", sep.queries);
    rep.field("crossing", sep.crossing);
    rep.field("witnesses", sep.witnesses);
    for (const auto& c : sep.counterexamples) rep.field("counterexample", c);
    rep.check("division.separation", sep.passed());
  }
  rep.finish();
  return rep.passed() ? kOk : kAssertion;
}

struct VoronoiArgs {
  std::string instance, centers, partition, quotient;
};

int run_voronoi(const VoronoiArgs& a) {
  const Instance inst = load_instance(a.instance);
  if (!inst.is_graph()) throw Error("voronoi needs a graph instance");
  const Solution S = load_solution(a.centers);
  validate_solution(inst, S);
  const auto vor = voronoi_partition(inst, S);
  const bool connected = cells_connected(inst, vor);
  if (!a.partition.empty()) {
    std::ofstream out(a.partition);
    if (!out) throw Error("cannot write " + a.partition);
    write_partition(out, vor);
  } else {
    write_partition(std::cout, vor);
  }
  if (!a.quotient.empty()) {
    std::ofstream out(a.quotient);
    if (!out) throw Error("cannot write " + a.quotient);
    write_quotient(out, contract(inst, vor));
  }
  std::cerr << "cells_connected=" << (connected ? "true" : "false") << '\n';
  return connected ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local search for k-median, k-means and uniform facility location"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on OpenMP worker threads")
      ->check(CLI::PositiveNumber);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run local search, optionally against the exact oracle");
  s->add_option("--instance", solve.instance)->required()->check(CLI::ExistingFile);
  s->add_option("--mode", solve.mode)->required()->check(CLI::IsMember({"kmed", "kmeans", "ufl"}));
  s->add_option("--k", solve.k);
  s->add_option("--f", solve.f)->check(CLI::NonNegativeNumber);
  s->add_option("--s", solve.s)->required()->check(CLI::PositiveNumber);
  s->add_option("--epsilon", solve.epsilon)->required();
  s->add_option("--seed", solve.seed);
  s->add_option("--p", solve.p)->check(CLI::PositiveNumber);
  s->add_option("--init", solve.init)->check(CLI::IsMember({"lowest", "random"}));
  s->add_option("--initial", solve.initial, "Start from this solution file")
      ->check(CLI::ExistingFile);
  s->add_option("--scan", solve.scan)->check(CLI::IsMember({"serial", "parallel"}));
  s->add_flag("--oracle", solve.oracle);
  s->add_option("--out", solve.out);
  s->add_option("--save-solution", solve.save_solution);
  s->add_option("--trace", solve.trace);

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "Run the analysis checks on a (local, global) pair");
  c->add_option("--instance", cert.instance)->required()->check(CLI::ExistingFile);
  c->add_option("--local", cert.local)->required()->check(CLI::ExistingFile);
  c->add_option("--global", cert.global)->required()->check(CLI::ExistingFile);
  c->add_option("--epsilon", cert.epsilon)->required();
  c->add_option("--check", cert.check)
      ->check(CLI::IsMember({"ufl-chain", "isolation", "deletion", "all"}));
  c->add_option("--eps1", cert.eps1);
  c->add_option("--p", cert.p)->check(CLI::PositiveNumber);
  c->add_option("--f", cert.f)->check(CLI::NonNegativeNumber);
  c->add_option("--out", cert.out);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a generated instance");
  g->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"grid", "tightness", "random-euclid", "random-graph"}));
  g->add_option("--params", gen.params, "Positional or key=value parameters");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out)->required();
  g->add_option("--p", gen.p)->check(CLI::PositiveNumber);
  g->add_option("--k", gen.k)->check(CLI::PositiveNumber);
  g->add_option("--f", gen.f)->check(CLI::NonNegativeNumber);

  DivideArgs div;
  auto* dv = app.add_subcommand("divide", "Build and audit an r-division");
  dv->add_option("--instance", div.instance)->required()->check(CLI::ExistingFile);
  dv->add_option("--centers", div.centers, "Divide G_Vor of these centers (graph only)")
      ->check(CLI::ExistingFile);
  dv->add_option("--r", div.r)->check(CLI::Range(2, 1 << 20));
  dv->add_option("--queries", div.queries)->check(CLI::NonNegativeNumber);
  dv->add_option("--seed", div.seed);
  dv->add_option("--out", div.out);

  VoronoiArgs vor;
  auto* vr = app.add_subcommand("voronoi", "Dump Voronoi cells and the contracted graph");
  vr->add_option("--instance", vor.instance)->required()->check(CLI::ExistingFile);
  vr->add_option("--centers", vor.centers)->required()->check(CLI::ExistingFile);
  vr->add_option("--partition", vor.partition);
  vr->add_option("--quotient", vor.quotient);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*s) return run_solve(solve);
    if (*c) return run_certify(cert);
    if (*g) return run_generate(gen);
    if (*dv) return run_divide(div);
    if (*vr) return run_voronoi(vor);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
