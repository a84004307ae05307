#include "swapshop/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "swapshop/error.hpp"

namespace swapshop {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, int line, const char* what) {
  long long v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || tok.empty()) {
    throw ParseError(std::string("expected integer ") + what + ", got '" +
                         std::string(tok) + "'",
                     line);
  }
  return v;
}

double parse_double(std::string_view tok, int line, const char* what) {
  double v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || tok.empty() || !std::isfinite(v)) {
    throw ParseError(std::string("expected number ") + what + ", got '" +
                         std::string(tok) + "'",
                     line);
  }
  return v;
}

struct Header {
  std::optional<int> n;
  std::optional<int> d;
  std::optional<int> p;
  std::optional<double> f;
  std::optional<int> k;
  std::optional<std::vector<long long>> clients;
  std::optional<std::vector<long long>> candidates;
};

std::vector<long long> parse_id_list(std::string_view value, int line) {
  std::vector<long long> ids;
  if (trim(value).empty()) return ids;
  for (auto tok : split(value, ',')) ids.push_back(parse_int(tok, line, "id"));
  return ids;
}

void apply_header_line(Header& h, std::string_view line_text, int line) {
  const auto eq = line_text.find('=');
  const auto key = trim(line_text.substr(0, eq));
  const auto value = trim(line_text.substr(eq + 1));
  if (key == "n") {
    h.n = static_cast<int>(parse_int(value, line, "for n"));
  } else if (key == "d") {
    h.d = static_cast<int>(parse_int(value, line, "for d"));
  } else if (key == "p") {
    h.p = static_cast<int>(parse_int(value, line, "for p"));
  } else if (key == "f") {
    h.f = parse_double(value, line, "for f");
  } else if (key == "k") {
    h.k = static_cast<int>(parse_int(value, line, "for k"));
  } else if (key == "clients") {
    h.clients = parse_id_list(value, line);
  } else if (key == "candidates") {
    h.candidates = parse_id_list(value, line);
  } else {
    throw ParseError("unknown header key '" + std::string(key) + "'", line);
  }
}

void read_sidecar(Header& h, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(strip_comment(raw));
    if (text.empty()) continue;
    if (text.find('=') == std::string_view::npos) {
      throw ParseError("sidecar " + path.string() + ": expected key=value", line);
    }
    apply_header_line(h, text, line);
  }
}

void check_connected(const Instance& inst) {
  const int n = inst.num_elements;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& e : inst.edges) {
    const int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components != 1) throw Error("disconnected graph");
}

void finish_header(Instance& inst, const Header& h,
                   const std::unordered_map<long long, int>* relabel) {
  inst.p = h.p.value_or(1);
  inst.opening_cost = h.f;
  inst.k = h.k;
  auto map_ids = [&](const std::vector<long long>& ids, const char* what) {
    std::vector<int> out;
    out.reserve(ids.size());
    for (long long id : ids) {
      if (relabel) {
        auto it = relabel->find(id);
        if (it == relabel->end()) {
          throw ParseError(std::string("unknown ") + what + " id " +
                               std::to_string(id),
                           0);
        }
        out.push_back(it->second);
      } else {
        if (id < 0 || id >= inst.num_elements) {
          throw ParseError(std::string(what) + " id out of range: " +
                               std::to_string(id),
                           0);
        }
        out.push_back(static_cast<int>(id));
      }
    }
    return out;
  };
  std::vector<int> all(inst.num_elements);
  std::iota(all.begin(), all.end(), 0);
  inst.clients = h.clients ? map_ids(*h.clients, "client") : all;
  inst.candidates = h.candidates ? map_ids(*h.candidates, "candidate") : all;
  std::sort(inst.candidates.begin(), inst.candidates.end());
  inst.candidates.erase(std::unique(inst.candidates.begin(), inst.candidates.end()),
                        inst.candidates.end());
}

Instance parse_edge_list(std::istream& in, Header h) {
  Instance inst;
  inst.kind = MetricKind::Graph;
  std::unordered_map<long long, int> relabel;
  struct RawEdge {
    long long u, v;
    double w;
    int line;
  };
  std::vector<RawEdge> raw_edges;
  std::string raw;
  int line = 0;
  bool in_data = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(strip_comment(raw));
    if (text.empty()) continue;
    if (text.find('=') != std::string_view::npos) {
      if (in_data) throw ParseError("header line after data", line);
      apply_header_line(h, text, line);
      continue;
    }
    in_data = true;
    const auto toks = split_ws(text);
    if (toks.size() != 3) throw ParseError("expected 'u v w'", line);
    RawEdge e{parse_int(toks[0], line, "vertex"), parse_int(toks[1], line, "vertex"),
              parse_double(toks[2], line, "weight"), line};
    if (e.u < 0 || e.v < 0) throw ParseError("negative vertex id", line);
    if (e.w <= 0) throw ParseError("nonpositive weight", line);
    if (e.u == e.v) throw ParseError("self-loop", line);
    raw_edges.push_back(e);
  }

  if (h.n) {
    if (*h.n <= 0) throw ParseError("n must be positive", 0);
    inst.num_elements = *h.n;
    for (const auto& e : raw_edges) {
      if (e.u >= *h.n || e.v >= *h.n) throw ParseError("vertex id >= n", e.line);
      inst.edges.push_back({static_cast<int>(e.u), static_cast<int>(e.v), e.w});
    }
    finish_header(inst, h, nullptr);
  } else {
    auto id_of = [&](long long label) {
      auto [it, fresh] = relabel.try_emplace(label, static_cast<int>(relabel.size()));
      return it->second;
    };
    for (const auto& e : raw_edges) {
      const int u = id_of(e.u);
      const int v = id_of(e.v);
      inst.edges.push_back({u, v, e.w});
    }
    inst.num_elements = static_cast<int>(relabel.size());
    if (inst.num_elements == 0) throw ParseError("empty edge list", 0);
    finish_header(inst, h, &relabel);
  }
  check_connected(inst);
  inst.validate();
  return inst;
}

Instance parse_points(std::istream& in, Header h) {
  Instance inst;
  inst.kind = MetricKind::Euclidean;
  std::string raw;
  int line = 0;
  bool in_data = false;
  int dim = h.d.value_or(0);
  int rows = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(strip_comment(raw));
    if (text.empty()) continue;
    if (text.find('=') != std::string_view::npos) {
      if (in_data) throw ParseError("header line after data", line);
      apply_header_line(h, text, line);
      if (h.d) dim = *h.d;
      continue;
    }
    in_data = true;
    const auto toks = split(text, ',');
    if (dim == 0) dim = static_cast<int>(toks.size());
    if (static_cast<int>(toks.size()) != dim) {
      throw ParseError("dimension mismatch: expected " + std::to_string(dim) +
                           " coordinates, got " + std::to_string(toks.size()),
                       line);
    }
    for (auto tok : toks) inst.coords.push_back(parse_double(tok, line, "coordinate"));
    ++rows;
  }
  if (rows == 0) throw ParseError("no points", 0);
  if (dim <= 0) throw ParseError("dimension must be positive", 0);
  inst.dimension = dim;
  inst.num_elements = rows;
  if (h.n && *h.n != rows) throw ParseError("n does not match the row count", 0);
  finish_header(inst, h, nullptr);
  inst.validate();
  return inst;
}

}  // namespace

void Instance::validate() const {
  if (num_elements <= 0) throw Error("instance has no elements");
  if (p < 1) throw Error("exponent p must be >= 1");
  if (opening_cost && (*opening_cost < 0 || !std::isfinite(*opening_cost))) {
    throw Error("opening cost must be a nonnegative number");
  }
  if (candidates.empty()) throw Error("candidate set is empty");
  for (int c : clients) {
    if (c < 0 || c >= num_elements) throw Error("client id out of range");
  }
  for (int c : candidates) {
    if (c < 0 || c >= num_elements) throw Error("candidate id out of range");
  }
  if (kind == MetricKind::Graph) {
    for (const auto& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= num_elements || e.v >= num_elements) {
        throw Error("edge endpoint out of range");
      }
      if (!(e.weight > 0) || !std::isfinite(e.weight)) throw Error("nonpositive weight");
    }
    check_connected(*this);
  } else {
    if (dimension < 1) throw Error("dimension must be >= 1");
    if (coords.size() != static_cast<std::size_t>(num_elements) * dimension) {
      throw Error("dimension mismatch");
    }
  }
}

Solution::Solution(std::vector<int> centers) : centers_(std::move(centers)) {
  std::sort(centers_.begin(), centers_.end());
  centers_.erase(std::unique(centers_.begin(), centers_.end()), centers_.end());
}

bool Solution::contains(int id) const {
  return std::binary_search(centers_.begin(), centers_.end(), id);
}

std::string to_string(const Solution& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.centers()[i]);
  }
  return out + "}";
}

void validate_solution(const Instance& inst, const Solution& s, std::optional<int> k) {
  if (s.empty()) throw Error("solution is empty");
  for (int c : s) {
    if (!std::binary_search(inst.candidates.begin(), inst.candidates.end(), c)) {
      throw Error("center " + std::to_string(c) + " is not a candidate");
    }
  }
  if (k && static_cast<int>(s.size()) > *k) {
    throw Error("solution has " + std::to_string(s.size()) + " centers, k = " +
                std::to_string(*k));
  }
}

InstanceFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? InstanceFormat::PointsCsv : InstanceFormat::EdgeList;
}

Instance parse_instance(std::istream& in, InstanceFormat format) {
  return format == InstanceFormat::EdgeList ? parse_edge_list(in, {}) : parse_points(in, {});
}

Instance parse_instance_text(const std::string& text, InstanceFormat format) {
  std::istringstream in(text);
  return parse_instance(in, format);
}

Instance load_instance(const std::filesystem::path& path, InstanceFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Header h;
  auto sidecar = path;
  sidecar += ".meta";
  read_sidecar(h, sidecar);
  return format == InstanceFormat::EdgeList ? parse_edge_list(in, h) : parse_points(in, h);
}

Instance load_instance(const std::filesystem::path& path) {
  return load_instance(path, format_for_path(path));
}

std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace {

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

bool is_identity(const std::vector<int>& ids, int n) {
  if (static_cast<int>(ids.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    if (ids[i] != i) return false;
  }
  return true;
}

}  // namespace

void write_instance(std::ostream& out, const Instance& inst) {
  if (inst.is_graph()) {
    out << "n=" << inst.num_elements << '\n';
  } else {
    out << "d=" << inst.dimension << '\n';
  }
  out << "p=" << inst.p << '\n';
  if (inst.k) out << "k=" << *inst.k << '\n';
  if (inst.opening_cost) out << "f=" << format_number(*inst.opening_cost) << '\n';
  if (!is_identity(inst.clients, inst.num_elements)) {
    out << "clients=" << join_ids(inst.clients) << '\n';
  }
  if (!is_identity(inst.candidates, inst.num_elements)) {
    out << "candidates=" << join_ids(inst.candidates) << '\n';
  }
  if (inst.is_graph()) {
    for (const auto& e : inst.edges) {
      out << e.u << ' ' << e.v << ' ' << format_number(e.weight) << '\n';
    }
  } else {
    for (int i = 0; i < inst.num_elements; ++i) {
      const auto pt = inst.point(i);
      for (int j = 0; j < inst.dimension; ++j) {
        if (j) out << ',';
        out << format_number(pt[j]);
      }
      out << '\n';
    }
  }
}

std::string instance_to_string(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_instance(out, inst);
}

Solution parse_solution(std::istream& in) {
  std::vector<int> ids;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(strip_comment(raw));
    if (text.empty()) continue;
    const long long id = parse_int(text, line, "center id");
    if (id < 0) throw ParseError("negative center id", line);
    ids.push_back(static_cast<int>(id));
  }
  return Solution(std::move(ids));
}

Solution load_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_solution(in);
}

void write_solution(std::ostream& out, const Solution& s) {
  for (int c : s) out << c << '\n';
}

void save_solution(const std::filesystem::path& path, const Solution& s) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_solution(out, s);
}

std::uint64_t instance_digest(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : instance_to_string(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace swapshop
