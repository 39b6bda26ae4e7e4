#include "mdgm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace mdgm {

Nug Nug::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} references a vertex outside [0," + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    if (e.weight != 1 && e.weight != 2) {
      throw GraphError("edge weight must be 1 or 2, got " + std::to_string(e.weight));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v) {
      throw GraphError("duplicate edge {" + std::to_string(edges[k].u) + "," +
                       std::to_string(edges[k].v) + "}");
    }
  }

  Nug g;
  g.n_ = n;
  g.edges_ = std::move(edges);

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_[n]);
  g.adjacency_weight_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[e.u]] = e.v;
    g.adjacency_weight_[fill[e.u]++] = e.weight;
    g.adjacency_[fill[e.v]] = e.u;
    g.adjacency_weight_[fill[e.v]++] = e.weight;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = g.offsets_[i], end = g.offsets_[i + 1];
    std::vector<std::pair<Vertex, int>> row;
    row.reserve(end - b);
    for (auto k = b; k < end; ++k) row.emplace_back(g.adjacency_[k], g.adjacency_weight_[k]);
    std::sort(row.begin(), row.end());
    for (auto k = b; k < end; ++k) {
      g.adjacency_[k] = row[k - b].first;
      g.adjacency_weight_[k] = row[k - b].second;
    }
  }

  g.first_.reserve(g.edges_.size());
  g.second_.reserve(g.edges_.size());
  for (const auto& e : g.edges_) {
    g.first_.push_back(e.u);
    g.second_.push_back(e.v);
  }

  std::size_t width = 0;
  for (auto d : deg) width = std::max(width, d);
  g.ell_.rows = n;
  g.ell_.width = width;
  g.ell_.index.assign(width * n, static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < deg[i]; ++c) {
      g.ell_.index[c * n + i] = g.adjacency_[g.offsets_[i] + c];
    }
  }
  return g;
}

bool Nug::has_edge(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

int Nug::weight(Vertex a, Vertex b) const {
  if (a < n_ && b < n_) {
    auto nb = neighbors(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it != nb.end() && *it == b) {
      return adjacency_weight_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
    }
  }
  throw GraphError("no edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
}

Nug build_lattice_nug(const LatticeSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1) throw GraphError("lattice dimensions must be positive");
  const std::size_t rows = spec.rows, cols = spec.cols;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1});
      if (spec.order == NeighborhoodOrder::Second && r + 1 < rows) {
        if (c + 1 < cols) edges.push_back({id(r, c), id(r + 1, c + 1), 2});
        if (c > 0) edges.push_back({id(r, c), id(r + 1, c - 1), 2});
      }
    }
  }
  return Nug::from_edges(rows * cols, std::move(edges));
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

long long parse_field(const std::string& raw, std::size_t line_no) {
  std::string f = trim(raw);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
    throw GraphError("line " + std::to_string(line_no) + ": malformed field '" + f + "'");
  }
  return v;
}

}  // namespace

Nug parse_nug(std::istream& in, std::optional<std::size_t> vertex_count) {
  struct Parsed {
    Edge edge;
    std::size_t line;
  };
  std::vector<Parsed> parsed;
  std::string line;
  std::size_t line_no = 0;
  std::size_t max_index = 0;
  bool any = false;
  std::optional<long long> header_n;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      // `# n=<k>` header from write_nug
      if (!vertex_count && t.rfind("# n=", 0) == 0) header_n = parse_field(t.substr(4), line_no);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() < 2 || fields.size() > 3) {
      throw GraphError("line " + std::to_string(line_no) + ": expected i,j[,w]");
    }
    long long a = parse_field(fields[0], line_no);
    long long b = parse_field(fields[1], line_no);
    long long w = fields.size() == 3 ? parse_field(fields[2], line_no) : 1;
    if (a < 0 || b < 0) {
      throw GraphError("line " + std::to_string(line_no) + ": vertex index out of range");
    }
    if (a == b) throw GraphError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                                 std::to_string(a));
    if (w != 1 && w != 2) {
      throw GraphError("line " + std::to_string(line_no) + ": weight must be 1 or 2");
    }
    if (vertex_count && (static_cast<std::size_t>(a) >= *vertex_count ||
                         static_cast<std::size_t>(b) >= *vertex_count)) {
      throw GraphError("line " + std::to_string(line_no) + ": vertex index out of range [0," +
                       std::to_string(*vertex_count) + ")");
    }
    Edge e{static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b)),
           static_cast<int>(w)};
    max_index = std::max<std::size_t>(max_index, e.v);
    any = true;
    parsed.push_back({e, line_no});
  }

  std::vector<std::size_t> order(parsed.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto &a = parsed[x].edge, &b = parsed[y].edge;
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto &prev = parsed[order[k - 1]], &cur = parsed[order[k]];
    if (prev.edge.u == cur.edge.u && prev.edge.v == cur.edge.v) {
      throw GraphError("line " + std::to_string(cur.line) + ": duplicate edge {" +
                       std::to_string(cur.edge.u) + "," + std::to_string(cur.edge.v) +
                       "} (first seen on line " + std::to_string(prev.line) + ")");
    }
  }

  std::vector<Edge> edges;
  edges.reserve(parsed.size());
  for (const auto& p : parsed) edges.push_back(p.edge);
  std::size_t n = vertex_count ? *vertex_count : (any ? max_index + 1 : 0);
  if (header_n) {
    if (*header_n < 0 || (any && static_cast<std::size_t>(*header_n) <= max_index)) {
      throw GraphError("header vertex count " + std::to_string(*header_n) +
                       " does not cover vertex " + std::to_string(max_index));
    }
    n = static_cast<std::size_t>(*header_n);
  }
  return Nug::from_edges(n, std::move(edges));
}

Nug load_nug(const std::filesystem::path& path, std::optional<std::size_t> vertex_count) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open edge list '" + path.string() + "'");
  return parse_nug(in, vertex_count);
}

void write_nug(std::ostream& out, const Nug& nug) {
  out << "# n=" << nug.size() << "\n";
  for (const auto& e : nug.edges()) out << e.u << ',' << e.v << ',' << e.weight << '\n';
}

bool is_connected(const Nug& nug) {
  const std::size_t n = nug.size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<Vertex> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    for (Vertex w : nug.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

IntMatrix association_matrix(const Nug& nug) {
  IntMatrix a(nug.size(), std::vector<std::int64_t>(nug.size(), 0));
  for (const auto& e : nug.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

IntMatrix laplacian(const Nug& nug) {
  IntMatrix l = association_matrix(nug);
  for (std::size_t i = 0; i < l.size(); ++i) {
    std::int64_t row_sum = 0;
    for (auto& x : l[i]) {
      row_sum += x;
      x = -x;
    }
    l[i][i] = row_sum;
  }
  return l;
}

}  // namespace mdgm
