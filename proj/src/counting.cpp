#include "mdgm/graph.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace mdgm {

BigInt determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (input[i].size() != n) throw std::invalid_argument("determinant: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = input[i][j];
  }

  // Bareiss: every intermediate division is exact.
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt count_spanning_trees(const Nug& nug, Vertex row, Vertex col) {
  const std::size_t n = nug.size();
  if (n == 0) throw GraphError("spanning trees of an empty graph are undefined");
  if (row >= n || col >= n) throw std::out_of_range("cofactor position outside the Laplacian");
  if (!is_connected(nug)) throw GraphError("graph is disconnected: it has no spanning tree");
  const IntMatrix l = laplacian(nug);
  IntMatrix minor;
  minor.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == row) continue;
    std::vector<std::int64_t> r;
    r.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != col) r.push_back(l[i][j]);
    }
    minor.push_back(std::move(r));
  }
  BigInt det = determinant(minor);
  return ((row + col) % 2 == 0) ? det : BigInt(-det);
}

namespace {

// Multigraph-free edge list over vertices 0..n-1.
struct SmallGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

void normalize(SmallGraph& g) {
  for (auto& [a, b] : g.edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

BigInt ipow(long base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

class ChromaticEvaluator {
 public:
  explicit ChromaticEvaluator(long k) : k_(k) {}

  BigInt eval(SmallGraph g) {
    BigInt factor = 1;
    // Isolated vertices contribute k, pendant vertices (k - 1).
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<int> deg(g.n, 0);
      for (auto [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
      }
      std::vector<char> drop(g.n, 0);
      std::vector<char> drop_edge(g.edges.size(), 0);
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        if (drop[a] || drop[b]) continue;
        if (deg[a] == 1 || deg[b] == 1) {
          int leaf = deg[a] == 1 ? a : b;
          int other = leaf == a ? b : a;
          drop[leaf] = 1;
          drop_edge[e] = 1;
          --deg[other];
          factor *= (k_ - 1);
          changed = true;
        }
      }
      for (int v = 0; v < g.n; ++v) {
        if (!drop[v] && deg[v] == 0) {
          drop[v] = 1;
          factor *= k_;
          changed = true;
        }
      }
      if (changed) g = compact(g, drop, drop_edge);
    }
    if (g.edges.empty()) return factor * ipow(k_, g.n);

    const std::string key = serialize(g);
    if (auto it = memo_.find(key); it != memo_.end()) return factor * it->second;

    auto [a, b] = g.edges.back();
    SmallGraph deleted = g;
    deleted.edges.pop_back();

    SmallGraph contracted;
    contracted.n = g.n - 1;
    auto relabel = [a = a, b = b](int v) {
      if (v == b) v = a;
      return v > b ? v - 1 : v;
    };
    for (std::size_t e = 0; e + 1 < g.edges.size(); ++e) {
      int x = relabel(g.edges[e].first), y = relabel(g.edges[e].second);
      if (x != y) contracted.edges.emplace_back(x, y);
    }
    normalize(contracted);

    BigInt value = eval(std::move(deleted)) - eval(std::move(contracted));
    memo_.emplace(key, value);
    return factor * value;
  }

 private:
  static SmallGraph compact(const SmallGraph& g, const std::vector<char>& drop,
                            const std::vector<char>& drop_edge) {
    std::vector<int> label(g.n, -1);
    SmallGraph out;
    for (int v = 0; v < g.n; ++v) {
      if (!drop[v]) label[v] = out.n++;
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (drop_edge[e]) continue;
      out.edges.emplace_back(label[g.edges[e].first], label[g.edges[e].second]);
    }
    normalize(out);
    return out;
  }

  static std::string serialize(const SmallGraph& g) {
    std::string s = std::to_string(g.n) + ':';
    for (auto [a, b] : g.edges) {
      s += std::to_string(a);
      s += '-';
      s += std::to_string(b);
      s += ',';
    }
    return s;
  }

  long k_;
  std::map<std::string, BigInt> memo_;
};

}  // namespace

BigInt chromatic_polynomial_at(const Nug& nug, long k, std::size_t max_edges) {
  if (nug.edge_count() > max_edges) {
    throw IntractableError("chromatic polynomial: " + std::to_string(nug.edge_count()) +
                           " edges exceeds the deletion-contraction cap of " +
                           std::to_string(max_edges) +
                           "; sample orientations from random permutations instead");
  }
  SmallGraph g;
  g.n = static_cast<int>(nug.size());
  for (const auto& e : nug.edges()) g.edges.emplace_back(e.u, e.v);
  normalize(g);
  return ChromaticEvaluator(k).eval(std::move(g));
}

BigInt count_acyclic_orientations(const Nug& nug, std::size_t max_edges) {
  BigInt chi = chromatic_polynomial_at(nug, -1, max_edges);
  return (nug.size() % 2 == 0) ? chi : BigInt(-chi);
}

}  // namespace mdgm
