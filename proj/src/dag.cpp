#include "mdgm/dag.hpp"

#include <algorithm>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mdgm {

std::string to_string(DagClass c) {
  switch (c) {
    case DagClass::SpanningTree: return "ST";
    case DagClass::Rooted: return "Rooted";
    case DagClass::AcyclicOrientation: return "AO";
    case DagClass::General: return "General";
  }
  return "General";
}

DagClass dag_class_from_string(const std::string& s) {
  if (s == "ST") return DagClass::SpanningTree;
  if (s == "Rooted") return DagClass::Rooted;
  if (s == "AO") return DagClass::AcyclicOrientation;
  if (s == "General") return DagClass::General;
  throw std::invalid_argument("unknown DAG class '" + s + "'");
}

bool arcs_are_acyclic(std::size_t n, std::span<const Arc> arcs) {
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<Vertex>> out(n);
  for (auto [child, parent] : arcs) {
    out[parent].push_back(child);
    ++indegree[child];
  }
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++visited;
    for (Vertex c : out[v]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return visited == n;
}

Dag::Dag(std::size_t n, std::vector<Arc> arcs, DagClass tag, std::optional<Vertex> root)
    : parents_(n), children_(n), tag_(tag), root_(root) {
  if (root && *root >= n) throw std::invalid_argument("DAG root outside vertex range");
  std::sort(arcs.begin(), arcs.end());
  if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end()) {
    throw std::invalid_argument("duplicate arc in DAG");
  }
  for (auto [child, parent] : arcs) {
    if (child >= n || parent >= n) throw std::invalid_argument("arc outside vertex range");
    if (child == parent) throw std::invalid_argument("self-loop in DAG");
    parents_[child].push_back(parent);
    children_[parent].push_back(child);
  }
  if (!arcs_are_acyclic(n, arcs)) throw std::invalid_argument("arcs contain a directed cycle");
  for (auto& p : parents_) std::sort(p.begin(), p.end());
  for (auto& c : children_) std::sort(c.begin(), c.end());
  edge_count_ = arcs.size();
}

std::vector<Arc> Dag::arcs() const {
  std::vector<Arc> out;
  out.reserve(edge_count_);
  for (Vertex c = 0; c < size(); ++c) {
    for (Vertex p : parents_[c]) out.emplace_back(c, p);
  }
  return out;
}

std::vector<Vertex> Dag::orphans() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v) {
    if (parents_[v].empty()) out.push_back(v);
  }
  return out;
}

Permutation::Permutation(std::vector<Vertex> order) : order_(std::move(order)) {
  std::vector<char> seen(order_.size(), 0);
  for (Vertex v : order_) {
    if (v >= order_.size() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> o(n);
  std::iota(o.begin(), o.end(), Vertex{0});
  return Permutation(std::move(o));
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
  std::vector<Vertex> o(n);
  std::iota(o.begin(), o.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(o[i - 1], o[rng.index(i)]);
  return Permutation(std::move(o));
}

bool is_compatible(const Dag& dag, const Nug& nug) {
  if (dag.size() != nug.size()) {
    throw std::invalid_argument("compatibility check: DAG has " + std::to_string(dag.size()) +
                                " vertices, NUG has " + std::to_string(nug.size()));
  }
  for (Vertex c = 0; c < dag.size(); ++c) {
    for (Vertex p : dag.parents(c)) {
      if (!nug.has_edge(c, p)) return false;
    }
  }
  return true;
}

Nug skeleton(const Dag& dag) {
  std::vector<Edge> edges;
  edges.reserve(dag.edge_count());
  for (auto [c, p] : dag.arcs()) edges.push_back({std::min(c, p), std::max(c, p), 1});
  return Nug::from_edges(dag.size(), std::move(edges));
}

std::vector<long> rooted_labels(const Nug& nug, Vertex root) {
  const std::size_t n = nug.size();
  if (root >= n) throw std::out_of_range("root outside vertex range");
  constexpr long kUnreached = -1;
  std::vector<long> label(n, kUnreached);
  using Item = std::pair<long, Vertex>;
  // Min-heap on (cost, vertex): ties resolve to the lower index.
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<long> best(n, std::numeric_limits<long>::max());
  best[root] = 0;
  heap.emplace(0, root);
  while (!heap.empty()) {
    auto [cost, v] = heap.top();
    heap.pop();
    if (label[v] != kUnreached) continue;
    label[v] = cost;
    for (Vertex w : nug.neighbors(v)) {
      long c = cost + nug.weight(v, w);
      if (label[w] == kUnreached && c < best[w]) {
        best[w] = c;
        heap.emplace(c, w);
      }
    }
  }
  for (auto l : label) {
    if (l == kUnreached) throw GraphError("rooted DAG requires a connected NUG");
  }
  return label;
}

Dag rooted_dag(const Nug& nug, Vertex root) {
  const auto label = rooted_labels(nug, root);
  std::vector<Arc> arcs;
  for (const auto& e : nug.edges()) {
    if (label[e.u] < label[e.v]) arcs.emplace_back(e.v, e.u);
    else if (label[e.u] > label[e.v]) arcs.emplace_back(e.u, e.v);
  }
  return Dag(nug.size(), std::move(arcs), DagClass::Rooted, root);
}

Dag acyclic_orientation(const Nug& nug, const Permutation& perm) {
  if (perm.size() != nug.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> position(nug.size());
  for (std::size_t k = 0; k < perm.size(); ++k) position[perm.order()[k]] = k;
  std::vector<Arc> arcs;
  arcs.reserve(nug.edge_count());
  for (const auto& e : nug.edges()) {
    if (position[e.u] < position[e.v]) arcs.emplace_back(e.v, e.u);
    else arcs.emplace_back(e.u, e.v);
  }
  return Dag(nug.size(), std::move(arcs), DagClass::AcyclicOrientation);
}

Dag orient_tree(std::size_t n, std::span<const Edge> tree_edges, Vertex root) {
  if (root >= n) throw std::out_of_range("root outside vertex range");
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : tree_edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<Arc> arcs;
  arcs.reserve(tree_edges.size());
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        arcs.emplace_back(w, v);
        stack.push_back(w);
      }
    }
  }
  if (arcs.size() != tree_edges.size() || arcs.size() + 1 != n) {
    throw GraphError("edge set is not a spanning tree");
  }
  return Dag(n, std::move(arcs), DagClass::SpanningTree, root);
}

std::vector<Vertex> markov_blanket(const Dag& dag, Vertex i) {
  if (i >= dag.size()) throw std::out_of_range("vertex outside DAG");
  std::vector<Vertex> blanket(dag.parents(i).begin(), dag.parents(i).end());
  for (Vertex c : dag.children(i)) {
    blanket.push_back(c);
    for (Vertex p : dag.parents(c)) blanket.push_back(p);
  }
  std::sort(blanket.begin(), blanket.end());
  blanket.erase(std::unique(blanket.begin(), blanket.end()), blanket.end());
  blanket.erase(std::remove(blanket.begin(), blanket.end(), i), blanket.end());
  return blanket;
}

void write_dag(std::ostream& out, const Dag& dag) {
  out << "# root=";
  if (dag.root()) out << *dag.root();
  else out << "none";
  out << " class=" << to_string(dag.class_tag()) << '\n';
  for (auto [c, p] : dag.arcs()) out << c << ',' << p << '\n';
}

Dag read_dag(std::istream& in, std::size_t n) {
  std::string line;
  std::optional<Vertex> root;
  DagClass tag = DagClass::General;
  std::vector<Arc> arcs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("root=", 0) == 0) {
          auto v = tok.substr(5);
          if (v != "none") root = static_cast<Vertex>(std::stoul(v));
        } else if (tok.rfind("class=", 0) == 0) {
          tag = dag_class_from_string(tok.substr(6));
        }
      }
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected child,parent");
    }
    arcs.emplace_back(static_cast<Vertex>(std::stoul(line.substr(0, comma))),
                      static_cast<Vertex>(std::stoul(line.substr(comma + 1))));
  }
  return Dag(n, std::move(arcs), tag, root);
}

}  // namespace mdgm
