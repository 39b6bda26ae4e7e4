#pragma once

#include "mdgm/field.hpp"
#include "mdgm/graph.hpp"
#include "mdgm/rng.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mdgm {

enum class DagClass { SpanningTree, Rooted, AcyclicOrientation, General };

std::string to_string(DagClass c);
DagClass dag_class_from_string(const std::string& s);

/// Directed edge stored as (child, parent).
using Arc = std::pair<Vertex, Vertex>;

/// Directed acyclic graph over vertices 0..n-1 with sorted parent and child
/// lists. Construction rejects directed cycles.
class Dag {
 public:
  Dag() = default;
  Dag(std::size_t n, std::vector<Arc> arcs, DagClass tag = DagClass::General,
      std::optional<Vertex> root = std::nullopt);

  std::size_t size() const { return parents_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> parents(Vertex i) const { return parents_[i]; }
  std::span<const Vertex> children(Vertex i) const { return children_[i]; }
  DagClass class_tag() const { return tag_; }
  std::optional<Vertex> root() const { return root_; }

  /// All arcs as (child, parent), sorted.
  std::vector<Arc> arcs() const;
  std::vector<Vertex> orphans() const;

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  std::vector<std::vector<Vertex>> parents_;
  std::vector<std::vector<Vertex>> children_;
  std::size_t edge_count_ = 0;
  DagClass tag_ = DagClass::General;
  std::optional<Vertex> root_;
};

/// Vertex ordering; a bijection on 0..n-1.
class Permutation {
 public:
  explicit Permutation(std::vector<Vertex> order);
  static Permutation identity(std::size_t n);
  static Permutation random(std::size_t n, Rng& rng);

  std::size_t size() const { return order_.size(); }
  std::span<const Vertex> order() const { return order_; }

 private:
  std::vector<Vertex> order_;
};

/// Kahn's algorithm over arbitrary (child, parent) arcs.
bool arcs_are_acyclic(std::size_t n, std::span<const Arc> arcs);

bool is_compatible(const Dag& dag, const Nug& nug);
Nug skeleton(const Dag& dag);

/// Vertex labels are weighted shortest-path costs from the root; arcs point
/// from lower to higher label and equal-label edges are dropped.
Dag rooted_dag(const Nug& nug, Vertex root);
/// Weighted shortest-path labels used by rooted_dag.
std::vector<long> rooted_labels(const Nug& nug, Vertex root);

/// Every NUG edge oriented from the vertex earlier in the permutation.
Dag acyclic_orientation(const Nug& nug, const Permutation& perm);

/// Orients an undirected spanning tree away from root.
Dag orient_tree(std::size_t n, std::span<const Edge> tree_edges, Vertex root);

/// Wilson's loop-erased random walk; uniform over spanning trees.
Dag uniform_spanning_tree(const Nug& nug, Rng& rng);

/// Draw from p(tree | z, beta) ∝ prod over tree edges of exp(beta * I(z_i = z_j)).
Dag posterior_spanning_tree(const Nug& nug, const LatentField& z, double beta, Rng& rng);

/// Parents, children and co-parents of children, sorted, excluding i.
std::vector<Vertex> markov_blanket(const Dag& dag, Vertex i);

/// `child,parent` CSV preceded by `# root=<r> class=<tag>`.
void write_dag(std::ostream& out, const Dag& dag);
Dag read_dag(std::istream& in, std::size_t n);

}  // namespace mdgm
