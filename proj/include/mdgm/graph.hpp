#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdgm {

using Vertex = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact count would need exponential work beyond the cap.
class IntractableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected edge, stored with u < v. Weight 1 marks a shared border,
/// weight 2 a corner contact.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  int weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class NeighborhoodOrder { First, Second };

struct LatticeSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  NeighborhoodOrder order = NeighborhoodOrder::First;
};

/// Padded, column-major neighbor table. Row r of column c holds the c-th
/// neighbor of vertex r, or the sentinel index n when r has fewer neighbors.
/// Laid out for lane-parallel gathers across vertices.
struct EllTable {
  std::size_t rows = 0;
  std::size_t width = 0;
  std::vector<std::uint32_t> index;
};

/// Natural undirected graph over areal units. Immutable once built.
class Nug {
 public:
  Nug() = default;

  /// Validates and canonicalizes the edge list. Throws GraphError on
  /// self-loops, duplicates, out-of-range vertices or weights outside {1,2}.
  static Nug from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(Vertex i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t max_degree() const { return ell_.width; }

  bool has_edge(Vertex a, Vertex b) const;
  /// Weight of edge {a,b}; throws GraphError when absent.
  int weight(Vertex a, Vertex b) const;

  /// Struct-of-arrays endpoints, parallel to edges().
  std::span<const std::uint32_t> edge_first() const { return first_; }
  std::span<const std::uint32_t> edge_second() const { return second_; }
  const EllTable& ell() const { return ell_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::vector<int> adjacency_weight_;
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> second_;
  EllTable ell_;
};

/// Row-major lattice; first order links edge-adjacent cells (weight 1),
/// second order adds diagonal cells (weight 2).
Nug build_lattice_nug(const LatticeSpec& spec);

/// Parses `i,j[,w]` lines. When vertex_count is absent it is inferred as
/// max index + 1. Errors carry the offending line number.
Nug parse_nug(std::istream& in, std::optional<std::size_t> vertex_count = std::nullopt);
Nug load_nug(const std::filesystem::path& path,
             std::optional<std::size_t> vertex_count = std::nullopt);
void write_nug(std::ostream& out, const Nug& nug);

bool is_connected(const Nug& nug);

/// Unweighted association (adjacency) matrix.
IntMatrix association_matrix(const Nug& nug);
/// Degree matrix minus association matrix.
IntMatrix laplacian(const Nug& nug);

/// Determinant of a square integer matrix by fraction-free elimination.
BigInt determinant(const IntMatrix& m);

/// Kirchhoff count via the (row, col) cofactor of the Laplacian.
/// Throws GraphError for a disconnected graph.
BigInt count_spanning_trees(const Nug& nug, Vertex row = 0, Vertex col = 0);

/// Stanley's identity (-1)^n chi(N, -1), chi by memoized deletion-contraction.
/// Throws IntractableError when the edge count exceeds max_edges.
BigInt count_acyclic_orientations(const Nug& nug, std::size_t max_edges = 24);

/// Chromatic polynomial of the graph evaluated at an integer point.
BigInt chromatic_polynomial_at(const Nug& nug, long k, std::size_t max_edges = 24);

}  // namespace mdgm
