#include "mdgm/dag.hpp"

#include <cmath>

namespace mdgm {

namespace {

// Random-walk Wilson sampler. `step(u)` returns the next vertex of the walk
// from u; the tree it produces has probability proportional to the product
// of edge weights when step is a reversible walk on symmetric weights.
template <typename Step>
Dag wilson(const Nug& nug, Rng& rng, Step&& step) {
  const std::size_t n = nug.size();
  if (n == 0) throw GraphError("spanning tree of an empty graph");
  if (!is_connected(nug)) throw GraphError("spanning tree requires a connected NUG");
  const Vertex root = static_cast<Vertex>(rng.index(n));
  std::vector<char> in_tree(n, 0);
  std::vector<Vertex> next(n, root);
  in_tree[root] = 1;
  for (Vertex start = 0; start < n; ++start) {
    // Overwriting next[] on revisits performs the loop erasure.
    for (Vertex u = start; !in_tree[u]; u = next[u]) next[u] = step(u);
    for (Vertex u = start; !in_tree[u]; u = next[u]) in_tree[u] = 1;
  }
  std::vector<Arc> arcs;
  arcs.reserve(n - 1);
  for (Vertex v = 0; v < n; ++v) {
    if (v != root) arcs.emplace_back(v, next[v]);
  }
  return Dag(n, std::move(arcs), DagClass::SpanningTree, root);
}

}  // namespace

Dag uniform_spanning_tree(const Nug& nug, Rng& rng) {
  return wilson(nug, rng, [&](Vertex u) {
    auto nb = nug.neighbors(u);
    return nb[rng.index(nb.size())];
  });
}

Dag posterior_spanning_tree(const Nug& nug, const LatentField& z, double beta, Rng& rng) {
  if (z.size() != nug.size()) throw std::invalid_argument("latent field size mismatch");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  // The parent weight exp(beta I(z_i = z_j)) / (exp(beta I(z_j = 0)) + exp(beta I(z_j = 1)))
  // has a tree-independent denominator 1 + e^beta, so the walk only needs the
  // two-level edge weight.
  const double match_weight = std::exp(beta);
  return wilson(nug, rng, [&](Vertex u) {
    auto nb = nug.neighbors(u);
    std::size_t matches = 0;
    for (Vertex v : nb) matches += (z[v] == z[u]);
    const std::size_t others = nb.size() - matches;
    const double mass_match = match_weight * static_cast<double>(matches);
    const bool pick_match =
        others == 0 || (matches > 0 && rng.uniform() * (mass_match + static_cast<double>(others)) <
                                           mass_match);
    std::size_t k = rng.index(pick_match ? matches : others);
    for (Vertex v : nb) {
      if ((z[v] == z[u]) == pick_match && k-- == 0) return v;
    }
    return nb.back();  // unreachable
  });
}

}  // namespace mdgm
