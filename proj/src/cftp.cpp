#include "mdgm/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace mdgm {

LatentField cftp_ising(const Nug& nug, double beta, Rng& rng, std::size_t site_update_cap,
                       const CftpObserver& observer) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("monotone CFTP requires a finite beta >= 0");
  }
  const std::size_t n = nug.size();
  if (n == 0) return LatentField{};

  // Heat-bath probability of a one, indexed by (ones - zeros) among neighbors.
  const std::size_t width = nug.max_degree();
  std::vector<double> p_one(2 * width + 1);
  for (std::size_t k = 0; k < p_one.size(); ++k) {
    const double gap = static_cast<double>(k) - static_cast<double>(width);
    p_one[k] = 1.0 / (1.0 + std::exp(-beta * gap));
  }
  auto heat_bath = [&](const std::vector<std::uint8_t>& z, Vertex i, double u) -> std::uint8_t {
    std::size_t ones = 0;
    for (Vertex j : nug.neighbors(i)) ones += z[j];
    const std::size_t index = width + 2 * ones - nug.degree(i);
    return u < p_one[index] ? 1 : 0;
  };

  // Sweep s holds the uniforms applied at time -(s + 1).
  std::vector<double> uniforms;
  std::vector<std::uint8_t> lower(n), upper(n);
  std::size_t used = 0;
  for (std::size_t sweeps = 1;; sweeps *= 2) {
    if (used + sweeps * n > site_update_cap) {
      throw CftpError("coupling from the past did not coalesce within " +
                      std::to_string(site_update_cap) + " site updates at beta=" +
                      std::to_string(beta));
    }
    while (uniforms.size() < sweeps * n) uniforms.push_back(rng.uniform());
    std::fill(lower.begin(), lower.end(), 0);
    std::fill(upper.begin(), upper.end(), 1);
    for (std::size_t s = sweeps; s-- > 0;) {
      const double* u = uniforms.data() + s * n;
      for (Vertex i = 0; i < n; ++i) {
        lower[i] = heat_bath(lower, i, u[i]);
        upper[i] = heat_bath(upper, i, u[i]);
      }
      if (observer) observer(LatentField(lower), LatentField(upper));
    }
    used += sweeps * n;
    if (lower == upper) return LatentField(std::move(lower));
  }
}

std::string to_string(CftpMethod m) {
  return m == CftpMethod::Cluster ? "cluster" : "heat-bath";
}

CftpMethod cftp_method_from_string(const std::string& s) {
  if (s == "heat-bath") return CftpMethod::HeatBath;
  if (s == "cluster") return CftpMethod::Cluster;
  throw std::invalid_argument("unknown CFTP method '" + s + "' (heat-bath or cluster)");
}

LatentField cftp_ising_cluster(const Nug& nug, double beta, Rng& rng, std::size_t edge_update_cap,
                               const EdgeObserver& observer) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("cluster CFTP requires a finite beta >= 0");
  }
  const std::size_t n = nug.size();
  if (n == 0) return LatentField{};
  const auto& edges = nug.edges();
  const std::size_t m = edges.size();

  // Open given the endpoints already connected elsewhere: p; otherwise the
  // extra cluster doubles the closed weight, giving p / (2 - p).
  const double p = -std::expm1(-beta);
  const double p_bridge = p / (2.0 - p);

  std::vector<std::vector<std::pair<Vertex, std::size_t>>> incident(n);
  for (std::size_t e = 0; e < m; ++e) {
    incident[edges[e].u].emplace_back(edges[e].v, e);
    incident[edges[e].v].emplace_back(edges[e].u, e);
  }
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t current = 0;
  std::vector<Vertex> stack;
  // Whether a and b are joined by open edges other than `skip`.
  auto connected = [&](const std::vector<std::uint8_t>& open, Vertex a, Vertex b,
                       std::size_t skip) {
    ++current;
    stack.assign(1, a);
    stamp[a] = current;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (auto [w, e] : incident[v]) {
        if (e == skip || !open[e] || stamp[w] == current) continue;
        if (w == b) return true;
        stamp[w] = current;
        stack.push_back(w);
      }
    }
    return false;
  };
  auto update = [&](std::vector<std::uint8_t>& open, std::size_t e, double u) {
    const double q = connected(open, edges[e].u, edges[e].v, e) ? p : p_bridge;
    open[e] = u < q ? 1 : 0;
  };

  std::vector<double> uniforms;
  std::vector<std::uint8_t> lower(m), upper(m);
  std::size_t used = 0;
  for (std::size_t sweeps = 1;; sweeps *= 2) {
    if (used + sweeps * m > edge_update_cap) {
      throw CftpError("cluster coupling from the past did not coalesce within " +
                      std::to_string(edge_update_cap) + " edge updates at beta=" +
                      std::to_string(beta));
    }
    while (uniforms.size() < sweeps * m) uniforms.push_back(rng.uniform());
    std::fill(lower.begin(), lower.end(), 0);
    std::fill(upper.begin(), upper.end(), 1);
    for (std::size_t s = sweeps; s-- > 0;) {
      const double* u = uniforms.data() + s * m;
      for (std::size_t e = 0; e < m; ++e) {
        update(lower, e, u[e]);
        update(upper, e, u[e]);
      }
      if (observer) observer(lower, upper);
    }
    used += sweeps * m;
    if (lower == upper) break;
  }

  // Fresh coins per cluster; independent of the coalesced configuration.
  std::vector<std::uint8_t> z(n);
  std::vector<char> seen(n, 0);
  for (Vertex r = 0; r < n; ++r) {
    if (seen[r]) continue;
    const std::uint8_t colour = rng.bernoulli(0.5) ? 1 : 0;
    seen[r] = 1;
    stack.assign(1, r);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      z[v] = colour;
      for (auto [w, e] : incident[v]) {
        if (lower[e] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return LatentField(std::move(z));
}

LatentField perfect_ising(const Nug& nug, double beta, CftpMethod method, Rng& rng,
                          std::size_t cap) {
  return method == CftpMethod::Cluster ? cftp_ising_cluster(nug, beta, rng, cap)
                                       : cftp_ising(nug, beta, rng, cap);
}

}  // namespace mdgm
