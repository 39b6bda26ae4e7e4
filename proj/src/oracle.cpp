#include "mdgm/experiments.hpp"

#include <cmath>
#include <numeric>

namespace mdgm {

namespace {

constexpr std::size_t kMaxOracleUnits = 12;
constexpr std::size_t kMaxPermutationUnits = 8;

double log_sum_exp(std::span<const double> xs) {
  double m = -INFINITY;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

struct UnionFind {
  std::vector<Vertex> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Vertex find(Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
};

void check_units(const Nug& nug) {
  if (nug.size() == 0) throw std::invalid_argument("oracle needs a non-empty graph");
  if (nug.size() > kMaxOracleUnits) {
    throw IntractableError("oracle enumeration is capped at " + std::to_string(kMaxOracleUnits) +
                           " units, got " + std::to_string(nug.size()));
  }
}

// Class members whose average defines the MDGM prior on z.
std::vector<Dag> class_members(const Nug& nug, ModelKind model) {
  std::vector<Dag> dags;
  const std::size_t n = nug.size();
  switch (model) {
    case ModelKind::MdgmST: {
      for (const auto& tree : enumerate_spanning_trees(nug)) {
        std::vector<Edge> edges;
        for (std::size_t k : tree) edges.push_back(nug.edges()[k]);
        dags.push_back(orient_tree(n, edges, 0));
      }
      break;
    }
    case ModelKind::MdgmRooted:
      for (Vertex r = 0; r < n; ++r) dags.push_back(rooted_dag(nug, r));
      break;
    case ModelKind::MdgmAO: {
      if (n > kMaxPermutationUnits) {
        throw IntractableError("AO oracle enumerates n! permutations; capped at n = " +
                               std::to_string(kMaxPermutationUnits));
      }
      std::vector<Vertex> order(n);
      std::iota(order.begin(), order.end(), Vertex{0});
      do {
        dags.push_back(acyclic_orientation(nug, Permutation(order)));
      } while (std::next_permutation(order.begin(), order.end()));
      break;
    }
    default: break;
  }
  return dags;
}

// log prior(z | beta) for every code. The aMRF z-update uses the Ising full
// conditionals, so at fixed beta it shares the exact MRF target.
std::vector<double> log_prior_table(const Nug& nug, double beta, ModelKind model,
                                    const std::vector<Dag>& members) {
  const std::size_t n = nug.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> out(states);
  std::vector<double> per_dag(members.size());
  for (std::uint64_t c = 0; c < states; ++c) {
    const LatentField z = LatentField::from_code(c, n);
    switch (model) {
      case ModelKind::ExactMrf:
      case ModelKind::Amrf: out[c] = mrf_log_unnorm(z, nug, beta); break;
      default:
        for (std::size_t d = 0; d < members.size(); ++d) {
          per_dag[d] = log_dgm_prior(z, members[d], beta);
        }
        out[c] = log_sum_exp(per_dag) - std::log(static_cast<double>(members.size()));
    }
  }
  if (model == ModelKind::ExactMrf || model == ModelKind::Amrf) {
    const double log_r = log_sum_exp(out);
    for (auto& x : out) x -= log_r;
  }
  return out;
}

std::vector<double> log_likelihood_table(const Observations& y, const Nug& nug,
                                         const NoiseParams& eta) {
  const std::size_t n = nug.size();
  std::vector<double> out(std::uint64_t{1} << n);
  for (std::uint64_t c = 0; c < out.size(); ++c) {
    out[c] = log_likelihood(y, LatentField::from_code(c, n), eta);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_spanning_trees(const Nug& nug, std::size_t cap) {
  const std::size_t n = nug.size();
  const std::size_t m = nug.edge_count();
  std::vector<std::vector<std::size_t>> trees;
  if (n == 0) return trees;
  if (n == 1) return {{}};
  std::vector<std::size_t> chosen;
  auto recurse = [&](auto&& self, std::size_t next, const UnionFind& uf) -> void {
    if (chosen.size() == n - 1) {
      if (trees.size() == cap) {
        throw IntractableError("more than " + std::to_string(cap) + " spanning trees");
      }
      trees.push_back(chosen);
      return;
    }
    if (m - next < n - 1 - chosen.size()) return;
    for (std::size_t k = next; k < m; ++k) {
      if (m - k < n - 1 - chosen.size()) break;
      UnionFind branch = uf;
      const Vertex a = branch.find(nug.edges()[k].u);
      const Vertex b = branch.find(nug.edges()[k].v);
      if (a == b) continue;
      branch.parent[a] = b;
      chosen.push_back(k);
      self(self, k + 1, branch);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, UnionFind(n));
  return trees;
}

std::uint64_t brute_force_acyclic_orientations(const Nug& nug) {
  const std::size_t m = nug.edge_count();
  if (m > 30) throw IntractableError("brute-force orientation count capped at 30 edges");
  std::uint64_t count = 0;
  std::vector<Arc> arcs(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto& e = nug.edges()[k];
      arcs[k] = (mask >> k) & 1 ? Arc{e.u, e.v} : Arc{e.v, e.u};
    }
    count += arcs_are_acyclic(nug.size(), arcs);
  }
  return count;
}

std::vector<double> exact_ising_distribution(const Nug& nug, double beta) {
  check_units(nug);
  auto logp = log_prior_table(nug, beta, ModelKind::ExactMrf, {});
  for (auto& x : logp) x = std::exp(x);
  return logp;
}

double mrf_log_partition(const Nug& nug, double beta) {
  check_units(nug);
  const std::size_t n = nug.size();
  std::vector<double> w(std::uint64_t{1} << n);
  for (std::uint64_t c = 0; c < w.size(); ++c) {
    w[c] = mrf_log_unnorm(LatentField::from_code(c, n), nug, beta);
  }
  return log_sum_exp(w);
}

double pseudo_likelihood_total(const Nug& nug, double beta) {
  check_units(nug);
  const std::size_t n = nug.size();
  double total = 0.0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
    total += std::exp(pseudo_likelihood_log(LatentField::from_code(c, n), nug, beta));
  }
  return total;
}

ExactPosterior exact_posterior_oracle(const Observations& y, const Nug& nug, double beta,
                                      const NoiseParams& eta, ModelKind model) {
  check_units(nug);
  if (y.units() != nug.size()) throw std::invalid_argument("observations and graph differ in size");
  const std::size_t n = nug.size();
  const auto members = class_members(nug, model);
  const auto prior = log_prior_table(nug, beta, model, members);
  const auto lik = log_likelihood_table(y, nug, eta);
  std::vector<double> joint(prior.size());
  for (std::size_t c = 0; c < joint.size(); ++c) joint[c] = prior[c] + lik[c];

  ExactPosterior out;
  out.log_evidence = log_sum_exp(joint);
  out.field_posterior.resize(joint.size());
  out.marginals.assign(n, 0.0);
  for (std::uint64_t c = 0; c < joint.size(); ++c) {
    const double p = std::exp(joint[c] - out.log_evidence);
    out.field_posterior[c] = p;
    for (std::size_t i = 0; i < n; ++i) {
      if ((c >> i) & 1) out.marginals[i] += p;
    }
  }
  if (model == ModelKind::ExactMrf || model == ModelKind::Amrf) {
    out.log_partition = mrf_log_partition(nug, beta);
  }
  if (model == ModelKind::Amrf) out.pseudo_total = pseudo_likelihood_total(nug, beta);
  return out;
}

std::vector<double> beta_log_posterior_grid(const Observations& y, const Nug& nug,
                                            const NoiseParams& eta, ModelKind model,
                                            const PriorSpec& priors,
                                            std::span<const double> grid) {
  check_units(nug);
  if (model == ModelKind::Amrf) {
    throw std::invalid_argument("the aMRF chain has no joint (z, beta) target to integrate");
  }
  const auto members = class_members(nug, model);
  const auto lik = log_likelihood_table(y, nug, eta);
  std::vector<double> out;
  out.reserve(grid.size());
  std::vector<double> joint(lik.size());
  for (double b : grid) {
    const auto prior = log_prior_table(nug, b, model, members);
    for (std::size_t c = 0; c < joint.size(); ++c) joint[c] = prior[c] + lik[c];
    out.push_back(log_sum_exp(joint) + log_beta_prior(b, priors));
  }
  return out;
}

std::vector<double> beta_integrated_marginals(const Observations& y, const Nug& nug,
                                              const NoiseParams& eta, ModelKind model,
                                              const PriorSpec& priors, std::size_t grid_points) {
  if (grid_points < 2) throw std::invalid_argument("need at least two grid points");
  if (model == ModelKind::Amrf) {
    throw std::invalid_argument("the aMRF chain has no joint (z, beta) target to integrate");
  }
  const std::size_t n = nug.size();
  std::vector<double> marg(n, 0.0);
  std::vector<double> logw(grid_points);
  std::vector<std::vector<double>> per_beta(grid_points);
  const double h = priors.beta_max / static_cast<double>(grid_points - 1);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double b = h * static_cast<double>(k);
    const auto post = exact_posterior_oracle(y, nug, b, eta, model);
    const double trapezoid = (k == 0 || k + 1 == grid_points) ? 0.5 : 1.0;
    logw[k] = post.log_evidence + std::log(trapezoid);
    per_beta[k] = post.marginals;
  }
  const double total = log_sum_exp(logw);
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double w = std::exp(logw[k] - total);
    for (std::size_t i = 0; i < n; ++i) marg[i] += w * per_beta[k][i];
  }
  return marg;
}

}  // namespace mdgm
