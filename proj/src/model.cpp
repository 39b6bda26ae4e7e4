#include "mdgm/model.hpp"

#include "mdgm/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mdgm {

namespace {

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

// log p(z_k | z_pi(k)) for child k when its parent i takes value x.
double child_term(const LatentField& z, const Dag& dag, Vertex k, Vertex i, std::uint8_t x,
                  double beta) {
  std::size_t p0 = 0, p1 = 0;
  for (Vertex p : dag.parents(k)) {
    const std::uint8_t v = (p == i) ? x : z[p];
    (v ? p1 : p0) += 1;
  }
  return log_parent_conditional(z[k], p0, p1, beta);
}

double dgm_log_weight(Vertex i, std::uint8_t x, const LatentField& z, const Dag& dag,
                      double beta) {
  std::size_t p0 = 0, p1 = 0;
  for (Vertex p : dag.parents(i)) (z[p] ? p1 : p0) += 1;
  double lw = log_parent_conditional(x, p0, p1, beta);
  for (Vertex k : dag.children(i)) lw += child_term(z, dag, k, i, x, beta);
  return lw;
}

double logistic_from_weights(double lw0, double lw1) { return 1.0 / (1.0 + std::exp(lw0 - lw1)); }

}  // namespace

Observations::Observations(std::size_t units) : ratings_(units), ones_(units, 0), zeros_(units, 0) {}

Observations Observations::from_ragged(const std::vector<std::vector<std::uint8_t>>& ratings) {
  Observations y(ratings.size());
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    for (auto v : ratings[i]) y.add(static_cast<Vertex>(i), v);
  }
  return y;
}

void Observations::add(Vertex unit, std::uint8_t value) {
  if (unit >= ratings_.size()) throw std::out_of_range("rating for unknown unit");
  if (value > 1) throw std::invalid_argument("ratings must be 0 or 1");
  ratings_[unit].push_back(value);
  (value ? ones_ : zeros_)[unit] += 1;
}

void Observations::clear_unit(Vertex unit) {
  ratings_.at(unit).clear();
  ones_[unit] = zeros_[unit] = 0;
}

std::size_t Observations::total() const {
  std::size_t t = 0;
  for (const auto& r : ratings_) t += r.size();
  return t;
}

std::size_t Observations::total_ones() const {
  std::size_t t = 0;
  for (auto o : ones_) t += static_cast<std::size_t>(o);
  return t;
}

double Observations::unit_mean(Vertex i) const {
  if (ratings_[i].empty()) throw std::domain_error("unit has no ratings");
  return static_cast<double>(ones_[i]) / static_cast<double>(ratings_[i].size());
}

bool Observations::has_replicated_unit() const {
  for (const auto& r : ratings_) {
    if (r.size() > 1) return true;
  }
  return false;
}

NoiseParams::NoiseParams(double eta0, double eta1) : eta0_(eta0), eta1_(eta1) {
  if (!(eta0 > 0.0 && eta1 < 1.0 && eta0 < eta1)) {
    throw std::invalid_argument("noise parameters require 0 < eta0 < eta1 < 1, got eta0=" +
                                std::to_string(eta0) + " eta1=" + std::to_string(eta1));
  }
}

void PriorSpec::validate() const {
  if (!(eta0.a > 0 && eta0.b > 0 && eta1.a > 0 && eta1.b > 0)) {
    throw std::invalid_argument("beta prior shape parameters must be positive");
  }
  if (!(beta_max > 0) || !std::isfinite(beta_max)) {
    throw std::invalid_argument("beta_max must be positive and finite");
  }
}

double log_beta_prior(double beta, const PriorSpec& priors) {
  if (beta < 0.0 || beta > priors.beta_max) return -std::numeric_limits<double>::infinity();
  return -std::log(priors.beta_max);
}

double unit_log_likelihood(std::int32_t ones, std::int32_t zeros, std::uint8_t zi,
                           const NoiseParams& eta) {
  const double e = eta.eta(zi);
  return ones * std::log(e) + zeros * std::log1p(-e);
}

double log_likelihood(const Observations& y, const LatentField& z, const NoiseParams& eta) {
  require_same_size(y.units(), z.size(), "log_likelihood");
  const auto s = kernels::split_counts(z.values(), y.ones(), y.zeros());
  double ll = 0.0;
  if (s.ones_z1) ll += static_cast<double>(s.ones_z1) * std::log(eta.eta1());
  if (s.zeros_z1) ll += static_cast<double>(s.zeros_z1) * std::log1p(-eta.eta1());
  if (s.ones_z0) ll += static_cast<double>(s.ones_z0) * std::log(eta.eta0());
  if (s.zeros_z0) ll += static_cast<double>(s.zeros_z0) * std::log1p(-eta.eta0());
  return ll;
}

double log_parent_conditional(std::uint8_t zi, std::size_t parents0, std::size_t parents1,
                              double beta) {
  const double a0 = beta * static_cast<double>(parents0);
  const double a1 = beta * static_cast<double>(parents1);
  return (zi ? a1 : a0) - log_sum_exp(a0, a1);
}

double parent_conditional(std::uint8_t zi, std::span<const std::uint8_t> parent_values,
                          double beta) {
  std::size_t p1 = 0;
  for (auto v : parent_values) p1 += (v != 0);
  return std::exp(log_parent_conditional(zi, parent_values.size() - p1, p1, beta));
}

double log_dgm_prior(const LatentField& z, const Dag& dag, double beta) {
  require_same_size(z.size(), dag.size(), "log_dgm_prior");
  double lp = 0.0;
  for (Vertex i = 0; i < z.size(); ++i) {
    std::size_t p0 = 0, p1 = 0;
    for (Vertex p : dag.parents(i)) (z[p] ? p1 : p0) += 1;
    lp += log_parent_conditional(z[i], p0, p1, beta);
  }
  return lp;
}

double dgm_full_conditional_prior(Vertex i, const LatentField& z, const Dag& dag, double beta) {
  require_same_size(z.size(), dag.size(), "dgm_full_conditional_prior");
  return logistic_from_weights(dgm_log_weight(i, 0, z, dag, beta),
                               dgm_log_weight(i, 1, z, dag, beta));
}

double dgm_full_conditional_posterior(Vertex i, const LatentField& z, const Dag& dag, double beta,
                                      const NoiseParams& eta, const Observations& y) {
  require_same_size(z.size(), dag.size(), "dgm_full_conditional_posterior");
  require_same_size(z.size(), y.units(), "dgm_full_conditional_posterior");
  const double lw0 = dgm_log_weight(i, 0, z, dag, beta) +
                     unit_log_likelihood(y.ones(i), y.zeros(i), 0, eta);
  const double lw1 = dgm_log_weight(i, 1, z, dag, beta) +
                     unit_log_likelihood(y.ones(i), y.zeros(i), 1, eta);
  return logistic_from_weights(lw0, lw1);
}

std::int64_t suff_stat_T(const LatentField& z, const Nug& nug) {
  require_same_size(z.size(), nug.size(), "suff_stat_T");
  return kernels::count_matching_edges(z.values(), nug.edge_first(), nug.edge_second());
}

double mrf_log_unnorm(const LatentField& z, const Nug& nug, double beta) {
  return beta * static_cast<double>(suff_stat_T(z, nug));
}

namespace {

std::pair<std::size_t, std::size_t> neighbor_counts(Vertex i, const LatentField& z,
                                                    const Nug& nug) {
  std::size_t n1 = 0;
  for (Vertex j : nug.neighbors(i)) n1 += z[j];
  return {nug.degree(i) - n1, n1};
}

}  // namespace

double mrf_full_conditional(Vertex i, const LatentField& z, const Nug& nug, double beta) {
  require_same_size(z.size(), nug.size(), "mrf_full_conditional");
  auto [n0, n1] = neighbor_counts(i, z, nug);
  return logistic_from_weights(beta * static_cast<double>(n0), beta * static_cast<double>(n1));
}

double mrf_full_conditional_posterior(Vertex i, const LatentField& z, const Nug& nug, double beta,
                                      const NoiseParams& eta, const Observations& y) {
  require_same_size(z.size(), nug.size(), "mrf_full_conditional_posterior");
  auto [n0, n1] = neighbor_counts(i, z, nug);
  const double lw0 =
      beta * static_cast<double>(n0) + unit_log_likelihood(y.ones(i), y.zeros(i), 0, eta);
  const double lw1 =
      beta * static_cast<double>(n1) + unit_log_likelihood(y.ones(i), y.zeros(i), 1, eta);
  return logistic_from_weights(lw0, lw1);
}

double pseudo_likelihood_log(const LatentField& z, const Nug& nug, double beta) {
  require_same_size(z.size(), nug.size(), "pseudo_likelihood_log");
  const std::size_t n = z.size();
  std::vector<std::int32_t> ones(n);
  kernels::neighbor_one_counts(nug.ell(), z.values(), ones);
  // log(e^{b n0} + e^{b n1}) = b * dominant + log1p(e^{-|b| |n1 - n0|}); the
  // integer parts accumulate exactly and the log terms group by |n1 - n0|.
  std::int64_t linear = 0;
  std::vector<std::int64_t> gap_histogram(nug.max_degree() + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t n1 = ones[i];
    const std::int64_t n0 = static_cast<std::int64_t>(nug.degree(static_cast<Vertex>(i))) - n1;
    const std::int64_t match = z[i] ? n1 : n0;
    const std::int64_t dominant = beta >= 0 ? std::max(n0, n1) : std::min(n0, n1);
    linear += match - dominant;
    gap_histogram[static_cast<std::size_t>(std::abs(n1 - n0))] += 1;
  }
  double lp = beta * static_cast<double>(linear);
  for (std::size_t gap = 0; gap < gap_histogram.size(); ++gap) {
    if (gap_histogram[gap]) {
      lp -= static_cast<double>(gap_histogram[gap]) *
            std::log1p(std::exp(-std::abs(beta) * static_cast<double>(gap)));
    }
  }
  return lp;
}

EtaConditionals eta_full_conditional_params(const Observations& y, const LatentField& z,
                                            const PriorSpec& priors) {
  require_same_size(y.units(), z.size(), "eta_full_conditional_params");
  const auto s = kernels::split_counts(z.values(), y.ones(), y.zeros());
  EtaConditionals c;
  c.eta1 = {priors.eta1.a + static_cast<double>(s.ones_z1),
            priors.eta1.b + static_cast<double>(s.zeros_z1)};
  c.eta0 = {priors.eta0.a + static_cast<double>(s.ones_z0),
            priors.eta0.b + static_cast<double>(s.zeros_z0)};
  return c;
}

}  // namespace mdgm
