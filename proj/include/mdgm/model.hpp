#pragma once

#include "mdgm/dag.hpp"
#include "mdgm/field.hpp"
#include "mdgm/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mdgm {

/// Ragged binary ratings: unit i holds m_i values in {0,1}.
class Observations {
 public:
  Observations() = default;
  explicit Observations(std::size_t units);
  static Observations from_ragged(const std::vector<std::vector<std::uint8_t>>& ratings);

  void add(Vertex unit, std::uint8_t value);
  /// Drops every rating at the given unit.
  void clear_unit(Vertex unit);

  std::size_t units() const { return ratings_.size(); }
  std::size_t count(Vertex i) const { return ratings_[i].size(); }
  std::span<const std::uint8_t> ratings(Vertex i) const { return ratings_[i]; }
  std::int32_t ones(Vertex i) const { return ones_[i]; }
  std::int32_t zeros(Vertex i) const { return zeros_[i]; }
  std::span<const std::int32_t> ones() const { return ones_; }
  std::span<const std::int32_t> zeros() const { return zeros_; }

  std::size_t total() const;
  std::size_t total_ones() const;
  double unit_mean(Vertex i) const;
  /// Identifiability needs some unit with more than one rating.
  bool has_replicated_unit() const;

 private:
  std::vector<std::vector<std::uint8_t>> ratings_;
  std::vector<std::int32_t> ones_;
  std::vector<std::int32_t> zeros_;
};

/// Bernoulli error rates with the label-fixing order eta0 < eta1, both in (0,1).
class NoiseParams {
 public:
  /// Throws std::invalid_argument unless 0 < eta0 < eta1 < 1.
  NoiseParams(double eta0, double eta1);

  double eta0() const { return eta0_; }
  double eta1() const { return eta1_; }
  double eta(std::uint8_t z) const { return z ? eta1_ : eta0_; }

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;

 private:
  double eta0_;
  double eta1_;
};

struct BetaShape {
  double a = 1.0;
  double b = 1.0;
  friend bool operator==(const BetaShape&, const BetaShape&) = default;
};

struct PriorSpec {
  BetaShape eta0{1.0, 1.0};
  BetaShape eta1{1.0, 1.0};
  double beta_max = 1.0;

  void validate() const;
};

/// log p(beta): Uniform(0, beta_max), -inf outside.
double log_beta_prior(double beta, const PriorSpec& priors);

double log_likelihood(const Observations& y, const LatentField& z, const NoiseParams& eta);
/// Log-likelihood of one unit's ratings given z_i.
double unit_log_likelihood(std::int32_t ones, std::int32_t zeros, std::uint8_t zi,
                           const NoiseParams& eta);

/// p(z_i | z_parents, beta) for a vertex whose parents take the given values.
double parent_conditional(std::uint8_t zi, std::span<const std::uint8_t> parent_values,
                          double beta);
/// Same, from counts of parents equal to 0 and 1.
double log_parent_conditional(std::uint8_t zi, std::size_t parents0, std::size_t parents1,
                              double beta);

double log_dgm_prior(const LatentField& z, const Dag& dag, double beta);

/// P(z_i = 1 | z_-i, D, beta).
double dgm_full_conditional_prior(Vertex i, const LatentField& z, const Dag& dag, double beta);
/// P(z_i = 1 | z_-i, D, beta, eta, y_i).
double dgm_full_conditional_posterior(Vertex i, const LatentField& z, const Dag& dag, double beta,
                                      const NoiseParams& eta, const Observations& y);

/// T(z): neighbor pairs with equal values.
std::int64_t suff_stat_T(const LatentField& z, const Nug& nug);
/// log h(z | beta) = beta * T(z).
double mrf_log_unnorm(const LatentField& z, const Nug& nug, double beta);

/// P(z_i = 1 | z_neighbors, beta) under the pairwise-match Ising model.
double mrf_full_conditional(Vertex i, const LatentField& z, const Nug& nug, double beta);
double mrf_full_conditional_posterior(Vertex i, const LatentField& z, const Nug& nug, double beta,
                                      const NoiseParams& eta, const Observations& y);

/// log g(z | beta), the product of Ising full conditionals.
double pseudo_likelihood_log(const LatentField& z, const Nug& nug, double beta);

struct EtaConditionals {
  BetaShape eta0;  // truncated to (0, eta1)
  BetaShape eta1;  // truncated to (eta0, 1)
};

EtaConditionals eta_full_conditional_params(const Observations& y, const LatentField& z,
                                            const PriorSpec& priors);

}  // namespace mdgm
