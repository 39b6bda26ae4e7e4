#include "mdgm/samplers.hpp"

#include <cmath>
#include <limits>

namespace mdgm {

namespace {

bool metropolis_accept(double log_ratio, Rng& rng) {
  if (std::isnan(log_ratio)) return false;
  return log_ratio >= 0.0 || std::log(rng.uniform_open()) < log_ratio;
}

}  // namespace

double beta_log_ratio(const ChainState& state, const Nug& nug, ModelKind model,
                      const PriorSpec& priors, double beta_star) {
  const double prior_star = log_beta_prior(beta_star, priors);
  if (!std::isfinite(prior_star)) return -std::numeric_limits<double>::infinity();
  const double prior_diff = prior_star - log_beta_prior(state.beta, priors);
  if (beta_star == state.beta) return 0.0;
  if (is_mdgm(model)) {
    if (!state.dag) throw std::logic_error("MDGM beta update requires a DAG");
    return log_dgm_prior(state.z, *state.dag, beta_star) -
           log_dgm_prior(state.z, *state.dag, state.beta) + prior_diff;
  }
  if (model == ModelKind::Amrf) {
    return pseudo_likelihood_log(state.z, nug, beta_star) -
           pseudo_likelihood_log(state.z, nug, state.beta) + prior_diff;
  }
  throw std::invalid_argument("exact MRF beta updates use the exchange algorithm");
}

bool mh_update_beta(ChainState& state, const Nug& nug, ModelKind model, const PriorSpec& priors,
                    double proposal_sd, Rng& rng) {
  const double beta_star = rng.normal(state.beta, proposal_sd);
  if (metropolis_accept(beta_log_ratio(state, nug, model, priors, beta_star), rng)) {
    state.beta = beta_star;
    return true;
  }
  return false;
}

double exchange_log_ratio(const LatentField& z, const LatentField& z_star, const Nug& nug,
                          double beta, double beta_star, const PriorSpec& priors) {
  const double prior_star = log_beta_prior(beta_star, priors);
  if (!std::isfinite(prior_star)) return -std::numeric_limits<double>::infinity();
  const double t = static_cast<double>(suff_stat_T(z, nug));
  const double t_star = static_cast<double>(suff_stat_T(z_star, nug));
  return (beta_star - beta) * (t - t_star) + prior_star - log_beta_prior(beta, priors);
}

bool exchange_update_beta_mrf(ChainState& state, const Nug& nug, const PriorSpec& priors,
                              double proposal_sd, std::size_t cftp_cap, Rng& rng,
                              CftpMethod method) {
  const double beta_star = rng.normal(state.beta, proposal_sd);
  // Zero prior density: reject without spending an auxiliary draw.
  if (!std::isfinite(log_beta_prior(beta_star, priors))) return false;
  const LatentField z_star = perfect_ising(nug, beta_star, method, rng, cftp_cap);
  const double log_ratio = exchange_log_ratio(state.z, z_star, nug, state.beta, beta_star, priors);
  if (metropolis_accept(log_ratio, rng)) {
    state.beta = beta_star;
    return true;
  }
  return false;
}

}  // namespace mdgm
