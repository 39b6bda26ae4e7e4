#include "mdgm/samplers.hpp"

#include <algorithm>
#include <cmath>

namespace mdgm {

void McmcConfig::validate() const {
  if (total_iterations == 0) throw std::invalid_argument("total iterations must be positive");
  if (burn_in >= total_iterations) {
    throw std::invalid_argument("burn-in (" + std::to_string(burn_in) +
                                ") must be smaller than the total iterations (" +
                                std::to_string(total_iterations) + ")");
  }
  if (!(beta_proposal_sd > 0.0) || !std::isfinite(beta_proposal_sd)) {
    throw std::invalid_argument("beta proposal sd must be positive");
  }
  if (cftp_step_cap == 0) throw std::invalid_argument("CFTP cap must be positive");
  priors.validate();
}

namespace {

LatentField data_driven_field(const Observations& y) {
  const std::size_t total = y.total();
  const double grand = total ? static_cast<double>(y.total_ones()) / static_cast<double>(total) : 0;
  LatentField z(y.units());
  for (Vertex i = 0; i < y.units(); ++i) {
    if (y.count(i) > 0) z.set(i, y.unit_mean(i) > grand);
  }
  return z;
}

Dag initial_dag(const Nug& nug, ModelKind model, Rng& rng) {
  switch (model) {
    case ModelKind::MdgmST: return uniform_spanning_tree(nug, rng);
    case ModelKind::MdgmRooted: return rooted_dag(nug, static_cast<Vertex>(rng.index(nug.size())));
    case ModelKind::MdgmAO: return acyclic_orientation(nug, Permutation::random(nug.size(), rng));
    default: throw std::logic_error("no DAG for MRF models");
  }
}

}  // namespace

ChainState initial_state(const Observations& y, const Nug& nug, const McmcConfig& config,
                         Rng& rng) {
  ChainState s;
  if (std::holds_alternative<DataDrivenInit>(config.init)) {
    s.beta = config.priors.beta_max / 2.0;
    s.eta = NoiseParams(0.25, 0.75);
    s.z = data_driven_field(y);
  } else {
    const auto& f = std::get<FixedInit>(config.init);
    s.beta = f.beta;
    // Truth values such as eta = 0 sit on the boundary; start just inside.
    constexpr double kEdge = 1e-6;
    s.eta = NoiseParams(std::clamp(f.eta0, kEdge, 1 - kEdge), std::clamp(f.eta1, kEdge, 1 - kEdge));
    if (f.z) {
      if (f.z->size() != nug.size()) throw std::invalid_argument("initial field size mismatch");
      s.z = *f.z;
    } else {
      s.z = LatentField(nug.size());
      for (Vertex i = 0; i < nug.size(); ++i) s.z.set(i, rng.bernoulli(0.5));
    }
  }
  if (is_mdgm(config.model)) s.dag = initial_dag(nug, config.model, rng);
  return s;
}

PosteriorSamples run_chain(const Observations& y, const Nug& nug, const McmcConfig& config) {
  config.validate();
  if (y.units() != nug.size()) {
    throw std::invalid_argument("observations cover " + std::to_string(y.units()) +
                                " units but the graph has " + std::to_string(nug.size()));
  }
  if (nug.size() == 0 || !is_connected(nug)) throw GraphError("the NUG must be connected");

  Rng rng = Rng::derive(config.seed, {0x636861696eULL});
  ChainState state = initial_state(y, nug, config, rng);

  PosteriorSamples out;
  out.model = config.model;
  out.records.reserve(config.total_iterations - config.burn_in);
  auto& acc = out.acceptance;
  const bool record_tree = config.model == ModelKind::MdgmST;

  for (std::size_t b = 0; b < config.total_iterations; ++b) {
    switch (config.model) {
      case ModelKind::MdgmST:
        direct_update_st(state, nug, rng);
        break;
      case ModelKind::MdgmRooted:
      case ModelKind::MdgmAO:
        ++acc.dag_proposed;
        acc.dag_accepted += mh_update_dag(state, nug, dag_class_of(config.model), rng);
        break;
      default:
        break;
    }

    gibbs_update_z(state, nug, config.model, y, rng);

    if (config.update_beta) {
      ++acc.beta_proposed;
      if (config.model == ModelKind::ExactMrf) {
        acc.beta_accepted += exchange_update_beta_mrf(state, nug, config.priors,
                                                      config.beta_proposal_sd,
                                                      config.cftp_step_cap, rng, config.cftp_method);
      } else {
        acc.beta_accepted += mh_update_beta(state, nug, config.model, config.priors,
                                            config.beta_proposal_sd, rng);
      }
    }

    if (config.update_eta && !gibbs_update_eta(state, y, config.priors, rng)) ++acc.eta_stalls;

    state.iteration = b + 1;
    if (b >= config.burn_in) {
      SampleRecord r;
      r.iter = b;
      r.beta = state.beta;
      r.eta0 = state.eta.eta0();
      r.eta1 = state.eta.eta1();
      r.T = suff_stat_T(state.z, nug);
      r.z = state.z;
      if (record_tree) r.tree_edges = state.dag->arcs();
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace mdgm
