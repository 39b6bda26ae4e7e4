#include "mdgm/samplers.hpp"

#include <cmath>

namespace mdgm {

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::MdgmST: return "mdgm-st";
    case ModelKind::MdgmRooted: return "mdgm-rooted";
    case ModelKind::MdgmAO: return "mdgm-ao";
    case ModelKind::Amrf: return "amrf";
    case ModelKind::ExactMrf: return "exact-mrf";
  }
  return "unknown";
}

ModelKind model_from_string(const std::string& s) {
  if (s == "mdgm-st") return ModelKind::MdgmST;
  if (s == "mdgm-rooted") return ModelKind::MdgmRooted;
  if (s == "mdgm-ao") return ModelKind::MdgmAO;
  if (s == "amrf") return ModelKind::Amrf;
  if (s == "exact-mrf" || s == "mrf") return ModelKind::ExactMrf;
  throw std::invalid_argument("unknown model '" + s +
                              "' (expected mdgm-st, mdgm-rooted, mdgm-ao, amrf or exact-mrf)");
}

bool is_mdgm(ModelKind m) {
  return m == ModelKind::MdgmST || m == ModelKind::MdgmRooted || m == ModelKind::MdgmAO;
}

DagClass dag_class_of(ModelKind m) {
  switch (m) {
    case ModelKind::MdgmST: return DagClass::SpanningTree;
    case ModelKind::MdgmRooted: return DagClass::Rooted;
    case ModelKind::MdgmAO: return DagClass::AcyclicOrientation;
    default: throw std::invalid_argument("model " + to_string(m) + " has no DAG class");
  }
}

void gibbs_update_z(ChainState& state, const Nug& nug, ModelKind model, const Observations& y,
                    Rng& rng) {
  const std::size_t n = nug.size();
  if (state.z.size() != n || y.units() != n) {
    throw std::invalid_argument("gibbs_update_z: inconsistent sizes");
  }
  if (is_mdgm(model)) {
    if (!state.dag) throw std::logic_error("MDGM sweep requires a DAG in the chain state");
    for (Vertex i = 0; i < n; ++i) {
      const double p1 =
          dgm_full_conditional_posterior(i, state.z, *state.dag, state.beta, state.eta, y);
      state.z.set(i, rng.uniform() < p1);
    }
  } else {
    for (Vertex i = 0; i < n; ++i) {
      const double p1 = mrf_full_conditional_posterior(i, state.z, nug, state.beta, state.eta, y);
      state.z.set(i, rng.uniform() < p1);
    }
  }
}

bool mh_update_dag(ChainState& state, const Nug& nug, DagClass cls, Rng& rng) {
  if (!state.dag) throw std::logic_error("DAG update requires a DAG in the chain state");
  Dag proposal;
  if (cls == DagClass::Rooted) {
    proposal = rooted_dag(nug, static_cast<Vertex>(rng.index(nug.size())));
  } else if (cls == DagClass::AcyclicOrientation) {
    proposal = acyclic_orientation(nug, Permutation::random(nug.size(), rng));
  } else {
    throw std::invalid_argument("independence DAG proposals exist for Rooted and AO classes only");
  }
  // Proposal equals prior, so only the DGM density enters the ratio.
  const double log_ratio = log_dgm_prior(state.z, proposal, state.beta) -
                           log_dgm_prior(state.z, *state.dag, state.beta);
  if (log_ratio >= 0.0 || std::log(rng.uniform_open()) < log_ratio) {
    state.dag = std::move(proposal);
    return true;
  }
  return false;
}

void direct_update_st(ChainState& state, const Nug& nug, Rng& rng) {
  state.dag = posterior_spanning_tree(nug, state.z, state.beta, rng);
}

}  // namespace mdgm
