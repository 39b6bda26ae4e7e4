#pragma once

#include "mdgm/dag.hpp"
#include "mdgm/field.hpp"
#include "mdgm/graph.hpp"
#include "mdgm/model.hpp"
#include "mdgm/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mdgm {

enum class ModelKind { MdgmST, MdgmRooted, MdgmAO, Amrf, ExactMrf };

/// CLI spellings: mdgm-st, mdgm-rooted, mdgm-ao, amrf, exact-mrf (alias mrf).
std::string to_string(ModelKind m);
ModelKind model_from_string(const std::string& s);
bool is_mdgm(ModelKind m);
DagClass dag_class_of(ModelKind m);

/// Perfect sampler failed to coalesce within its site-update budget.
class CftpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Update rule inside coupling from the past. HeatBath couples single-site
/// Gibbs updates and stalls above the critical beta; Cluster couples edge
/// updates of the random-cluster representation and stays fast when ordered.
enum class CftpMethod { HeatBath, Cluster };

/// CLI spellings: heat-bath, cluster.
std::string to_string(CftpMethod m);
CftpMethod cftp_method_from_string(const std::string& s);

/// Data-driven start: eta = (0.25, 0.75), beta = beta_max / 2, and
/// z_i = I(mean(y_i) > grand mean) with z_i = 0 for unrated units.
struct DataDrivenInit {};

/// Start from given values; z drawn as fair coins when not supplied.
struct FixedInit {
  double beta = 0.0;
  double eta0 = 0.25;
  double eta1 = 0.75;
  std::optional<LatentField> z;
};

struct McmcConfig {
  std::size_t total_iterations = 2000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 0;
  ModelKind model = ModelKind::MdgmST;
  double beta_proposal_sd = 0.05;
  PriorSpec priors;
  std::variant<DataDrivenInit, FixedInit> init = DataDrivenInit{};
  std::size_t cftp_step_cap = std::size_t{1} << 20;
  CftpMethod cftp_method = CftpMethod::HeatBath;
  bool update_beta = true;
  bool update_eta = true;

  void validate() const;
};

struct ChainState {
  LatentField z;
  std::optional<Dag> dag;
  double beta = 0.0;
  NoiseParams eta{0.25, 0.75};
  std::size_t iteration = 0;
};

struct SampleRecord {
  std::size_t iter = 0;
  double beta = 0.0;
  double eta0 = 0.0;
  double eta1 = 0.0;
  std::int64_t T = 0;
  LatentField z;
  /// (child, parent) arcs of the current spanning tree; MdgmST only.
  std::vector<Arc> tree_edges;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct AcceptanceCounters {
  std::size_t dag_proposed = 0;
  std::size_t dag_accepted = 0;
  std::size_t beta_proposed = 0;
  std::size_t beta_accepted = 0;
  std::size_t eta_stalls = 0;

  friend bool operator==(const AcceptanceCounters&, const AcceptanceCounters&) = default;
};

struct PosteriorSamples {
  ModelKind model = ModelKind::MdgmST;
  std::vector<SampleRecord> records;
  AcceptanceCounters acceptance;

  friend bool operator==(const PosteriorSamples&, const PosteriorSamples&) = default;
};

/// Observer for CFTP sandwich states: (lower, upper) after each sweep.
using CftpObserver = std::function<void(const LatentField& lower, const LatentField& upper)>;

/// Monotone coupling from the past for p(z | beta) ∝ exp(beta T(z)), beta >= 0.
/// Epochs double; the uniforms for each (time, vertex) are reused across epochs.
LatentField cftp_ising(const Nug& nug, double beta, Rng& rng,
                       std::size_t site_update_cap = std::size_t{1} << 20,
                       const CftpObserver& observer = {});

/// Observer for cluster CFTP: open-edge flags (lower, upper) after each sweep,
/// indexed like nug.edges().
using EdgeObserver = std::function<void(const std::vector<std::uint8_t>& lower,
                                        const std::vector<std::uint8_t>& upper)>;

/// Coupling from the past on the random-cluster representation (q = 2, edge
/// probability 1 - exp(-beta)), then a fair coin per cluster. The cap counts
/// single-edge updates.
LatentField cftp_ising_cluster(const Nug& nug, double beta, Rng& rng,
                               std::size_t edge_update_cap = std::size_t{1} << 20,
                               const EdgeObserver& observer = {});

/// Dispatches to one of the two perfect samplers above.
LatentField perfect_ising(const Nug& nug, double beta, CftpMethod method, Rng& rng,
                          std::size_t cap = std::size_t{1} << 20);

/// One systematic-scan sweep i = 0..n-1. MDGM models use the state's DAG.
void gibbs_update_z(ChainState& state, const Nug& nug, ModelKind model, const Observations& y,
                    Rng& rng);

/// Independence proposal from the class prior (uniform root or uniform
/// permutation); returns whether it was accepted.
bool mh_update_dag(ChainState& state, const Nug& nug, DagClass cls, Rng& rng);

/// Exact draw of the spanning tree from its full conditional.
void direct_update_st(ChainState& state, const Nug& nug, Rng& rng);

/// log acceptance ratio for moving beta to beta_star under the MDGM prior or
/// the pseudo-likelihood, including the prior.
double beta_log_ratio(const ChainState& state, const Nug& nug, ModelKind model,
                      const PriorSpec& priors, double beta_star);
/// Gaussian random-walk Metropolis step on beta (MDGM and aMRF models).
bool mh_update_beta(ChainState& state, const Nug& nug, ModelKind model, const PriorSpec& priors,
                    double proposal_sd, Rng& rng);

/// Exchange-algorithm log ratio given the auxiliary draw z_star ~ p(. | beta_star).
double exchange_log_ratio(const LatentField& z, const LatentField& z_star, const Nug& nug,
                          double beta, double beta_star, const PriorSpec& priors);
bool exchange_update_beta_mrf(ChainState& state, const Nug& nug, const PriorSpec& priors,
                              double proposal_sd, std::size_t cftp_cap, Rng& rng,
                              CftpMethod method = CftpMethod::HeatBath);

/// Draws from Beta(a, b) restricted to (lo, hi) by inverse CDF; falls back to
/// rejection when the interval mass is below 1e-12. Empty when both fail.
std::optional<double> sample_truncated_beta(const BetaShape& shape, double lo, double hi, Rng& rng);

/// eta1 then eta0 from their truncated Beta full conditionals. Returns false
/// on a stall (value kept).
bool gibbs_update_eta(ChainState& state, const Observations& y, const PriorSpec& priors,
                      Rng& rng);

ChainState initial_state(const Observations& y, const Nug& nug, const McmcConfig& config,
                         Rng& rng);

/// Table-1 sweep: graph, z, beta, eta; records every post-burn-in state.
PosteriorSamples run_chain(const Observations& y, const Nug& nug, const McmcConfig& config);

/// Newline-delimited JSON records followed by the acceptance summary object.
void write_samples_jsonl(std::ostream& out, const PosteriorSamples& samples);
PosteriorSamples read_samples_jsonl(std::istream& in);

}  // namespace mdgm
