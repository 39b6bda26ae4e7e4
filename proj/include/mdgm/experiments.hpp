#pragma once

#include "mdgm/graph.hpp"
#include "mdgm/model.hpp"
#include "mdgm/samplers.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mdgm {

/// How many ratings each unit receives in a simulated dataset.
struct ObsScheme {
  enum class Kind { FixedM, Poisson };
  Kind kind = Kind::FixedM;
  double value = 2.0;  // m for FixedM, lambda for Poisson

  /// "fixed:<m>" or "poisson:<lambda>".
  static ObsScheme parse(const std::string& s);
  std::string to_string() const;
  void validate() const;
};

struct SimConfig {
  LatticeSpec lattice;
  double beta_true = 0.2;
  double eta = 0.2;  // eta0 = eta, eta1 = 1 - eta
  ObsScheme obs;
  std::size_t replications = 100;
  McmcConfig mcmc;  // seed and init are set per replication
  std::vector<ModelKind> models;

  void validate() const;
};

struct Dataset {
  LatentField z_true;
  Observations y;
};

/// Sample counts per unit under the scheme.
std::vector<std::size_t> draw_counts(std::size_t units, const ObsScheme& obs, Rng& rng);

/// z from the Ising model by perfect sampling, then Bernoulli(eta_{z_i}) ratings.
Dataset generate_dataset(const Nug& nug, double beta_true, double eta, const ObsScheme& obs,
                         Rng& rng, std::size_t cftp_cap = std::size_t{1} << 20);

double posterior_mean_accuracy(const PosteriorSamples& samples, const LatentField& z_true);
double posterior_rmse_T(const PosteriorSamples& samples, const LatentField& z_true,
                        const Nug& nug);

struct BootstrapCI {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.90;
  std::size_t resamples = 1000;
};

/// Percentile bootstrap of the mean: resamples of size R with replacement,
/// bounds at the (1-level)/2 and (1+level)/2 quantiles.
BootstrapCI bootstrap_ci(std::span<const double> stats, Rng& rng, std::size_t resamples = 1000,
                         double level = 0.90);

/// Linear-interpolation (type 7) sample quantile.
double quantile(std::vector<double> values, double q);

struct MetricsRecord {
  ModelKind model = ModelKind::MdgmST;
  double posterior_mean_accuracy = 0.0;
  double posterior_rmse_T = 0.0;
  double elapsed_s = 0.0;
};

struct StudyRow {
  std::size_t setting_id = 0;
  ModelKind model = ModelKind::MdgmST;
  double beta_true = 0.0;
  double eta = 0.0;
  ObsScheme obs;
  BootstrapCI accuracy;
  BootstrapCI rmse_T;
  double mean_elapsed_s = 0.0;
  std::size_t completed = 0;
  std::size_t failed = 0;
  /// Per-replication metrics in replication order (failed ones omitted).
  std::vector<MetricsRecord> replications;
};

struct StudyOptions {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  /// Initialize chains at the true beta and eta with random z.
  bool init_at_truth = true;
};

/// Runs every (setting, replication, model) cell. Output order and values do
/// not depend on the thread count.
std::vector<StudyRow> run_simulation_study(std::span<const SimConfig> grid,
                                           const StudyOptions& options);

/// Writes the study table; elapsed_s is "NA" unless include_timing.
void write_study_csv(std::ostream& out, std::span<const StudyRow> rows, bool include_timing);

struct CvRecord {
  std::size_t iteration = 0;
  ModelKind model = ModelKind::MdgmST;
  double mae = 0.0;
};

/// Posterior mean of eta_{z_i}: E[eta1 I(z_i=1) + eta0 I(z_i=0)].
double predicted_rating_probability(const PosteriorSamples& samples, Vertex unit);

/// Mean of |prediction - observed rating mean| over the held-out units.
double holdout_mae(std::span<const double> predicted, std::span<const double> observed);

/// Units drawn without replacement from those with ratings.
std::vector<Vertex> select_holdout(const Observations& y, std::size_t count, Rng& rng);

/// Each iteration withholds every rating of `holdout_count` rated units, fits
/// each model on the rest and scores the held-out units. All models see the
/// same holdout set within an iteration.
std::vector<CvRecord> cross_validate(const Observations& y, const Nug& nug,
                                     std::size_t holdout_count, std::size_t iterations,
                                     const McmcConfig& mcmc, std::span<const ModelKind> models,
                                     std::uint64_t seed, std::size_t threads = 1);

void write_cv_csv(std::ostream& out, std::span<const CvRecord> records);

// ---------------------------------------------------------------------------
// Exact enumeration. Small instances only; used to validate the samplers.

/// Undirected spanning trees as edge-index lists into nug.edges(), by
/// brute-force subset search. Throws IntractableError past `cap` trees.
std::vector<std::vector<std::size_t>> enumerate_spanning_trees(const Nug& nug,
                                                               std::size_t cap = 10000);

/// Acyclic orientations counted over all 2^|E| orientations.
std::uint64_t brute_force_acyclic_orientations(const Nug& nug);

/// p(z | beta) for the Ising model over all 2^n fields, indexed by z.code().
std::vector<double> exact_ising_distribution(const Nug& nug, double beta);

/// log R(beta) by enumeration.
double mrf_log_partition(const Nug& nug, double beta);

/// sum_z g(z | beta), the pseudo-likelihood total mass.
double pseudo_likelihood_total(const Nug& nug, double beta);

struct ExactPosterior {
  std::vector<double> marginals;       // P(z_i = 1 | y, beta, eta)
  std::vector<double> field_posterior;  // indexed by z.code()
  double log_evidence = 0.0;            // log sum_z p(y | z) prior(z)
  double log_partition = 0.0;           // MRF models: log R(beta)
  double pseudo_total = 0.0;            // Amrf only: sum_z g(z | beta)
};

/// Exact posterior of z at fixed (beta, eta). The prior on z is the Ising
/// model for ExactMrf and Amrf (whose z-update uses the Ising conditionals),
/// or the class-averaged DGM for MDGM models (all spanning trees, all roots,
/// or all permutations). Caps: n <= 12, trees <= 1e4, AO n <= 8.
ExactPosterior exact_posterior_oracle(const Observations& y, const Nug& nug, double beta,
                                      const NoiseParams& eta, ModelKind model);

/// log of prior mass sum_z p(y|z) prior(z | beta) at each beta in the grid,
/// plus log p(beta); normalize to get the beta posterior on the grid.
/// Not defined for Amrf, whose conditionals are incompatible.
std::vector<double> beta_log_posterior_grid(const Observations& y, const Nug& nug,
                                            const NoiseParams& eta, ModelKind model,
                                            const PriorSpec& priors,
                                            std::span<const double> grid);

/// Posterior P(z_i = 1 | y) with beta integrated over its prior on a grid
/// (trapezoid rule), eta fixed.
std::vector<double> beta_integrated_marginals(const Observations& y, const Nug& nug,
                                              const NoiseParams& eta, ModelKind model,
                                              const PriorSpec& priors, std::size_t grid_points);

}  // namespace mdgm
