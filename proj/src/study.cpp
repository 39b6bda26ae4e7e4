#include "mdgm/experiments.hpp"

#include "parallel.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>

namespace mdgm {

namespace {

constexpr std::uint64_t kDataStream = 0x64617461;
constexpr std::uint64_t kChainStream = 0x6d636d63;
constexpr std::uint64_t kBootStream = 0x626f6f74;

struct CellResult {
  std::optional<MetricsRecord> metrics;
};

MetricsRecord run_cell(const SimConfig& cfg, const Nug& nug, std::size_t setting,
                       std::size_t rep, std::size_t model_index, const StudyOptions& options) {
  Rng data_rng = Rng::derive(options.seed, {kDataStream, setting, rep});
  const Dataset data = generate_dataset(nug, cfg.beta_true, cfg.eta, cfg.obs, data_rng,
                                        cfg.mcmc.cftp_step_cap);
  McmcConfig mcmc = cfg.mcmc;
  mcmc.model = cfg.models[model_index];
  mcmc.seed = Rng::derive(options.seed, {kChainStream, setting, rep, model_index}).next_seed();
  if (options.init_at_truth) {
    mcmc.init = FixedInit{cfg.beta_true, cfg.eta, 1.0 - cfg.eta, std::nullopt};
  }
  const auto start = std::chrono::steady_clock::now();
  const PosteriorSamples samples = run_chain(data.y, nug, mcmc);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  MetricsRecord m;
  m.model = mcmc.model;
  m.posterior_mean_accuracy = posterior_mean_accuracy(samples, data.z_true);
  m.posterior_rmse_T = posterior_rmse_T(samples, data.z_true, nug);
  m.elapsed_s = elapsed.count();
  return m;
}

}  // namespace

std::vector<StudyRow> run_simulation_study(std::span<const SimConfig> grid,
                                           const StudyOptions& options) {
  std::vector<Nug> nugs;
  struct Task {
    std::size_t setting, rep, model;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    grid[s].validate();
    nugs.push_back(build_lattice_nug(grid[s].lattice));
    for (std::size_t r = 0; r < grid[s].replications; ++r) {
      for (std::size_t m = 0; m < grid[s].models.size(); ++m) tasks.push_back({s, r, m});
    }
  }
  std::vector<CellResult> results(tasks.size());
  detail::parallel_for(tasks.size(), options.threads, [&](std::size_t k) {
    const Task& t = tasks[k];
    try {
      results[k].metrics = run_cell(grid[t.setting], nugs[t.setting], t.setting, t.rep, t.model,
                                    options);
    } catch (const std::exception&) {
      // counted as a failed replication below
    }
  });

  std::vector<StudyRow> rows;
  std::size_t k = 0;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const SimConfig& cfg = grid[s];
    const std::size_t models = cfg.models.size();
    std::vector<StudyRow> block(models);
    for (std::size_t m = 0; m < models; ++m) {
      block[m].setting_id = s;
      block[m].model = cfg.models[m];
      block[m].beta_true = cfg.beta_true;
      block[m].eta = cfg.eta;
      block[m].obs = cfg.obs;
    }
    for (std::size_t r = 0; r < cfg.replications; ++r) {
      for (std::size_t m = 0; m < models; ++m, ++k) {
        if (results[k].metrics) {
          block[m].replications.push_back(*results[k].metrics);
          ++block[m].completed;
        } else {
          ++block[m].failed;
        }
      }
    }
    for (std::size_t m = 0; m < models; ++m) {
      StudyRow& row = block[m];
      if (row.completed > 0) {
        std::vector<double> acc, rmse;
        double elapsed = 0.0;
        for (const auto& rec : row.replications) {
          acc.push_back(rec.posterior_mean_accuracy);
          rmse.push_back(rec.posterior_rmse_T);
          elapsed += rec.elapsed_s;
        }
        Rng boot = Rng::derive(options.seed, {kBootStream, s, m});
        row.accuracy = bootstrap_ci(acc, boot);
        row.rmse_T = bootstrap_ci(rmse, boot);
        row.mean_elapsed_s = elapsed / static_cast<double>(row.completed);
      } else {
        row.accuracy.point = row.accuracy.lo = row.accuracy.hi = std::nan("");
        row.rmse_T.point = row.rmse_T.lo = row.rmse_T.hi = std::nan("");
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

void put_number(std::ostream& out, double x) {
  if (std::isnan(x)) out << "NA";
  else out << x;
}

}  // namespace

void write_study_csv(std::ostream& out, std::span<const StudyRow> rows, bool include_timing) {
  const auto old_precision = out.precision(10);
  out << "setting_id,model,beta_true,eta,lambda,mean_accuracy,acc_lo,acc_hi,mean_rmse_T,rmse_lo,"
         "rmse_hi,elapsed_s\n";
  for (const auto& r : rows) {
    out << r.setting_id << ',' << to_string(r.model) << ',' << r.beta_true << ',' << r.eta << ',';
    // Fixed-count schemes have no rate; the scheme string keeps m visible.
    if (r.obs.kind == ObsScheme::Kind::Poisson) out << r.obs.value;
    else out << r.obs.to_string();
    out << ',';
    for (double x : {r.accuracy.point, r.accuracy.lo, r.accuracy.hi, r.rmse_T.point, r.rmse_T.lo,
                     r.rmse_T.hi}) {
      put_number(out, x);
      out << ',';
    }
    if (include_timing && r.completed > 0) out << r.mean_elapsed_s;
    else out << "NA";
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace mdgm
