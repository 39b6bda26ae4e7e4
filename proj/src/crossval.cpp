#include "mdgm/experiments.hpp"

#include "parallel.hpp"

#include <ostream>

namespace mdgm {

namespace {
constexpr std::uint64_t kHoldoutStream = 0x686f6c64;
constexpr std::uint64_t kCvChainStream = 0x63766368;
}  // namespace

std::vector<Vertex> select_holdout(const Observations& y, std::size_t count, Rng& rng) {
  std::vector<Vertex> rated;
  for (Vertex i = 0; i < y.units(); ++i) {
    if (y.count(i) > 0) rated.push_back(i);
  }
  if (count == 0) throw std::invalid_argument("holdout count must be positive");
  if (count > rated.size()) {
    throw std::invalid_argument("holdout of " + std::to_string(count) + " units exceeds the " +
                                std::to_string(rated.size()) + " rated units");
  }
  // Partial Fisher-Yates.
  for (std::size_t k = 0; k < count; ++k) {
    std::swap(rated[k], rated[k + rng.index(rated.size() - k)]);
  }
  rated.resize(count);
  std::sort(rated.begin(), rated.end());
  return rated;
}

std::vector<CvRecord> cross_validate(const Observations& y, const Nug& nug,
                                     std::size_t holdout_count, std::size_t iterations,
                                     const McmcConfig& mcmc, std::span<const ModelKind> models,
                                     std::uint64_t seed, std::size_t threads) {
  if (models.empty()) throw std::invalid_argument("no models to cross-validate");
  if (y.units() != nug.size()) throw std::invalid_argument("observations and graph differ in size");
  mcmc.validate();
  std::vector<std::vector<Vertex>> holdouts(iterations);
  for (std::size_t it = 0; it < iterations; ++it) {
    Rng rng = Rng::derive(seed, {kHoldoutStream, it});
    holdouts[it] = select_holdout(y, holdout_count, rng);
  }
  std::vector<CvRecord> out(iterations * models.size());
  detail::parallel_for(out.size(), threads, [&](std::size_t k) {
    const std::size_t it = k / models.size();
    const std::size_t m = k % models.size();
    Observations train = y;
    for (Vertex i : holdouts[it]) train.clear_unit(i);
    McmcConfig cfg = mcmc;
    cfg.model = models[m];
    cfg.seed = Rng::derive(seed, {kCvChainStream, it, m}).next_seed();
    const PosteriorSamples samples = run_chain(train, nug, cfg);
    std::vector<double> predicted, observed;
    for (Vertex i : holdouts[it]) {
      predicted.push_back(predicted_rating_probability(samples, i));
      observed.push_back(y.unit_mean(i));
    }
    out[k] = CvRecord{it, models[m], holdout_mae(predicted, observed)};
  });
  return out;
}

void write_cv_csv(std::ostream& out, std::span<const CvRecord> records) {
  const auto old_precision = out.precision(10);
  out << "iteration,model,mae\n";
  for (const auto& r : records) out << r.iteration << ',' << to_string(r.model) << ',' << r.mae << '\n';
  out.precision(old_precision);
}

}  // namespace mdgm
