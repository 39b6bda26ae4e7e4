#include "mdgm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdgm {

double posterior_mean_accuracy(const PosteriorSamples& samples, const LatentField& z_true) {
  if (samples.records.empty()) throw std::invalid_argument("no posterior draws");
  const std::size_t n = z_true.size();
  double total = 0.0;
  for (const auto& r : samples.records) {
    if (r.z.size() != n) throw std::invalid_argument("draw and truth differ in size");
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) agree += (r.z[i] == z_true[i]);
    total += static_cast<double>(agree) / static_cast<double>(n);
  }
  return total / static_cast<double>(samples.records.size());
}

double posterior_rmse_T(const PosteriorSamples& samples, const LatentField& z_true,
                        const Nug& nug) {
  if (samples.records.empty()) throw std::invalid_argument("no posterior draws");
  const double t_true = static_cast<double>(suff_stat_T(z_true, nug));
  double sq = 0.0;
  for (const auto& r : samples.records) {
    const double d = static_cast<double>(r.T) - t_true;
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(samples.records.size()));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BootstrapCI bootstrap_ci(std::span<const double> stats, Rng& rng, std::size_t resamples,
                         double level) {
  if (stats.empty()) throw std::invalid_argument("bootstrap of an empty sample");
  BootstrapCI ci;
  ci.level = level;
  ci.resamples = resamples;
  const std::size_t r = stats.size();
  ci.point = std::accumulate(stats.begin(), stats.end(), 0.0) / static_cast<double>(r);
  if (r < 2) {
    ci.lo = ci.hi = ci.point;
    return ci;
  }
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double s = 0.0;
    for (std::size_t k = 0; k < r; ++k) s += stats[rng.index(r)];
    m = s / static_cast<double>(r);
  }
  const double tail = (1.0 - level) / 2.0;
  ci.lo = std::min(quantile(means, tail), ci.point);
  ci.hi = std::max(quantile(means, 1.0 - tail), ci.point);
  return ci;
}

double predicted_rating_probability(const PosteriorSamples& samples, Vertex unit) {
  if (samples.records.empty()) throw std::invalid_argument("no posterior draws");
  double s = 0.0;
  for (const auto& r : samples.records) s += r.z[unit] ? r.eta1 : r.eta0;
  return s / static_cast<double>(samples.records.size());
}

double holdout_mae(std::span<const double> predicted, std::span<const double> observed) {
  if (predicted.size() != observed.size() || predicted.empty()) {
    throw std::invalid_argument("holdout_mae: need equally sized, non-empty inputs");
  }
  double s = 0.0;
  for (std::size_t k = 0; k < predicted.size(); ++k) s += std::abs(predicted[k] - observed[k]);
  return s / static_cast<double>(predicted.size());
}

}  // namespace mdgm
