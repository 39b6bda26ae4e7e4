#include "mdgm/samplers.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <random>

namespace mdgm {

namespace {

constexpr double kMinMass = 1e-12;
constexpr int kRejectionTries = 10000;

double beta_variate(const BetaShape& s, Rng& rng) {
  const double x = std::gamma_distribution<double>(s.a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(s.b, 1.0)(rng);
  return x / (x + y);
}

}  // namespace

std::optional<double> sample_truncated_beta(const BetaShape& shape, double lo, double hi,
                                            Rng& rng) {
  using boost::math::ibeta;
  using boost::math::ibeta_inv;
  using boost::math::ibetac;
  using boost::math::ibetac_inv;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (!(lo < hi)) return std::nullopt;

  try {
    const double cdf_lo = ibeta(shape.a, shape.b, lo);
    const bool lower_tail = cdf_lo < 0.5;
    double mass;
    if (lower_tail) {
      mass = ibeta(shape.a, shape.b, hi) - cdf_lo;
    } else {
      mass = ibetac(shape.a, shape.b, lo) - ibetac(shape.a, shape.b, hi);
    }
    if (mass > kMinMass) {
      const double u = rng.uniform_open();
      double x;
      if (lower_tail) {
        x = ibeta_inv(shape.a, shape.b, cdf_lo + u * mass);
      } else {
        // Work in the upper tail where the CDF near 1 has no resolution.
        x = ibetac_inv(shape.a, shape.b, ibetac(shape.a, shape.b, hi) + u * mass);
      }
      if (x > lo && x < hi) return x;
    }
  } catch (const std::exception&) {
    // fall through to rejection
  }

  for (int t = 0; t < kRejectionTries; ++t) {
    const double x = beta_variate(shape, rng);
    if (x > lo && x < hi) return x;
  }
  return std::nullopt;
}

bool gibbs_update_eta(ChainState& state, const Observations& y, const PriorSpec& priors,
                      Rng& rng) {
  const EtaConditionals c = eta_full_conditional_params(y, state.z, priors);
  double eta1 = state.eta.eta1();
  double eta0 = state.eta.eta0();
  bool ok = true;
  if (auto draw = sample_truncated_beta(c.eta1, eta0, 1.0, rng)) {
    eta1 = *draw;
  } else {
    ok = false;
  }
  if (auto draw = sample_truncated_beta(c.eta0, 0.0, eta1, rng)) {
    eta0 = *draw;
  } else {
    ok = false;
  }
  state.eta = NoiseParams(eta0, eta1);
  return ok;
}

}  // namespace mdgm
