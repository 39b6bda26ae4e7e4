#include "helpers.hpp"

#include "mdgm/experiments.hpp"
#include "mdgm/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace mdgm;
using namespace testing;

namespace {

double log_sum_exp(const std::vector<double>& xs) {
  double m = -INFINITY;
  for (double x : xs) m = std::max(m, x);
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

std::vector<Dag> sample_dags(const Nug& g, Rng& rng) {
  return {uniform_spanning_tree(g, rng), rooted_dag(g, static_cast<Vertex>(rng.index(g.size()))),
          acyclic_orientation(g, Permutation::random(g.size(), rng))};
}

}  // namespace

TEST_CASE("observations bookkeeping") {
  Observations y = Observations::from_ragged({{1, 0, 1}, {}, {0}});
  CHECK(y.units() == 3);
  CHECK(y.ones(0) == 2);
  CHECK(y.zeros(0) == 1);
  CHECK(y.total() == 4);
  CHECK(y.total_ones() == 2);
  CHECK(y.has_replicated_unit());
  y.clear_unit(0);
  CHECK(y.count(0) == 0);
  CHECK_FALSE(y.has_replicated_unit());
}

TEST_CASE("noise parameters keep eta0 < eta1") {
  CHECK_NOTHROW(NoiseParams(0.2, 0.8));
  CHECK_THROWS_AS(NoiseParams(0.8, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParams(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParams(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParams(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("log likelihood") {
  const NoiseParams eta(0.2, 0.8);
  CHECK(log_likelihood(Observations(4), LatentField(4), eta) == 0.0);
  CHECK(log_likelihood(Observations::from_ragged({{1}}), LatentField::from_bits("1"), eta) ==
        doctest::Approx(std::log(0.8)));
  CHECK(log_likelihood(Observations::from_ragged({{1, 0}}), LatentField::from_bits("0"), eta) ==
        doctest::Approx(std::log(0.16)));
}

TEST_CASE("parent conditional") {
  const std::vector<std::uint8_t> none;
  CHECK(parent_conditional(1, none, 0.7) == doctest::Approx(0.5));
  const std::vector<std::uint8_t> one{1};
  CHECK(parent_conditional(0, one, 0.0) == doctest::Approx(0.5));
  const std::vector<std::uint8_t> two{1, 1};
  CHECK(parent_conditional(1, two, 0.3) == doctest::Approx(0.6456563062));
  CHECK(parent_conditional(1, two, 0.3) + parent_conditional(0, two, 0.3) == doctest::Approx(1.0));
  const std::vector<std::uint8_t> mixed{1, 0, 1};
  CHECK(std::exp(log_parent_conditional(1, 1, 2, 0.4)) ==
        doctest::Approx(parent_conditional(1, mixed, 0.4)));
}

TEST_CASE("DGM prior") {
  CHECK(log_dgm_prior(LatentField::from_bits("0110"), Dag(4, {}), 0.9) ==
        doctest::Approx(4 * std::log(0.5)));
}

TEST_CASE("DGM prior normalizes for every class") {
  Rng rng(4);
  for (const Nug& g : {lattice(2, 3, true), lattice(3, 3), cycle(5), lattice(2, 5, true)}) {
    for (double beta : {0.0, 0.3, 1.0}) {
      for (const Dag& d : sample_dags(g, rng)) {
        std::vector<double> lp;
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << g.size()); ++c) {
          lp.push_back(log_dgm_prior(LatentField::from_code(c, g.size()), d, beta));
        }
        CHECK(std::abs(std::exp(log_sum_exp(lp)) - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("spanning tree prior does not depend on the root") {
  Rng rng(9);
  const Nug g = lattice(3, 3, true);
  const Dag t = uniform_spanning_tree(g, rng);
  const Nug sk = skeleton(t);
  const LatentField z = LatentField::from_bits("011010110");
  const double ref = log_dgm_prior(z, t, 0.7);
  for (Vertex r = 0; r < 9; ++r) {
    CHECK(std::abs(log_dgm_prior(z, orient_tree(9, sk.edges(), r), 0.7) - ref) < 1e-12);
  }
}

TEST_CASE("DGM full conditionals") {
  const Dag chain(3, {{1, 0}, {2, 1}});
  LatentField z = LatentField::from_bits("101");
  CHECK(dgm_full_conditional_prior(1, z, Dag(3, {}), 0.4) == doctest::Approx(0.5));
  CHECK(dgm_full_conditional_prior(1, z, chain, 1.0) ==
        doctest::Approx(std::exp(2.0) / (std::exp(2.0) + 1.0)));

  const NoiseParams eta(0.2, 0.8);
  Observations empty(3);
  CHECK(dgm_full_conditional_posterior(1, z, chain, 1.0, eta, empty) ==
        doctest::Approx(dgm_full_conditional_prior(1, z, chain, 1.0)));
  const Observations y = Observations::from_ragged({{}, {1}, {}});
  CHECK(dgm_full_conditional_posterior(1, z, chain, 0.0, eta, y) == doctest::Approx(0.8));
}

TEST_CASE("full conditionals equal joint ratios") {
  Rng rng(77);
  const NoiseParams eta(0.3, 0.9);
  for (const Nug& g : {lattice(2, 3, true), lattice(2, 4), cycle(6)}) {
    const std::size_t n = g.size();
    Observations y(n);
    for (Vertex i = 0; i < n; ++i)
      for (std::size_t k = rng.index(3); k > 0; --k) y.add(i, rng.bernoulli(0.5));
    const double beta = 0.8;
    for (const Dag& d : sample_dags(g, rng)) {
      for (int trial = 0; trial < 10; ++trial) {
        LatentField z(n);
        for (Vertex i = 0; i < n; ++i) z.set(i, rng.bernoulli(0.5));
        for (Vertex i = 0; i < n; ++i) {
          LatentField z1 = z, z0 = z;
          z1.set(i, 1);
          z0.set(i, 0);
          const double a = log_dgm_prior(z1, d, beta), b = log_dgm_prior(z0, d, beta);
          CHECK(dgm_full_conditional_prior(i, z, d, beta) ==
                doctest::Approx(1.0 / (1.0 + std::exp(b - a))));
          const double pa = a + log_likelihood(y, z1, eta), pb = b + log_likelihood(y, z0, eta);
          CHECK(dgm_full_conditional_posterior(i, z, d, beta, eta, y) ==
                doctest::Approx(1.0 / (1.0 + std::exp(pb - pa))));
          const double ma = mrf_log_unnorm(z1, g, beta) + log_likelihood(y, z1, eta);
          const double mb = mrf_log_unnorm(z0, g, beta) + log_likelihood(y, z0, eta);
          CHECK(mrf_full_conditional_posterior(i, z, g, beta, eta, y) ==
                doctest::Approx(1.0 / (1.0 + std::exp(mb - ma))));
        }
      }
    }
  }
}

TEST_CASE("sufficient statistic") {
  CHECK(suff_stat_T(LatentField(256), lattice(16, 16, true)) == 930);
  CHECK(suff_stat_T(LatentField::from_bits("010101010"), lattice(3, 3)) == 0);
  CHECK(suff_stat_T(LatentField(9), lattice(3, 3, true)) == 20);
  CHECK(mrf_log_unnorm(LatentField(9), lattice(3, 3, true), 0.3) == doctest::Approx(6.0));
  CHECK(mrf_log_unnorm(LatentField::from_bits("011000111"), lattice(3, 3), 0.0) == 0.0);
  const LatentField z = LatentField::from_bits("011000111");
  CHECK(suff_stat_T(z, lattice(3, 3, true)) == suff_stat_T(z.flipped(), lattice(3, 3, true)));
}

TEST_CASE("Ising full conditional") {
  CHECK(mrf_full_conditional(2, LatentField::from_bits("110"), Nug::from_edges(3, {{0, 1, 1}}), 1.0) ==
        doctest::Approx(0.5));
  CHECK(mrf_full_conditional(4, LatentField::from_bits("111101111"), lattice(3, 3, true), 0.3) ==
        doctest::Approx(std::exp(2.4) / (std::exp(2.4) + 1.0)));
}

TEST_CASE("pseudo-likelihood") {
  const Nug g = lattice(2, 2);
  CHECK(pseudo_likelihood_log(LatentField::from_bits("0110"), g, 0.0) ==
        doctest::Approx(4 * std::log(0.5)));
  CHECK(pseudo_likelihood_total(g, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(pseudo_likelihood_total(g, 0.3) - 1.0) > 1e-3);
  // product of full conditionals
  const LatentField z = LatentField::from_bits("0111");
  double s = 0.0;
  for (Vertex i = 0; i < 4; ++i) {
    const double p1 = mrf_full_conditional(i, z, g, 0.7);
    s += std::log(z[i] ? p1 : 1.0 - p1);
  }
  CHECK(pseudo_likelihood_log(z, g, 0.7) == doctest::Approx(s));
  // negative beta takes the same path
  CHECK(std::isfinite(pseudo_likelihood_log(z, g, -0.5)));
}

TEST_CASE("eta full conditional parameters") {
  PriorSpec priors;
  const auto none = eta_full_conditional_params(Observations(3), LatentField(3), priors);
  CHECK(none.eta0 == BetaShape{1, 1});
  CHECK(none.eta1 == BetaShape{1, 1});

  const Observations y = Observations::from_ragged({{1, 1, 1, 0}, {1, 1, 0}, {1, 1, 0}});
  const auto p = eta_full_conditional_params(y, LatentField(3, 1), priors);
  CHECK(p.eta1 == BetaShape{8, 4});
  CHECK(p.eta0 == BetaShape{1, 1});
}

TEST_CASE("prior on beta") {
  PriorSpec priors;
  CHECK(log_beta_prior(0.5, priors) == doctest::Approx(0.0));
  CHECK(std::isinf(log_beta_prior(-0.01, priors)));
  CHECK(std::isinf(log_beta_prior(1.01, priors)));
  priors.beta_max = 0;
  CHECK_THROWS(priors.validate());
}
