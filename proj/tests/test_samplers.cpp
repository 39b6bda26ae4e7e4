#include "helpers.hpp"
#include "stats.hpp"

#include "mdgm/experiments.hpp"
#include "mdgm/samplers.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

using namespace mdgm;
using namespace testing;

TEST_CASE("model names") {
  for (auto m : {ModelKind::MdgmST, ModelKind::MdgmRooted, ModelKind::MdgmAO, ModelKind::Amrf,
                 ModelKind::ExactMrf}) {
    CHECK(model_from_string(to_string(m)) == m);
  }
  CHECK(model_from_string("mrf") == ModelKind::ExactMrf);
  CHECK_THROWS_AS(model_from_string("potts"), std::invalid_argument);
  CHECK(dag_class_of(ModelKind::MdgmAO) == DagClass::AcyclicOrientation);
  CHECK_THROWS(dag_class_of(ModelKind::Amrf));
}

TEST_CASE("z sweep with flat prior follows the likelihood") {
  const Nug g = lattice(2, 2);
  const Observations y = Observations::from_ragged({{1, 1}, {}, {}, {}});
  for (ModelKind model : {ModelKind::MdgmST, ModelKind::Amrf, ModelKind::ExactMrf}) {
    Rng rng(3);
    ChainState s;
    s.z = LatentField(4);
    s.beta = 0.0;
    s.eta = NoiseParams(0.2, 0.8);
    if (is_mdgm(model)) s.dag = uniform_spanning_tree(g, rng);
    int ones0 = 0, ones1 = 0;
    const int sweeps = 50000;
    for (int k = 0; k < sweeps; ++k) {
      gibbs_update_z(s, g, model, y, rng);
      ones0 += s.z[0];
      ones1 += s.z[1];
    }
    CHECK(ones0 / double(sweeps) == doctest::Approx(0.64 / 0.68).epsilon(0.01));
    CHECK(ones1 / double(sweeps) == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("z sweep marginals match the oracle at fixed beta and eta") {
  const Nug g = lattice(2, 2);
  const Observations y = Observations::from_ragged({{1, 1}, {0}, {1, 0, 1}, {}});
  const NoiseParams eta(0.25, 0.8);
  const double beta = 0.9;
  for (ModelKind model : {ModelKind::MdgmST, ModelKind::MdgmRooted, ModelKind::MdgmAO,
                          ModelKind::Amrf, ModelKind::ExactMrf}) {
    McmcConfig cfg;
    cfg.model = model;
    cfg.total_iterations = 200000;
    cfg.burn_in = 1000;
    cfg.seed = 17;
    cfg.update_beta = false;
    cfg.update_eta = false;
    cfg.init = FixedInit{beta, eta.eta0(), eta.eta1(), std::nullopt};
    const auto samples = run_chain(y, g, cfg);
    const auto exact = exact_posterior_oracle(y, g, beta, eta, model);
    for (Vertex i = 0; i < 4; ++i) {
      double m = 0.0;
      for (const auto& r : samples.records) m += r.z[i];
      m /= static_cast<double>(samples.records.size());
      CHECK_MESSAGE(std::abs(m - exact.marginals[i]) < 0.01, to_string(model), " unit ", i);
    }
  }
}

TEST_CASE("DAG independence proposals") {
  const Nug g = cycle(4);
  Rng rng(1);
  ChainState s;
  s.z = LatentField::from_bits("0110");
  s.beta = 0.0;
  s.dag = rooted_dag(g, 0);
  for (int k = 0; k < 200; ++k) CHECK(mh_update_dag(s, g, DagClass::Rooted, rng));
  for (int k = 0; k < 200; ++k) CHECK(mh_update_dag(s, g, DagClass::AcyclicOrientation, rng));
  CHECK_THROWS(mh_update_dag(s, g, DagClass::SpanningTree, rng));

  // stationary distribution over the four rooted DAGs with z fixed
  s.beta = 1.2;
  s.dag = rooted_dag(g, 0);
  std::vector<double> exact(4);
  double total = 0.0;
  for (Vertex r = 0; r < 4; ++r) {
    exact[r] = std::exp(log_dgm_prior(s.z, rooted_dag(g, r), s.beta));
    total += exact[r];
  }
  for (auto& e : exact) e /= total;
  std::vector<double> freq(4, 0.0);
  const int steps = 100000;
  for (int k = 0; k < steps; ++k) {
    mh_update_dag(s, g, DagClass::Rooted, rng);
    freq[*s.dag->root()] += 1.0 / steps;
  }
  CHECK(total_variation(freq, exact) < 0.02);
}

TEST_CASE("beta random walk: trivial ratios") {
  const Nug g = lattice(2, 2);
  ChainState s;
  s.z = LatentField::from_bits("0111");
  s.beta = 0.4;
  Rng rng(1);
  s.dag = uniform_spanning_tree(g, rng);
  PriorSpec priors;
  CHECK(beta_log_ratio(s, g, ModelKind::MdgmST, priors, 0.4) == 0.0);
  CHECK(beta_log_ratio(s, g, ModelKind::Amrf, priors, 0.4) == 0.0);
  CHECK(std::isinf(beta_log_ratio(s, g, ModelKind::Amrf, priors, -0.1)));
  CHECK(std::isinf(beta_log_ratio(s, g, ModelKind::MdgmST, priors, 1.5)));
  CHECK_THROWS(beta_log_ratio(s, g, ModelKind::ExactMrf, priors, 0.5));
}

TEST_CASE("beta random walk targets its conditional") {
  const Nug g = lattice(2, 2);
  PriorSpec priors;
  const LatentField z = LatentField::from_bits("0111");
  Rng rng(5);
  const Dag tree = uniform_spanning_tree(g, rng);
  for (ModelKind model : {ModelKind::MdgmST, ModelKind::Amrf}) {
    ChainState s;
    s.z = z;
    s.beta = 0.5;
    s.dag = tree;
    std::vector<double> draws;
    for (int k = 0; k < 300000; ++k) {
      mh_update_beta(s, g, model, priors, 0.5, rng);
      draws.push_back(s.beta);
    }
    const GridCdf cdf(0.0, 1.0, 4001, [&](double b) {
      return model == ModelKind::Amrf ? pseudo_likelihood_log(z, g, b) : log_dgm_prior(z, tree, b);
    });
    CHECK_MESSAGE(ks_distance(draws, cdf) < 0.02, to_string(model));
  }
}

TEST_CASE("exchange ratio") {
  const Nug g = lattice(2, 3);
  const LatentField z = LatentField::from_bits("001011");
  const LatentField zs = LatentField::from_bits("111000");
  PriorSpec priors;
  const double t = static_cast<double>(suff_stat_T(z, g));
  const double ts = static_cast<double>(suff_stat_T(zs, g));
  CHECK(exchange_log_ratio(z, zs, g, 0.3, 0.45, priors) == doctest::Approx(0.15 * (t - ts)));
  CHECK(exchange_log_ratio(z, zs, g, 0.3, 0.3, priors) == 0.0);
  CHECK(std::isinf(exchange_log_ratio(z, zs, g, 0.3, 1.2, priors)));
  priors.beta_max = 2.0;
  // h-ratio form
  const double direct = mrf_log_unnorm(z, g, 0.7) + mrf_log_unnorm(zs, g, 0.3) -
                        mrf_log_unnorm(z, g, 0.3) - mrf_log_unnorm(zs, g, 0.7);
  CHECK(exchange_log_ratio(z, zs, g, 0.3, 0.7, priors) == doctest::Approx(direct));
}

TEST_CASE("exchange algorithm targets the exact beta conditional") {
  const Nug g = lattice(2, 3);
  PriorSpec priors;
  const LatentField z = LatentField::from_bits("001011");
  ChainState s;
  s.z = z;
  s.beta = 0.5;
  Rng rng(6);
  std::vector<double> draws;
  for (int k = 0; k < 200000; ++k) {
    exchange_update_beta_mrf(s, g, priors, 0.5, std::size_t{1} << 20, rng);
    draws.push_back(s.beta);
  }
  const double t = static_cast<double>(suff_stat_T(z, g));
  const GridCdf cdf(0.0, 1.0, 2001, [&](double b) { return b * t - mrf_log_partition(g, b); });
  CHECK(ks_distance(draws, cdf) < 0.02);
}

TEST_CASE("CFTP at beta = 0 coalesces in one sweep") {
  const Nug g = lattice(4, 4, true);
  Rng rng(1);
  int sweeps = 0;
  const LatentField z = cftp_ising(g, 0.0, rng, 1 << 20, [&](const auto&, const auto&) { ++sweeps; });
  CHECK(sweeps == 1);
  CHECK(z.size() == 16);
}

TEST_CASE("CFTP sandwich chains stay ordered") {
  const Nug g = lattice(5, 5, true);
  Rng rng(2);
  bool ordered = true;
  cftp_ising(g, 0.3, rng, 1 << 22, [&](const LatentField& lo, const LatentField& hi) {
    for (std::size_t i = 0; i < lo.size(); ++i) ordered = ordered && lo[i] <= hi[i];
  });
  CHECK(ordered);
}

TEST_CASE("CFTP is exact on a 2x3 lattice") {
  const Nug g = lattice(2, 3);
  const auto exact = exact_ising_distribution(g, 0.3);
  Rng rng(7);
  std::vector<double> freq(exact.size(), 0.0);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) freq[cftp_ising(g, 0.3, rng).code()] += 1.0 / draws;
  CHECK(total_variation(freq, exact) < 0.02);
}

TEST_CASE("CFTP mean T increases with beta") {
  const Nug g = lattice(8, 8);
  Rng rng(8);
  double prev = -1.0;
  for (double beta : {0.1, 0.2, 0.3}) {
    double mean = 0.0;
    for (int k = 0; k < 400; ++k) mean += static_cast<double>(suff_stat_T(cftp_ising(g, beta, rng), g));
    mean /= 400;
    CHECK(mean > prev);
    prev = mean;
  }
}

TEST_CASE("CFTP errors") {
  const Nug g = lattice(16, 16, true);
  Rng rng(1);
  CHECK_THROWS_AS(cftp_ising(g, 1.0, rng, 1 << 16), CftpError);
  CHECK_THROWS_AS(cftp_ising(g, -0.1, rng), std::invalid_argument);
}

TEST_CASE("cluster CFTP sandwich stays nested and beta = 0 takes one sweep") {
  const Nug g = lattice(5, 5, true);
  Rng rng(3);
  bool nested = true;
  cftp_ising_cluster(g, 0.8, rng, 1 << 22, [&](const auto& lo, const auto& hi) {
    for (std::size_t e = 0; e < lo.size(); ++e) nested = nested && lo[e] <= hi[e];
  });
  CHECK(nested);
  int sweeps = 0;
  cftp_ising_cluster(g, 0.0, rng, 1 << 20, [&](const auto&, const auto&) { ++sweeps; });
  CHECK(sweeps == 1);
}

TEST_CASE("cluster CFTP is exact below and above the critical beta") {
  const Nug small = lattice(2, 3);
  const Nug dense = lattice(3, 3, true);
  Rng rng(9);
  const int draws = 100000;
  for (auto [g, beta] : {std::pair{&small, 0.3}, std::pair{&dense, 1.2}}) {
    const auto exact = exact_ising_distribution(*g, beta);
    std::vector<double> freq(exact.size(), 0.0);
    for (int k = 0; k < draws; ++k) freq[cftp_ising_cluster(*g, beta, rng).code()] += 1.0 / draws;
    CHECK(total_variation(freq, exact) < 0.02);
  }
}

TEST_CASE("cluster CFTP coalesces where heat-bath stalls") {
  const Nug g = lattice(8, 8, true);
  Rng rng(4);
  CHECK_THROWS_AS(cftp_ising(g, 1.0, rng, 1 << 20), CftpError);
  for (int k = 0; k < 20; ++k) CHECK_NOTHROW(cftp_ising_cluster(g, 1.0, rng, 1 << 20));
  CHECK_THROWS_AS(cftp_ising_cluster(g, -0.1, rng), std::invalid_argument);
  CHECK(cftp_method_from_string(to_string(CftpMethod::Cluster)) == CftpMethod::Cluster);
  CHECK(cftp_method_from_string("heat-bath") == CftpMethod::HeatBath);
  CHECK_THROWS_AS(cftp_method_from_string("swendsen"), std::invalid_argument);
}

TEST_CASE("exchange algorithm with cluster draws targets the exact beta conditional") {
  const Nug g = lattice(2, 3);
  const LatentField z = LatentField::from_bits("001011");
  PriorSpec priors;
  ChainState state;
  state.z = z;
  state.beta = 0.5;
  Rng rng(12);
  std::vector<double> betas;
  for (int k = 0; k < 200000; ++k) {
    exchange_update_beta_mrf(state, g, priors, 0.5, 1 << 20, rng, CftpMethod::Cluster);
    betas.push_back(state.beta);
  }
  const double t = static_cast<double>(suff_stat_T(z, g));
  const GridCdf cdf(0.0, 1.0, 2001, [&](double b) { return b * t - mrf_log_partition(g, b); });
  CHECK(ks_distance(betas, cdf) < 0.02);
}

TEST_CASE("truncated Beta draws") {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const auto x = sample_truncated_beta({3.0, 2.0}, 0.4, 0.45, rng);
    REQUIRE(x);
    CHECK(*x > 0.4);
    CHECK(*x < 0.45);
  }
  // mass far in the tail goes through the rejection path or the upper-tail inverse
  const auto far = sample_truncated_beta({2000.0, 2.0}, 0.0, 0.5, rng);
  if (far) CHECK(*far < 0.5);
  CHECK_FALSE(sample_truncated_beta({1.0, 1.0}, 0.6, 0.6, rng));
  // mean of Beta(2,5) restricted to (0,1) is 2/7
  double m = 0.0;
  for (int k = 0; k < 50000; ++k) m += *sample_truncated_beta({2.0, 5.0}, 0.0, 1.0, rng);
  CHECK(m / 50000 == doctest::Approx(2.0 / 7.0).epsilon(0.01));
}

TEST_CASE("eta updates without data are uniform on the ordered triangle") {
  ChainState s;
  s.z = LatentField(3);
  s.eta = NoiseParams(0.25, 0.75);
  PriorSpec priors;
  Observations y(3);
  Rng rng(4);
  int above = 0;
  const int steps = 100000;
  for (int k = 0; k < steps; ++k) {
    CHECK(gibbs_update_eta(s, y, priors, rng));
    REQUIRE(s.eta.eta0() < s.eta.eta1());
    above += s.eta.eta1() > 0.5;
  }
  CHECK(std::abs(above / double(steps) - 0.75) < 0.01);
}

TEST_CASE("eta concentrates under abundant data") {
  const std::size_t units = 100;
  Observations y(units);
  LatentField z(units);
  for (Vertex i = 0; i < units; ++i) {
    z.set(i, i % 2);
    for (int k = 0; k < 100; ++k) {
      // z=1 units: 70% ones; z=0 units: 10% ones
      y.add(i, i % 2 ? (k % 10 < 7) : (k % 10 < 1));
    }
  }
  ChainState s;
  s.z = z;
  s.eta = NoiseParams(0.25, 0.75);
  Rng rng(3);
  for (int k = 0; k < 100; ++k) gibbs_update_eta(s, y, PriorSpec{}, rng);
  CHECK(std::abs(s.eta.eta1() - 0.7) < 0.02);
  CHECK(std::abs(s.eta.eta0() - 0.1) < 0.02);
}

TEST_CASE("chain bookkeeping and determinism") {
  const Nug g = lattice(3, 3, true);
  const Observations y = Observations::from_ragged({{1, 1}, {0}, {1}, {}, {1, 0}, {0, 0}, {1}, {}, {1}});
  McmcConfig cfg;
  cfg.total_iterations = 11;
  cfg.burn_in = 10;
  for (ModelKind m : {ModelKind::MdgmST, ModelKind::MdgmRooted, ModelKind::MdgmAO, ModelKind::Amrf,
                      ModelKind::ExactMrf}) {
    cfg.model = m;
    const auto s = run_chain(y, g, cfg);
    CHECK(s.records.size() == 1);
    CHECK(s.records[0].iter == 10);
    CHECK(s.records[0].tree_edges.size() == (m == ModelKind::MdgmST ? 8u : 0u));
  }
  cfg.total_iterations = 300;
  cfg.burn_in = 100;
  cfg.seed = 99;
  for (ModelKind m : {ModelKind::MdgmAO, ModelKind::ExactMrf}) {
    cfg.model = m;
    const auto a = run_chain(y, g, cfg);
    const auto b = run_chain(y, g, cfg);
    CHECK(a == b);
    CHECK(a.records.size() == 200);
    cfg.seed = 100;
    CHECK_FALSE(run_chain(y, g, cfg) == a);
    cfg.seed = 99;
  }
}

TEST_CASE("chain input validation") {
  const Nug g = lattice(2, 2);
  McmcConfig cfg;
  cfg.total_iterations = 10;
  cfg.burn_in = 10;
  CHECK_THROWS_AS(run_chain(Observations(4), g, cfg), std::invalid_argument);
  cfg.burn_in = 5;
  CHECK_THROWS_AS(run_chain(Observations(3), g, cfg), std::invalid_argument);
  CHECK_THROWS_AS(run_chain(Observations(2), Nug::from_edges(2, {}), cfg), GraphError);
}

TEST_CASE("data-driven start") {
  const Nug g = path(4);
  const Observations y = Observations::from_ragged({{1, 1}, {0}, {}, {1, 0, 0}});
  McmcConfig cfg;
  Rng rng(1);
  const ChainState s = initial_state(y, g, cfg, rng);
  CHECK(s.z == LatentField::from_bits("1000"));
  CHECK(s.beta == doctest::Approx(0.5));
  CHECK(s.eta == NoiseParams(0.25, 0.75));
  CHECK(s.dag);
}

TEST_CASE("samples JSON lines round trip") {
  const Nug g = lattice(2, 3);
  const Observations y = Observations::from_ragged({{1}, {1, 1}, {0}, {}, {0, 0}, {1}});
  McmcConfig cfg;
  cfg.total_iterations = 30;
  cfg.burn_in = 20;
  cfg.model = ModelKind::MdgmST;
  const auto s = run_chain(y, g, cfg);
  std::stringstream io;
  write_samples_jsonl(io, s);
  const std::string text = io.str();
  CHECK(text.find("\"tree_edges\"") != std::string::npos);
  CHECK(text.find("\"summary\"") != std::string::npos);
  const auto back = read_samples_jsonl(io);
  CHECK(back.records.size() == s.records.size());
  for (std::size_t k = 0; k < s.records.size(); ++k) {
    CHECK(back.records[k].z == s.records[k].z);
    CHECK(back.records[k].T == s.records[k].T);
    CHECK(back.records[k].beta == s.records[k].beta);
    CHECK(back.records[k].tree_edges == s.records[k].tree_edges);
  }
  CHECK(back.acceptance == s.acceptance);
}
