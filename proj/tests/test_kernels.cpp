#include "helpers.hpp"

#include "mdgm/kernels.hpp"
#include "mdgm/model.hpp"
#include "mdgm/rng.hpp"

#include <doctest.h>

using namespace mdgm;
using namespace testing;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng, double p = 0.5) {
  std::vector<std::uint8_t> z(n);
  for (auto& b : z) b = rng.bernoulli(p);
  return z;
}

Nug random_graph(std::size_t n, double density, Rng& rng) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (rng.bernoulli(density)) e.push_back({a, b, 1});
  return Nug::from_edges(n, std::move(e));
}

}  // namespace

TEST_CASE("dispatch") {
  CHECK(kernels::isa_available(kernels::Isa::Scalar));
  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  kernels::reset_isa();
  if (kernels::isa_available(kernels::Isa::Avx2)) {
    CHECK(kernels::active_isa() == kernels::Isa::Avx2);
  } else {
    CHECK_THROWS(kernels::force_isa(kernels::Isa::Avx2));
  }
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!kernels::isa_available(kernels::Isa::Avx2)) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  Rng rng(2024);
  std::vector<Nug> graphs{lattice(1, 1), path(2), lattice(3, 3), lattice(7, 5, true),
                          lattice(16, 16, true), lattice(33, 17, true)};
  for (std::size_t n : {1u, 5u, 8u, 9u, 31u, 64u, 100u}) graphs.push_back(random_graph(n, 0.3, rng));

  for (const Nug& g : graphs) {
    for (double p : {0.0, 0.5, 1.0, 0.1}) {
      const auto z = random_bits(g.size(), rng, p);
      CHECK(kernels::avx2::count_matching_edges(z, g.edge_first(), g.edge_second()) ==
            kernels::scalar::count_matching_edges(z, g.edge_first(), g.edge_second()));
      std::vector<std::int32_t> a(g.size()), b(g.size());
      kernels::avx2::neighbor_one_counts(g.ell(), z, a);
      kernels::scalar::neighbor_one_counts(g.ell(), z, b);
      CHECK(a == b);

      std::vector<std::int32_t> ones(g.size()), zeros(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        ones[i] = static_cast<std::int32_t>(rng.index(50));
        zeros[i] = static_cast<std::int32_t>(rng.index(50));
      }
      CHECK(kernels::avx2::split_counts(z, ones, zeros) ==
            kernels::scalar::split_counts(z, ones, zeros));
    }
  }
}

TEST_CASE("split counts do not overflow lane accumulators") {
  if (!kernels::isa_available(kernels::Isa::Avx2)) return;
  const std::size_t n = 1000;
  std::vector<std::uint8_t> z(n, 1);
  std::vector<std::int32_t> big(n, 2'000'000'000), zero(n, 0);
  const auto r = kernels::avx2::split_counts(z, big, zero);
  CHECK(r.ones_z1 == std::int64_t{2'000'000'000} * 1000);
  CHECK(r == kernels::scalar::split_counts(z, big, zero));
}

TEST_CASE("model results do not depend on the kernel") {
  Rng rng(5);
  const Nug g = lattice(12, 9, true);
  const LatentField z(random_bits(g.size(), rng));
  Observations y(g.size());
  for (Vertex i = 0; i < g.size(); ++i) y.add(i, rng.bernoulli(0.4));
  const NoiseParams eta(0.1, 0.7);

  kernels::force_isa(kernels::Isa::Scalar);
  const auto t = suff_stat_T(z, g);
  const double pl = pseudo_likelihood_log(z, g, 0.35);
  const double ll = log_likelihood(y, z, eta);
  kernels::reset_isa();
  CHECK(suff_stat_T(z, g) == t);
  CHECK(pseudo_likelihood_log(z, g, 0.35) == pl);
  CHECK(log_likelihood(y, z, eta) == ll);
}
