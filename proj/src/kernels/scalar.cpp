#include "mdgm/kernels.hpp"

namespace mdgm::kernels::scalar {

std::int64_t count_matching_edges(std::span<const std::uint8_t> z,
                                  std::span<const std::uint32_t> first,
                                  std::span<const std::uint32_t> second) {
  std::int64_t matches = 0;
  for (std::size_t k = 0; k < first.size(); ++k) matches += (z[first[k]] == z[second[k]]);
  return matches;
}

void neighbor_one_counts(const EllTable& ell, std::span<const std::uint8_t> z,
                         std::span<std::int32_t> out) {
  const std::size_t n = ell.rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::int32_t ones = 0;
    for (std::size_t c = 0; c < ell.width; ++c) {
      const std::uint32_t j = ell.index[c * n + i];
      if (j < n) ones += z[j];
    }
    out[i] = ones;
  }
}

SplitCounts split_counts(std::span<const std::uint8_t> z, std::span<const std::int32_t> ones,
                         std::span<const std::int32_t> zeros) {
  SplitCounts s;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i]) {
      s.ones_z1 += ones[i];
      s.zeros_z1 += zeros[i];
    } else {
      s.ones_z0 += ones[i];
      s.zeros_z0 += zeros[i];
    }
  }
  return s;
}

}  // namespace mdgm::kernels::scalar
