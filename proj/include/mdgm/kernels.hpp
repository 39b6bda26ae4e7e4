#pragma once

// Data-parallel inner loops used by the model and samplers. Each kernel has a
// scalar reference implementation and an AVX2 variant; the variant is chosen
// once at runtime from CPUID and both must return identical results.

#include "mdgm/graph.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace mdgm::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Pins the dispatch target (tests, benchmarks). Throws if the CPU lacks it.
void force_isa(Isa isa);
/// Returns to CPUID-based selection.
void reset_isa();

struct SplitCounts {
  std::int64_t ones_z1 = 0;
  std::int64_t zeros_z1 = 0;
  std::int64_t ones_z0 = 0;
  std::int64_t zeros_z0 = 0;
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

/// Number of k with z[first[k]] == z[second[k]].
std::int64_t count_matching_edges(std::span<const std::uint8_t> z,
                                  std::span<const std::uint32_t> first,
                                  std::span<const std::uint32_t> second);

/// out[i] = number of neighbors j of i with z[j] == 1.
void neighbor_one_counts(const EllTable& ell, std::span<const std::uint8_t> z,
                         std::span<std::int32_t> out);

/// Rating totals split by the latent value of their unit.
SplitCounts split_counts(std::span<const std::uint8_t> z, std::span<const std::int32_t> ones,
                         std::span<const std::int32_t> zeros);

namespace scalar {
std::int64_t count_matching_edges(std::span<const std::uint8_t> z,
                                  std::span<const std::uint32_t> first,
                                  std::span<const std::uint32_t> second);
void neighbor_one_counts(const EllTable& ell, std::span<const std::uint8_t> z,
                         std::span<std::int32_t> out);
SplitCounts split_counts(std::span<const std::uint8_t> z, std::span<const std::int32_t> ones,
                         std::span<const std::int32_t> zeros);
}  // namespace scalar

// Only callable when isa_available(Isa::Avx2).
namespace avx2 {
std::int64_t count_matching_edges(std::span<const std::uint8_t> z,
                                  std::span<const std::uint32_t> first,
                                  std::span<const std::uint32_t> second);
void neighbor_one_counts(const EllTable& ell, std::span<const std::uint8_t> z,
                         std::span<std::int32_t> out);
SplitCounts split_counts(std::span<const std::uint8_t> z, std::span<const std::int32_t> ones,
                         std::span<const std::int32_t> zeros);
}  // namespace avx2

}  // namespace mdgm::kernels
