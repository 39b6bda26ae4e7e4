#include "mdgm/kernels.hpp"

#include <algorithm>
#include <vector>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define MDGM_HAVE_X86 1
#define MDGM_AVX2 __attribute__((target("avx2")))
#else
#define MDGM_HAVE_X86 0
#endif

#include <stdexcept>

namespace mdgm::kernels::avx2 {

#if MDGM_HAVE_X86

namespace {

// z widened to 32-bit lanes, with extra zero slots for sentinel indices.
MDGM_AVX2 void widen(const std::uint8_t* z, std::size_t n, std::int32_t* out) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(z + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_cvtepu8_epi32(bytes));
  }
  for (; i < n; ++i) out[i] = z[i];
}

MDGM_AVX2 std::int64_t horizontal_sum(__m256i v) {
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  std::int64_t s = 0;
  for (auto x : lanes) s += x;
  return s;
}

MDGM_AVX2 std::int64_t horizontal_sum64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

// acc += sign-extended int32 lanes of v
MDGM_AVX2 __m256i widen_add(__m256i acc, __m256i v) {
  acc = _mm256_add_epi64(acc, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(v)));
  return _mm256_add_epi64(acc, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(v, 1)));
}

thread_local std::vector<std::int32_t> scratch;

std::int32_t* widened(std::span<const std::uint8_t> z) {
  scratch.assign(z.size() + 1, 0);
  widen(z.data(), z.size(), scratch.data());
  return scratch.data();
}

}  // namespace

MDGM_AVX2 std::int64_t count_matching_edges(std::span<const std::uint8_t> z,
                                            std::span<const std::uint32_t> first,
                                            std::span<const std::uint32_t> second) {
  const std::int32_t* zw = widened(z);
  const std::size_t m = first.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t k = 0;
  for (; k + 8 <= m; k += 8) {
    __m256i ia = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(first.data() + k));
    __m256i ib = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(second.data() + k));
    __m256i va = _mm256_i32gather_epi32(zw, ia, 4);
    __m256i vb = _mm256_i32gather_epi32(zw, ib, 4);
    acc = _mm256_sub_epi32(acc, _mm256_cmpeq_epi32(va, vb));
  }
  std::int64_t matches = horizontal_sum(acc);
  for (; k < m; ++k) matches += (zw[first[k]] == zw[second[k]]);
  return matches;
}

MDGM_AVX2 void neighbor_one_counts(const EllTable& ell, std::span<const std::uint8_t> z,
                                   std::span<std::int32_t> out) {
  const std::int32_t* zw = widened(z);
  const std::size_t n = ell.rows;
  const std::uint32_t* idx = ell.index.data();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t c = 0; c < ell.width; ++c) {
      __m256i j = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + c * n + i));
      acc = _mm256_add_epi32(acc, _mm256_i32gather_epi32(zw, j, 4));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), acc);
  }
  for (; i < n; ++i) {
    std::int32_t ones = 0;
    for (std::size_t c = 0; c < ell.width; ++c) ones += zw[idx[c * n + i]];
    out[i] = ones;
  }
}

MDGM_AVX2 SplitCounts split_counts(std::span<const std::uint8_t> z,
                                   std::span<const std::int32_t> ones,
                                   std::span<const std::int32_t> zeros) {
  const std::size_t n = z.size();
  SplitCounts s;
  std::int64_t all_ones = 0, all_zeros = 0;
  std::size_t i = 0;
  // 64-bit lanes: per-unit counts are arbitrary int32 values.
  __m256i o1 = _mm256_setzero_si256(), z1 = _mm256_setzero_si256();
  __m256i ot = _mm256_setzero_si256(), zt = _mm256_setzero_si256();
  for (; i + 8 <= n; i += 8) {
    __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(z.data() + i));
    __m256i mask = _mm256_sub_epi32(_mm256_setzero_si256(), _mm256_cvtepu8_epi32(bytes));
    __m256i vo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ones.data() + i));
    __m256i vz = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(zeros.data() + i));
    o1 = widen_add(o1, _mm256_and_si256(vo, mask));
    z1 = widen_add(z1, _mm256_and_si256(vz, mask));
    ot = widen_add(ot, vo);
    zt = widen_add(zt, vz);
  }
  s.ones_z1 = horizontal_sum64(o1);
  s.zeros_z1 = horizontal_sum64(z1);
  all_ones = horizontal_sum64(ot);
  all_zeros = horizontal_sum64(zt);
  for (; i < n; ++i) {
    all_ones += ones[i];
    all_zeros += zeros[i];
    if (z[i]) {
      s.ones_z1 += ones[i];
      s.zeros_z1 += zeros[i];
    }
  }
  s.ones_z0 = all_ones - s.ones_z1;
  s.zeros_z0 = all_zeros - s.zeros_z1;
  return s;
}

#else

std::int64_t count_matching_edges(std::span<const std::uint8_t>, std::span<const std::uint32_t>,
                                  std::span<const std::uint32_t>) {
  throw std::logic_error("AVX2 kernels are not built for this architecture");
}
void neighbor_one_counts(const EllTable&, std::span<const std::uint8_t>,
                         std::span<std::int32_t>) {
  throw std::logic_error("AVX2 kernels are not built for this architecture");
}
SplitCounts split_counts(std::span<const std::uint8_t>, std::span<const std::int32_t>,
                         std::span<const std::int32_t>) {
  throw std::logic_error("AVX2 kernels are not built for this architecture");
}

#endif

}  // namespace mdgm::kernels::avx2
