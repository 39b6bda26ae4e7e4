#include "mdgm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mdgm::kernels {

namespace {

struct Table {
  Isa isa;
  std::int64_t (*count_matching_edges)(std::span<const std::uint8_t>,
                                       std::span<const std::uint32_t>,
                                       std::span<const std::uint32_t>);
  void (*neighbor_one_counts)(const EllTable&, std::span<const std::uint8_t>,
                              std::span<std::int32_t>);
  SplitCounts (*split_counts)(std::span<const std::uint8_t>, std::span<const std::int32_t>,
                              std::span<const std::int32_t>);
};

constexpr Table kScalar{Isa::Scalar, &scalar::count_matching_edges,
                        &scalar::neighbor_one_counts, &scalar::split_counts};
constexpr Table kAvx2{Isa::Avx2, &avx2::count_matching_edges, &avx2::neighbor_one_counts,
                      &avx2::split_counts};

// MDGM_KERNELS=scalar pins the reference path.
const Table* detect() {
  const char* pin = std::getenv("MDGM_KERNELS");
  if (pin && std::strcmp(pin, "scalar") == 0) return &kScalar;
  return isa_available(Isa::Avx2) ? &kAvx2 : &kScalar;
}

std::atomic<const Table*>& active() {
  static std::atomic<const Table*> table{detect()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return active().load()->isa; }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::runtime_error("instruction set " + std::string(to_string(isa)) +
                             " is not available on this CPU");
  }
  active().store(isa == Isa::Avx2 ? &kAvx2 : &kScalar);
}

void reset_isa() { active().store(detect()); }

std::int64_t count_matching_edges(std::span<const std::uint8_t> z,
                                  std::span<const std::uint32_t> first,
                                  std::span<const std::uint32_t> second) {
  return active().load()->count_matching_edges(z, first, second);
}

void neighbor_one_counts(const EllTable& ell, std::span<const std::uint8_t> z,
                         std::span<std::int32_t> out) {
  active().load()->neighbor_one_counts(ell, z, out);
}

SplitCounts split_counts(std::span<const std::uint8_t> z, std::span<const std::int32_t> ones,
                         std::span<const std::int32_t> zeros) {
  return active().load()->split_counts(z, ones, zeros);
}

}  // namespace mdgm::kernels
