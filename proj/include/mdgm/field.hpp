#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdgm {

/// Binary latent field z, one value in {0,1} per areal unit.
class LatentField {
 public:
  LatentField() = default;
  explicit LatentField(std::size_t n, std::uint8_t fill = 0) : z_(n, fill) {}
  explicit LatentField(std::vector<std::uint8_t> values);

  /// Parses a string of '0'/'1' characters.
  static LatentField from_bits(std::string_view bits);
  /// Field whose i-th value is bit i of code.
  static LatentField from_code(std::uint64_t code, std::size_t n);

  std::size_t size() const { return z_.size(); }
  std::uint8_t operator[](std::size_t i) const { return z_[i]; }
  void set(std::size_t i, std::uint8_t v) { z_[i] = v ? 1 : 0; }

  std::span<const std::uint8_t> values() const { return z_; }
  std::size_t count_ones() const;
  LatentField flipped() const;
  std::string to_bits() const;
  std::uint64_t code() const;

  friend bool operator==(const LatentField&, const LatentField&) = default;

 private:
  std::vector<std::uint8_t> z_;
};

}  // namespace mdgm
