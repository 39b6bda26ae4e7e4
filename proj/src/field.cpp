#include "mdgm/field.hpp"

#include <stdexcept>

namespace mdgm {

LatentField::LatentField(std::vector<std::uint8_t> values) : z_(std::move(values)) {
  for (auto& v : z_) {
    if (v > 1) throw std::invalid_argument("latent values must be 0 or 1");
  }
}

LatentField LatentField::from_bits(std::string_view bits) {
  std::vector<std::uint8_t> z;
  z.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("latent bit string must be 0/1");
    z.push_back(c == '1');
  }
  return LatentField(std::move(z));
}

LatentField LatentField::from_code(std::uint64_t code, std::size_t n) {
  LatentField f(n);
  for (std::size_t i = 0; i < n; ++i) f.z_[i] = (code >> i) & 1U;
  return f;
}

std::size_t LatentField::count_ones() const {
  std::size_t c = 0;
  for (auto v : z_) c += v;
  return c;
}

LatentField LatentField::flipped() const {
  LatentField f = *this;
  for (auto& v : f.z_) v ^= 1U;
  return f;
}

std::string LatentField::to_bits() const {
  std::string s;
  s.reserve(z_.size());
  for (auto v : z_) s.push_back(v ? '1' : '0');
  return s;
}

std::uint64_t LatentField::code() const {
  if (z_.size() > 64) throw std::length_error("field too large for a 64-bit code");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < z_.size(); ++i) c |= static_cast<std::uint64_t>(z_[i]) << i;
  return c;
}

}  // namespace mdgm
