#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace sifo {

inline constexpr std::size_t kLabelBytes = 10;
inline constexpr std::size_t kLabelBits = 80;

// 80-bit wire label, most significant byte first. Bit 0 of the last byte is
// the point-and-permute select bit.
struct WireLabel {
  std::array<std::uint8_t, kLabelBytes> bytes{};

  int select_bit() const { return bytes[kLabelBytes - 1] & 1; }

  WireLabel& operator^=(const WireLabel& o) {
    for (std::size_t i = 0; i < kLabelBytes; ++i) bytes[i] ^= o.bytes[i];
    return *this;
  }
  friend WireLabel operator^(WireLabel a, const WireLabel& b) { return a ^= b; }
  friend auto operator<=>(const WireLabel&, const WireLabel&) = default;
};

std::string to_hex(const WireLabel& l);
WireLabel label_from_hex(std::string_view hex);  // expects 20 hex digits

// Free-XOR global offset. lsb is forced to 1 so the two labels of any wire
// disagree in their select bit.
struct GlobalDelta {
  WireLabel value;
};

// Deterministic label source. mt19937_64 output is fully specified by the
// C++ standard, so identical seeds give identical labels everywhere.
class LabelRng {
 public:
  explicit LabelRng(std::uint64_t seed) : gen_(seed) {}
  WireLabel next_label();

 private:
  std::mt19937_64 gen_;
};

GlobalDelta new_delta(LabelRng& rng);

}  // namespace sifo
