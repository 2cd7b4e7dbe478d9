#pragma once

#include <array>
#include <cstdint>

#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"

namespace sifo {

class AddressOverflowError : public Error {
 public:
  using Error::Error;
};

// Three 21-bit fields (1-bit BRAM flag + 20-bit address) packed at offsets
// 0, 21 and 42 of reg1:reg0; the top bit of the 64-bit pair is unused.
struct PackedAddress {
  std::uint32_t reg0 = 0;
  std::uint32_t reg1 = 0;

  friend bool operator==(const PackedAddress&, const PackedAddress&) = default;
};

inline constexpr std::uint32_t kPackedAddrBits = 20;
inline constexpr std::uint32_t kPackedAddrLimit = 1u << kPackedAddrBits;

inline PackedAddress pack_addresses(const Placement& in0, const Placement& in1,
                                    const Placement& out) {
  std::uint64_t packed = 0;
  int shift = 0;
  for (const Placement* p : {&in0, &in1, &out}) {
    if (p->addr >= kPackedAddrLimit) {
      throw AddressOverflowError("address " + std::to_string(p->addr) +
                                 " does not fit in 20 bits");
    }
    std::uint64_t field = (std::uint64_t(p->bram) << kPackedAddrBits) | p->addr;
    packed |= field << shift;
    shift += 21;
  }
  return PackedAddress{std::uint32_t(packed), std::uint32_t(packed >> 32)};
}

inline std::array<Placement, 3> unpack_addresses(const PackedAddress& pa) {
  std::uint64_t packed = (std::uint64_t(pa.reg1) << 32) | pa.reg0;
  std::array<Placement, 3> out;
  for (int i = 0; i < 3; ++i) {
    std::uint64_t field = (packed >> (21 * i)) & ((1u << 21) - 1);
    out[i].bram = (field >> kPackedAddrBits) & 1;
    out[i].addr = std::uint32_t(field & (kPackedAddrLimit - 1));
  }
  return out;
}

}  // namespace sifo
