#include "sifo/wire_label.hpp"

#include <stdexcept>

namespace sifo {

std::string to_hex(const WireLabel& l) {
  static const char* hexc = "0123456789abcdef";
  std::string s;
  s.reserve(2 * kLabelBytes);
  for (auto b : l.bytes) {
    s.push_back(hexc[b >> 4]);
    s.push_back(hexc[b & 0xF]);
  }
  return s;
}

static int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

WireLabel label_from_hex(std::string_view hex) {
  if (hex.size() != 2 * kLabelBytes)
    throw std::invalid_argument("label hex string must be 20 digits");
  WireLabel l;
  for (std::size_t i = 0; i < kLabelBytes; ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex digit in label");
    l.bytes[i] = std::uint8_t(hi << 4 | lo);
  }
  return l;
}

WireLabel LabelRng::next_label() {
  // 80 bits from two 64-bit draws: first draw fills bytes 0..7, the top two
  // bytes of the second draw fill bytes 8..9.
  std::uint64_t a = gen_();
  std::uint64_t b = gen_();
  WireLabel l;
  for (int i = 0; i < 8; ++i) l.bytes[i] = std::uint8_t(a >> (56 - 8 * i));
  l.bytes[8] = std::uint8_t(b >> 56);
  l.bytes[9] = std::uint8_t(b >> 48);
  return l;
}

GlobalDelta new_delta(LabelRng& rng) {
  WireLabel l = rng.next_label();
  l.bytes[kLabelBytes - 1] |= 1;
  return GlobalDelta{l};
}

}  // namespace sifo
