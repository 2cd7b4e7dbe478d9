#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace sifo {

// FIPS 180-1 SHA-1, streaming interface plus one-shot helpers.
class Sha1 {
 public:
  using Digest = std::array<std::uint8_t, 20>;

  Sha1() { reset(); }

  void reset();
  void update(const void* data, std::size_t len);
  Digest finish();

  static Digest digest(const void* data, std::size_t len) {
    Sha1 h;
    h.update(data, len);
    return h.finish();
  }
  static Digest digest(std::string_view s) { return digest(s.data(), s.size()); }

 private:
  void process_block(const std::uint8_t* block);

  std::uint32_t state_[5];
  std::uint64_t length_bits_;
  std::uint8_t buffer_[64];
  std::size_t buffered_;
};

std::string digest_hex(const Sha1::Digest& d);

}  // namespace sifo
