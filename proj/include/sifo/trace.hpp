#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"
#include "sifo/packed_address.hpp"
#include "sifo/schedule.hpp"

namespace sifo {

// Flat dispatch stream, the software stand-in for the host-to-FPGA register
// writes. One record per gate in send order plus explicit layer barriers.
//
// On disk:  magic "SIFOTR1\0", u32 n_and_cells, u32 n_xor_cells,
//           u64 record count, then records. Gate record: u8 kind (0 XOR,
//           1 AND), u8 cell, u32 reg0, u32 reg1. Barrier record: u8 2.
//           All integers big-endian.
struct TraceRecord {
  enum Kind : std::uint8_t { Xor = 0, And = 1, LayerEnd = 2 };
  Kind kind = Xor;
  std::uint8_t cell = 0;
  PackedAddress addrs;
};

struct DispatchTrace {
  std::uint32_t n_and_cells = 10;
  std::uint32_t n_xor_cells = 10;
  std::vector<TraceRecord> records;
};

// Requires every address to fit the packed 20-bit form; throws
// AddressOverflowError otherwise. Cell indices must fit a byte.
DispatchTrace build_trace(const Circuit& circuit, const Schedule& schedule,
                          const MemoryMap& map);

std::vector<std::uint8_t> trace_to_bytes(const DispatchTrace& trace);
DispatchTrace trace_from_bytes(const std::vector<std::uint8_t>& bytes);

void save_trace(const DispatchTrace& trace, const std::string& path);
DispatchTrace load_trace(const std::string& path);

}  // namespace sifo
