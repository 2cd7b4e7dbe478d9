#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sifo/layering.hpp"
#include "sifo/netlist.hpp"

namespace sifo {

enum class MemoryPolicy { AllDdr, DirectlyUsed, MostFrequentlyUsed };

std::string policy_to_string(MemoryPolicy policy);
MemoryPolicy policy_from_string(std::string_view s);  // throws ConfigError

struct Placement {
  bool bram = false;
  std::uint32_t addr = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// One placement per wire, indexed by the circuit's dense slot. DDR-placed
// wires use their slot index as address; BRAM addresses are policy-specific.
struct MemoryMap {
  MemoryPolicy policy = MemoryPolicy::AllDdr;
  std::uint64_t bram_capacity_labels = 0;
  std::vector<Placement> by_slot;
  std::uint64_t bram_wires = 0;
  std::uint64_t ddr_wires = 0;

  const Placement& of(const Circuit& c, WireId w) const {
    return by_slot[c.slot(w)];
  }
};

// Default BRAM capacities, in 80-bit label slots. The ping-pong policy gets
// the full 13 Mbit budget, the frequency-sorted policy 6.75 Mbit.
inline constexpr std::uint64_t kDefaultBramSlotsDirectlyUsed = 166400;
inline constexpr std::uint64_t kDefaultBramSlotsMfu = 86400;

MemoryMap allocate_all_ddr(const Circuit& circuit);

// BRAM for gate-produced wires with fanout exactly 1, not declared outputs,
// whose single consumer sits one layer below the producer. The BRAM is split
// into ping-pong halves that swap read/write roles every layer; a layer's
// overflow beyond its half spills to DDR.
MemoryMap allocate_directly_used(
    const Circuit& circuit, const Layering& layering,
    std::uint64_t bram_capacity_labels = kDefaultBramSlotsDirectlyUsed);

// BRAM for the wires with the most accesses (consumer count plus the one
// write), descending, ties by ascending wire id. Slots are never reused.
MemoryMap allocate_mfu(
    const Circuit& circuit,
    std::uint64_t bram_capacity_labels = kDefaultBramSlotsMfu);

MemoryMap allocate(const Circuit& circuit, const Layering& layering,
                   MemoryPolicy policy);

// Per-slot count of gate operand uses (both operands counted separately).
std::vector<std::uint32_t> fanout_counts(const Circuit& circuit);

struct WireStats {
  std::uint64_t total = 0;        // inputs + gate outputs
  std::uint64_t a_wires = 0;      // gate-produced, consumed exactly once
  std::uint64_t adjacent_a = 0;   // ... and consumed in the very next layer
  std::uint64_t b_gates = 0;      // gates reading >=1 adjacent such wire
  std::uint64_t c_gates = 0;      // gates reading >=1 non-adjacent such wire
  std::uint64_t max_d = 0;        // largest per-layer count of a_wires
  double wires_per_layer = 0.0;   // total / depth
};

WireStats wire_stats(const Circuit& circuit, const Layering& layering);

std::string memmap_json(const MemoryMap& map);

}  // namespace sifo
