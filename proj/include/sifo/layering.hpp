#pragma once

#include <cstdint>
#include <vector>

#include "sifo/netlist.hpp"

namespace sifo {

// ASAP layer assignment. Layer 0 holds the primary inputs and the constant
// wire; a gate sits one past the deepest of its operands. `depth` ignores
// gates whose output never reaches a declared output, `full_depth` does not.
struct Layering {
  std::vector<std::uint32_t> gate_layer;   // per gate, 1-based
  std::vector<bool> live;                  // per gate
  std::vector<std::vector<GateId>> layers; // layers[i] = gates at layer i+1
  std::uint32_t depth = 0;
  std::uint32_t full_depth = 0;
};

Layering extract_layers(const Circuit& circuit);

}  // namespace sifo
