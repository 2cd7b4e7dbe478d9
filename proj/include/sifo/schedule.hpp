#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sifo/layering.hpp"
#include "sifo/netlist.hpp"

namespace sifo {

struct GateSlot {
  GateId gate;
  std::uint32_t cell;
};

struct LayerPlan {
  // XORs stream in file order; ANDs split into batches of at most
  // n_and_cells. Cells are assigned round-robin by in-layer index.
  std::vector<GateSlot> xor_stream;
  std::vector<std::vector<GateSlot>> and_batches;
};

struct Schedule {
  std::uint32_t n_and_cells = 10;
  std::uint32_t n_xor_cells = 10;
  std::vector<LayerPlan> layers;  // layers[i] covers layer i+1
  std::uint64_t total_ands = 0;
  std::uint64_t total_xors = 0;
  std::uint64_t total_and_batches = 0;
};

Schedule make_schedule(const Circuit& circuit, const Layering& layering,
                       std::uint32_t n_and_cells, std::uint32_t n_xor_cells);

// How many 10-AND bitstream configurations a non-overlay flow would need:
// ceil(#AND / n_and_cells), counted over the whole circuit.
std::uint64_t reprogram_count(const Circuit& circuit,
                              std::uint32_t n_and_cells = 10);

std::string schedule_json(const Schedule& schedule);

}  // namespace sifo
