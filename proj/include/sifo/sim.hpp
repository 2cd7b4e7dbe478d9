#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"
#include "sifo/schedule.hpp"
#include "sifo/trace.hpp"

namespace sifo {

struct TimingParams {
  double local_clock_hz = 200e6;   // overlay cells and BRAM
  double main_clock_hz = 300e6;    // host interface, informational
  std::uint32_t gand_latency_cycles = 82;
  std::uint32_t gxor_latency_cycles = 1;  // modeled as 1 cycle, not 0
  std::uint32_t bram_access_cycles = 1;
  double ddr_latency_ns = 180.0;
  double reg_write_ns = 50.0;
  std::uint32_t ddr_word_bits = 512;  // 4 labels per word, accounting only
  std::uint32_t ddr_ports = 2;
  std::uint32_t n_and_cells = 10;
  std::uint32_t n_xor_cells = 10;

  double local_period_ns() const { return 1e9 / local_clock_hz; }
  void validate() const;  // throws ConfigError
};

struct SimOptions {
  bool overlap_comm_compute = true;
  bool xor_nosync = false;
  bool packed_addresses = false;
  MemoryPolicy policy = MemoryPolicy::AllDdr;
};

struct LayerTiming {
  std::uint32_t layer = 0;
  std::uint64_t ands = 0;
  std::uint64_t xors = 0;
  double start_ns = 0;
  double end_ns = 0;
};

struct SimReport {
  double total_ns = 0;
  double pcie_ns = 0;     // sum of link transfer times
  double compute_ns = 0;  // sum of per-gate cell occupancy
  std::uint64_t mem_read_bram = 0;
  std::uint64_t mem_read_ddr = 0;
  std::uint64_t mem_write_bram = 0;
  std::uint64_t mem_write_ddr = 0;
  std::uint64_t peak_live_bram_slots = 0;
  std::uint64_t bram_capacity_labels = 0;  // 0 when unknown (trace input)
  std::uint64_t n_ands = 0;
  std::uint64_t n_xors = 0;
  std::vector<LayerTiming> layers;
  TimingParams params;
  SimOptions options;
};

// Deterministic event model. Per gate: the host link sends 3 register words
// (2 when packed) at reg_write_ns each; the assigned cell then reads both
// operands (BRAM reads run in parallel, DDR reads queue on the earliest-free
// port), computes, and writes the result. Layers are separated by a barrier
// at the latest completion so far. Without overlap the link also waits for
// the previous synchronized gate to finish; with xor_nosync, an XOR whose
// unloaded service time fits inside its own link time is absorbed into the
// stream (link cost only, no cell or port booking).
SimReport simulate(const Circuit& circuit, const Schedule& schedule,
                   const MemoryMap& map, const TimingParams& params,
                   const SimOptions& options);

// Same model driven from a saved dispatch stream; cell counts come from the
// trace header and options.policy picks the BRAM liveness rule.
SimReport simulate_trace(const DispatchTrace& trace, const TimingParams& params,
                         const SimOptions& options);

struct PolicyRun {
  MemoryPolicy policy = MemoryPolicy::AllDdr;
  SimReport report;
};

std::vector<PolicyRun> compare_policies(const Circuit& circuit,
                                        const TimingParams& params,
                                        SimOptions options = {});

struct SweepPoint {
  std::uint32_t n_and_cells = 0;
  std::uint32_t n_xor_cells = 0;
  SimReport report;
};

std::vector<SweepPoint> sweep_cells(
    const Circuit& circuit, TimingParams params, const SimOptions& options,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& cell_counts);

std::string sim_report_json(const SimReport& report);
std::string sim_report_text(const SimReport& report);
std::string policy_comparison_text(const std::vector<PolicyRun>& runs);
std::string sweep_csv(const std::vector<SweepPoint>& points);

}  // namespace sifo
