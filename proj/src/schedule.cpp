#include "sifo/schedule.hpp"

#include <json.hpp>

namespace sifo {

Schedule make_schedule(const Circuit& circuit, const Layering& layering,
                       std::uint32_t n_and_cells, std::uint32_t n_xor_cells) {
  if (n_and_cells < 1 || n_xor_cells < 1) {
    throw ConfigError("cell counts must be at least 1");
  }
  Schedule s;
  s.n_and_cells = n_and_cells;
  s.n_xor_cells = n_xor_cells;
  s.layers.resize(layering.layers.size());
  for (std::size_t li = 0; li < layering.layers.size(); ++li) {
    LayerPlan& plan = s.layers[li];
    std::uint32_t and_idx = 0, xor_idx = 0;
    for (GateId g : layering.layers[li]) {
      if (circuit.gates[g].op == GateOp::And) {
        if (and_idx % n_and_cells == 0) plan.and_batches.emplace_back();
        plan.and_batches.back().push_back({g, and_idx % n_and_cells});
        ++and_idx;
      } else {
        plan.xor_stream.push_back({g, xor_idx % n_xor_cells});
        ++xor_idx;
      }
    }
    s.total_ands += and_idx;
    s.total_xors += xor_idx;
    s.total_and_batches += plan.and_batches.size();
  }
  return s;
}

std::uint64_t reprogram_count(const Circuit& circuit,
                              std::uint32_t n_and_cells) {
  if (n_and_cells < 1) throw ConfigError("cell count must be at least 1");
  std::uint64_t ands = 0;
  for (const Gate& g : circuit.gates) {
    if (g.op == GateOp::And) ++ands;
  }
  return (ands + n_and_cells - 1) / n_and_cells;
}

std::string schedule_json(const Schedule& schedule) {
  nlohmann::json j;
  j["n_and_cells"] = schedule.n_and_cells;
  j["n_xor_cells"] = schedule.n_xor_cells;
  j["total_ands"] = schedule.total_ands;
  j["total_xors"] = schedule.total_xors;
  j["total_and_batches"] = schedule.total_and_batches;
  auto& layers = j["layers"] = nlohmann::json::array();
  for (std::size_t li = 0; li < schedule.layers.size(); ++li) {
    const LayerPlan& plan = schedule.layers[li];
    nlohmann::json jl;
    jl["layer"] = li + 1;
    auto& xs = jl["xor_stream"] = nlohmann::json::array();
    for (const GateSlot& gs : plan.xor_stream) {
      xs.push_back({{"gate", gs.gate}, {"cell", gs.cell}});
    }
    auto& bs = jl["and_batches"] = nlohmann::json::array();
    for (const auto& batch : plan.and_batches) {
      nlohmann::json jb = nlohmann::json::array();
      for (const GateSlot& gs : batch) {
        jb.push_back({{"gate", gs.gate}, {"cell", gs.cell}});
      }
      bs.push_back(std::move(jb));
    }
    layers.push_back(std::move(jl));
  }
  return j.dump(2);
}

}  // namespace sifo
