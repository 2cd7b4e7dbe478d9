#include "sifo/memmap.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace sifo {

std::string policy_to_string(MemoryPolicy policy) {
  switch (policy) {
    case MemoryPolicy::AllDdr: return "all-ddr";
    case MemoryPolicy::DirectlyUsed: return "directly-used";
    case MemoryPolicy::MostFrequentlyUsed: return "mfu";
  }
  return "?";
}

MemoryPolicy policy_from_string(std::string_view s) {
  if (s == "all-ddr" || s == "all_ddr" || s == "ddr") return MemoryPolicy::AllDdr;
  if (s == "directly-used" || s == "directly_used" || s == "du") {
    return MemoryPolicy::DirectlyUsed;
  }
  if (s == "mfu" || s == "most-frequently-used" || s == "most_frequently_used") {
    return MemoryPolicy::MostFrequentlyUsed;
  }
  throw ConfigError("unknown memory policy: " + std::string(s));
}

std::vector<std::uint32_t> fanout_counts(const Circuit& circuit) {
  std::vector<std::uint32_t> counts(circuit.slot_count(), 0);
  for (const Gate& g : circuit.gates) {
    ++counts[circuit.slot(g.in0)];
    ++counts[circuit.slot(g.in1)];
  }
  return counts;
}

namespace {

MemoryMap ddr_base(const Circuit& circuit, MemoryPolicy policy,
                   std::uint64_t capacity) {
  MemoryMap map;
  map.policy = policy;
  map.bram_capacity_labels = capacity;
  map.by_slot.resize(circuit.slot_count());
  for (std::size_t i = 0; i < map.by_slot.size(); ++i) {
    map.by_slot[i] = Placement{false, std::uint32_t(i)};
  }
  map.ddr_wires = map.by_slot.size();
  return map;
}

std::vector<bool> output_mask(const Circuit& circuit) {
  std::vector<bool> is_output(circuit.slot_count(), false);
  for (WireId w : circuit.outputs) is_output[circuit.slot(w)] = true;
  return is_output;
}

// Unique consumer gate of each fanout-1 wire (undefined content otherwise).
std::vector<GateId> last_consumer(const Circuit& circuit) {
  std::vector<GateId> consumer(circuit.slot_count(), 0);
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    consumer[circuit.slot(circuit.gates[g].in0)] = GateId(g);
    consumer[circuit.slot(circuit.gates[g].in1)] = GateId(g);
  }
  return consumer;
}

}  // namespace

MemoryMap allocate_all_ddr(const Circuit& circuit) {
  return ddr_base(circuit, MemoryPolicy::AllDdr, 0);
}

MemoryMap allocate_directly_used(const Circuit& circuit,
                                 const Layering& layering,
                                 std::uint64_t bram_capacity_labels) {
  MemoryMap map =
      ddr_base(circuit, MemoryPolicy::DirectlyUsed, bram_capacity_labels);
  const std::uint64_t half = bram_capacity_labels / 2;
  if (half == 0 || circuit.gates.empty()) return map;

  auto fanout = fanout_counts(circuit);
  auto is_output = output_mask(circuit);
  auto consumer = last_consumer(circuit);

  // Eligible wires grouped by producing layer, ascending wire id within a
  // layer (gate outputs are emitted in id order inside each layer already,
  // but sort anyway since parsed circuits need not be).
  std::vector<std::vector<WireId>> eligible(layering.full_depth + 1);
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    WireId w = circuit.gates[g].out;
    std::uint32_t slot = circuit.slot(w);
    if (fanout[slot] != 1 || is_output[slot]) continue;
    std::uint32_t prod = layering.gate_layer[g];
    if (layering.gate_layer[consumer[slot]] != prod + 1) continue;
    eligible[prod].push_back(w);
  }
  for (std::uint32_t layer = 1; layer <= layering.full_depth; ++layer) {
    auto& wires = eligible[layer];
    std::sort(wires.begin(), wires.end());
    std::uint64_t base = (layer % 2) * half;
    for (std::size_t i = 0; i < wires.size(); ++i) {
      if (i >= half) break;  // half full: the rest of this layer spills
      map.by_slot[circuit.slot(wires[i])] =
          Placement{true, std::uint32_t(base + i)};
      ++map.bram_wires;
      --map.ddr_wires;
    }
  }
  return map;
}

MemoryMap allocate_mfu(const Circuit& circuit,
                       std::uint64_t bram_capacity_labels) {
  MemoryMap map = ddr_base(circuit, MemoryPolicy::MostFrequentlyUsed,
                           bram_capacity_labels);
  auto fanout = fanout_counts(circuit);
  std::vector<std::uint32_t> order(circuit.slot_count());
  std::iota(order.begin(), order.end(), 0);
  const auto& wires = circuit.slot_wires();
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (fanout[a] != fanout[b]) return fanout[a] > fanout[b];
              return wires[a] < wires[b];
            });
  std::uint64_t take =
      std::min<std::uint64_t>(bram_capacity_labels, order.size());
  for (std::uint64_t i = 0; i < take; ++i) {
    map.by_slot[order[i]] = Placement{true, std::uint32_t(i)};
  }
  map.bram_wires = take;
  map.ddr_wires = map.by_slot.size() - take;
  return map;
}

MemoryMap allocate(const Circuit& circuit, const Layering& layering,
                   MemoryPolicy policy) {
  switch (policy) {
    case MemoryPolicy::AllDdr: return allocate_all_ddr(circuit);
    case MemoryPolicy::DirectlyUsed:
      return allocate_directly_used(circuit, layering);
    case MemoryPolicy::MostFrequentlyUsed: return allocate_mfu(circuit);
  }
  throw ConfigError("unknown memory policy");
}

WireStats wire_stats(const Circuit& circuit, const Layering& layering) {
  WireStats stats;
  stats.total = circuit.wire_count();
  auto fanout = fanout_counts(circuit);
  auto is_output = output_mask(circuit);

  // a-wire: produced by a gate, consumed by exactly one gate operand, and
  // not itself a declared output.
  std::vector<bool> a_wire(circuit.slot_count(), false);
  std::vector<std::uint64_t> per_layer(layering.full_depth + 1, 0);
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    std::uint32_t slot = circuit.slot(circuit.gates[g].out);
    if (fanout[slot] == 1 && !is_output[slot]) {
      a_wire[slot] = true;
      ++stats.a_wires;
      ++per_layer[layering.gate_layer[g]];
    }
  }
  for (std::uint64_t n : per_layer) stats.max_d = std::max(stats.max_d, n);

  auto layer_of_wire = [&](WireId w) -> std::uint32_t {
    auto p = circuit.producer(w);
    return p ? layering.gate_layer[*p] : 0;
  };
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    bool adj = false, far = false;
    for (WireId w : {circuit.gates[g].in0, circuit.gates[g].in1}) {
      if (!a_wire[circuit.slot(w)]) continue;
      std::uint32_t prod = layer_of_wire(w);
      std::uint32_t use = layering.gate_layer[g];
      if (prod + 1 == use) {
        adj = true;
        ++stats.adjacent_a;
      } else {
        far = true;
      }
    }
    if (adj) ++stats.b_gates;
    if (far) ++stats.c_gates;
  }
  if (layering.depth > 0) {
    stats.wires_per_layer = double(stats.total) / double(layering.depth);
  }
  return stats;
}

std::string memmap_json(const MemoryMap& map) {
  nlohmann::json j;
  j["policy"] = policy_to_string(map.policy);
  j["bram_capacity_labels"] = map.bram_capacity_labels;
  j["bram_wires"] = map.bram_wires;
  j["ddr_wires"] = map.ddr_wires;
  auto& pl = j["placements"] = nlohmann::json::array();
  for (const Placement& p : map.by_slot) {
    pl.push_back({{"bram", p.bram}, {"addr", p.addr}});
  }
  return j.dump(2);
}

}  // namespace sifo
