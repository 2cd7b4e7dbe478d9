#include "sifo/layering.hpp"

#include <algorithm>

namespace sifo {

Layering extract_layers(const Circuit& circuit) {
  Layering out;
  const auto n = circuit.gates.size();
  out.gate_layer.resize(n, 0);
  out.live.resize(n, false);

  // Gates appear in def-before-use order, so one forward pass suffices.
  auto wire_layer = [&](WireId w) -> std::uint32_t {
    auto g = circuit.producer(w);
    return g ? out.gate_layer[*g] : 0;
  };
  for (std::size_t g = 0; g < n; ++g) {
    const Gate& gate = circuit.gates[g];
    out.gate_layer[g] =
        1 + std::max(wire_layer(gate.in0), wire_layer(gate.in1));
    out.full_depth = std::max(out.full_depth, out.gate_layer[g]);
  }

  std::vector<GateId> stack;
  for (WireId w : circuit.outputs) {
    if (auto g = circuit.producer(w); g && !out.live[*g]) {
      out.live[*g] = true;
      stack.push_back(*g);
    }
  }
  while (!stack.empty()) {
    GateId g = stack.back();
    stack.pop_back();
    out.depth = std::max(out.depth, out.gate_layer[g]);
    for (WireId w : {circuit.gates[g].in0, circuit.gates[g].in1}) {
      if (auto p = circuit.producer(w); p && !out.live[*p]) {
        out.live[*p] = true;
        stack.push_back(*p);
      }
    }
  }

  out.layers.resize(out.full_depth);
  for (std::size_t g = 0; g < n; ++g) {
    out.layers[out.gate_layer[g] - 1].push_back(GateId(g));
  }
  return out;
}

}  // namespace sifo
