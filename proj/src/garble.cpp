#include "sifo/garble.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "sifo/sha1.hpp"

namespace sifo {

WireLabel hash_gate(const WireLabel& ka, const WireLabel& kb, std::uint64_t gate_id) {
  std::uint8_t msg[2 * kLabelBytes + 8];
  std::copy(ka.bytes.begin(), ka.bytes.end(), msg);
  std::copy(kb.bytes.begin(), kb.bytes.end(), msg + kLabelBytes);
  for (int i = 0; i < 8; ++i) msg[2 * kLabelBytes + i] = std::uint8_t(gate_id >> (56 - 8 * i));
  Sha1::Digest d = Sha1::digest(msg, sizeof msg);
  WireLabel out;
  std::copy(d.begin(), d.begin() + kLabelBytes, out.bytes.begin());
  return out;
}

AndGarbling garble_and(std::uint64_t gate_id, const WireLabel& in0_label0,
                       const WireLabel& in1_label0, const GlobalDelta& delta) {
  const int p0 = in0_label0.select_bit();
  const int p1 = in1_label0.select_bit();

  AndGarbling g;
  // Select bits (0,0): its ciphertext is defined to be zero, which fixes the
  // output 0-label instead of drawing it.
  {
    const int b0 = p0, b1 = p1;  // plaintext bits whose labels carry select (0,0)
    WireLabel k0 = in0_label0;
    if (b0) k0 ^= delta.value;
    WireLabel k1 = in1_label0;
    if (b1) k1 ^= delta.value;
    WireLabel h = hash_gate(k0, k1, gate_id);
    g.out_label0 = (b0 & b1) ? h ^ delta.value : h;
  }
  for (int s0 = 0; s0 <= 1; ++s0) {
    for (int s1 = 0; s1 <= 1; ++s1) {
      if (s0 == 0 && s1 == 0) continue;
      const int b0 = s0 ^ p0, b1 = s1 ^ p1;
      WireLabel k0 = in0_label0;
      if (b0) k0 ^= delta.value;
      WireLabel k1 = in1_label0;
      if (b1) k1 ^= delta.value;
      WireLabel out = g.out_label0;
      if (b0 & b1) out ^= delta.value;
      g.table.rows[2 * s0 + s1 - 1] = hash_gate(k0, k1, gate_id) ^ out;
    }
  }
  return g;
}

WireLabel evaluate_and(std::uint64_t gate_id, const WireLabel& in0_active,
                       const WireLabel& in1_active, const GarbledAndTable& table) {
  const int s0 = in0_active.select_bit();
  const int s1 = in1_active.select_bit();
  WireLabel h = hash_gate(in0_active, in1_active, gate_id);
  if (s0 == 0 && s1 == 0) return h;
  return h ^ table.rows[2 * s0 + s1 - 1];
}

GarbledCircuit garble_circuit(const Circuit& c, std::uint64_t seed) {
  LabelRng rng(seed);
  GarbledCircuit gc;
  gc.delta = new_delta(rng);

  // one 0-label per input-like wire, drawn in ascending wire id order
  std::vector<WireId> in_wires = c.inputs;
  if (c.const_zero) in_wires.push_back(*c.const_zero);
  std::sort(in_wires.begin(), in_wires.end());

  std::vector<WireLabel> label0(c.slot_count());
  for (WireId w : in_wires) label0[c.slot(w)] = rng.next_label();

  for (GateId i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const WireLabel& a = label0[c.slot(g.in0)];
    const WireLabel& b = label0[c.slot(g.in1)];
    if (g.op == GateOp::Xor) {
      label0[c.slot(g.out)] = a ^ b;
    } else {
      AndGarbling ag = garble_and(i, a, b, *gc.delta);
      label0[c.slot(g.out)] = ag.out_label0;
      gc.and_tables.emplace(i, ag.table);
    }
  }

  for (WireId w : c.inputs)
    gc.input_labels.emplace(w, LabelPair{label0[c.slot(w)],
                                         label0[c.slot(w)] ^ gc.delta->value});
  if (c.const_zero) gc.const_label = {*c.const_zero, label0[c.slot(*c.const_zero)]};
  for (WireId w : c.outputs)
    gc.output_decode.emplace(w, LabelPair{label0[c.slot(w)],
                                          label0[c.slot(w)] ^ gc.delta->value});
  return gc;
}

namespace {

void check_assignment_covers(const std::map<WireId, LabelPair>& labels,
                             const Assignment& values) {
  if (values.size() != labels.size())
    throw InputMismatchError("assignment covers " + std::to_string(values.size()) +
                             " wires, circuit declares " + std::to_string(labels.size()) +
                             " inputs");
  for (const auto& [w, v] : values) {
    (void)v;
    if (!labels.count(w))
      throw InputMismatchError("assignment names wire " + std::to_string(w) +
                               ", which is not a declared input");
  }
}

}  // namespace

ActiveLabels encode_inputs(const GarbledCircuit& gc, const Assignment& values) {
  check_assignment_covers(gc.input_labels, values);
  ActiveLabels act;
  for (const auto& [w, pair] : gc.input_labels)
    act.emplace(w, values.at(w) ? pair.second : pair.first);
  if (gc.const_label) act.emplace(gc.const_label->first, gc.const_label->second);
  return act;
}

ActiveLabels evaluate_circuit(const Circuit& c, const AndTables& tables,
                              const ActiveLabels& active_inputs) {
  std::vector<WireLabel> act(c.slot_count());
  std::size_t expected = c.inputs.size() + (c.const_zero ? 1 : 0);
  if (active_inputs.size() != expected)
    throw InputMismatchError("expected " + std::to_string(expected) +
                             " active input labels, got " +
                             std::to_string(active_inputs.size()));
  for (const auto& [w, l] : active_inputs) act[c.slot(w)] = l;

  for (GateId i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const WireLabel& a = act[c.slot(g.in0)];
    const WireLabel& b = act[c.slot(g.in1)];
    if (g.op == GateOp::Xor) {
      act[c.slot(g.out)] = a ^ b;
    } else {
      auto it = tables.find(i);
      if (it == tables.end())
        throw DecodeError("missing garbled table for AND gate " + std::to_string(i));
      act[c.slot(g.out)] = evaluate_and(i, a, b, it->second);
    }
  }

  ActiveLabels out;
  for (WireId w : c.outputs) out.emplace(w, act[c.slot(w)]);
  return out;
}

Assignment decode_outputs(const GarbledCircuit& gc, const ActiveLabels& active_outputs) {
  if (active_outputs.size() != gc.output_decode.size())
    throw DecodeError("expected " + std::to_string(gc.output_decode.size()) +
                      " output labels, got " + std::to_string(active_outputs.size()));
  Assignment out;
  for (const auto& [w, l] : active_outputs) {
    auto it = gc.output_decode.find(w);
    if (it == gc.output_decode.end())
      throw DecodeError("wire " + std::to_string(w) + " is not a declared output");
    if (l == it->second.first)
      out.emplace(w, false);
    else if (l == it->second.second)
      out.emplace(w, true);
    else
      throw DecodeError("label on output wire " + std::to_string(w) +
                        " decodes to neither plaintext value");
  }
  return out;
}

Assignment cleartext_evaluate(const Circuit& c, const Assignment& values) {
  if (values.size() != c.inputs.size())
    throw InputMismatchError("assignment covers " + std::to_string(values.size()) +
                             " wires, circuit declares " + std::to_string(c.inputs.size()) +
                             " inputs");
  std::vector<char> val(c.slot_count(), 0);
  std::unordered_set<WireId> declared(c.inputs.begin(), c.inputs.end());
  for (const auto& [w, v] : values) {
    if (!declared.count(w))
      throw InputMismatchError("assignment names wire " + std::to_string(w) +
                               ", which is not a declared input");
    val[c.slot(w)] = v;
  }
  for (const Gate& g : c.gates) {
    char a = val[c.slot(g.in0)];
    char b = val[c.slot(g.in1)];
    val[c.slot(g.out)] = (g.op == GateOp::Xor) ? (a ^ b) : (a & b);
  }
  Assignment out;
  for (WireId w : c.outputs) out.emplace(w, bool(val[c.slot(w)]));
  return out;
}

}  // namespace sifo
