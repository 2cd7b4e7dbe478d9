#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "sifo/netlist.hpp"
#include "sifo/wire_label.hpp"

namespace sifo {

struct InputMismatchError : Error {
  using Error::Error;
};
struct DecodeError : Error {
  using Error::Error;
};

// Three ciphertexts per AND gate. The row whose input select bits are (0,0)
// is defined to be all zero and is not stored; the remaining rows sit at
// index 2*s0 + s1 - 1.
struct GarbledAndTable {
  std::array<WireLabel, 3> rows;

  friend bool operator==(const GarbledAndTable&, const GarbledAndTable&) = default;
};

// H(ka || kb || gate_id), truncated to label width. The message is the two
// 10-byte labels followed by the gate id as 8 big-endian bytes; the label is
// the first 10 digest bytes.
WireLabel hash_gate(const WireLabel& ka, const WireLabel& kb, std::uint64_t gate_id);

struct AndGarbling {
  WireLabel out_label0;
  GarbledAndTable table;
};

AndGarbling garble_and(std::uint64_t gate_id, const WireLabel& in0_label0,
                       const WireLabel& in1_label0, const GlobalDelta& delta);

WireLabel evaluate_and(std::uint64_t gate_id, const WireLabel& in0_active,
                       const WireLabel& in1_active, const GarbledAndTable& table);

using LabelPair = std::pair<WireLabel, WireLabel>;  // labels for 0 and 1
using Assignment = std::map<WireId, bool>;
using ActiveLabels = std::map<WireId, WireLabel>;
using AndTables = std::map<GateId, GarbledAndTable>;

struct GarbledCircuit {
  std::optional<GlobalDelta> delta;  // garbler secret; absent on loaded circuits
  std::map<WireId, LabelPair> input_labels;
  std::optional<std::pair<WireId, WireLabel>> const_label;  // 0-label of the constant wire
  AndTables and_tables;
  std::map<WireId, LabelPair> output_decode;

  std::uint64_t ciphertext_bits() const {
    return std::uint64_t(and_tables.size()) * 3 * kLabelBits;
  }
};

// Draws delta and one 0-label per input wire (ascending wire id, constant
// wire included), then garbles gates in file order. Pure function of
// (circuit, seed). XOR gates cost nothing; AND gates get one table each.
GarbledCircuit garble_circuit(const Circuit& c, std::uint64_t seed);

// Assignment must cover the declared inputs exactly. The constant wire's
// 0-label is added to the result automatically.
ActiveLabels encode_inputs(const GarbledCircuit& gc, const Assignment& values);

// Takes only the tables and active input labels, never the label pairs.
ActiveLabels evaluate_circuit(const Circuit& c, const AndTables& tables,
                              const ActiveLabels& active_inputs);

Assignment decode_outputs(const GarbledCircuit& gc, const ActiveLabels& active_outputs);

// Plain boolean evaluation; same input contract as encode_inputs.
Assignment cleartext_evaluate(const Circuit& c, const Assignment& values);

}  // namespace sifo
