#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace sifo {

using WireId = std::uint32_t;
using GateId = std::uint32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

enum class GateOp : std::uint8_t { Xor, And };

struct Gate {
  WireId in0 = 0;
  WireId in1 = 0;
  WireId out = 0;
  GateOp op = GateOp::Xor;

  friend bool operator==(const Gate&, const Gate&) = default;
};

// A combinational circuit over a two-input AND/XOR basis. Gates are kept in
// file order, which is also a valid topological order (enforced by
// validation); GateId is the index into gates. An optional designated wire
// carries the public constant 0. It is not a declared input and does not
// count toward wire totals, but it may feed gates and is assigned a label and
// a memory slot like any other wire.
class Circuit {
 public:
  std::vector<WireId> inputs;             // declaration order
  std::vector<WireId> outputs;            // declaration order
  std::optional<WireId> const_zero;
  std::vector<Gate> gates;

  // inputs + gate outputs; the constant wire is deliberately not counted
  std::uint64_t wire_count() const { return inputs.size() + gates.size(); }

  // Checks structural invariants and builds the wire index. Throws
  // ValidationError (all problems joined) if anything is wrong.
  void finalize();

  // Dense wire numbering: inputs first (declaration order), then the
  // constant wire if present, then one slot per gate in file order.
  std::uint32_t slot_count() const { return std::uint32_t(wire_of_slot_.size()); }
  std::uint32_t slot(WireId w) const;
  const std::vector<WireId>& slot_wires() const { return wire_of_slot_; }

  // producing gate of a wire, or nullopt for inputs / the constant wire
  std::optional<GateId> producer(WireId w) const;

 private:
  std::unordered_map<WireId, std::uint32_t> slot_of_;
  std::vector<WireId> wire_of_slot_;
};

// Returns a list of human-readable structural problems, empty when valid.
std::vector<std::string> validate(const Circuit& c);

struct ParseOptions {
  // Infer missing IN/OUT declarations: inputs are wires never produced by a
  // gate (ascending id), outputs are gate outputs never consumed (file
  // order). Inference also kicks in without this flag when a file carries no
  // declarations at all.
  bool infer_io = false;
};

Circuit parse_netlist(std::string_view text, const ParseOptions& opt = {});
Circuit load_netlist(const std::string& path, const ParseOptions& opt = {});

// Text form: one IN line, optional CONST0 line, one OUT line, then gates.
// parse_netlist(write_netlist(c)) reproduces c exactly.
std::string write_netlist(const Circuit& c, std::string_view header_comment = {});
void save_netlist(const Circuit& c, const std::string& path,
                  std::string_view header_comment = {});

nlohmann::json netlist_json(const Circuit& c);

}  // namespace sifo
