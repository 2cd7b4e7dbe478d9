#include "sifo/gc_io.hpp"

#include <cstring>
#include <fstream>

namespace sifo {

namespace {

constexpr char kMagic[8] = {'S', 'I', 'F', 'O', 'G', 'C', '1', '\0'};

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (56 - 8 * i)));
}

void put_label(std::vector<std::uint8_t>& out, const WireLabel& l) {
  out.insert(out.end(), l.bytes.begin(), l.bytes.end());
}

struct Reader {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > data.size()) throw ContainerError("garbled container truncated");
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | data[pos++];
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return data[pos++];
  }
  WireLabel label() {
    need(kLabelBytes);
    WireLabel l;
    std::memcpy(l.bytes.data(), data.data() + pos, kLabelBytes);
    pos += kLabelBytes;
    return l;
  }
  WireId wire() {
    std::uint64_t v = u64();
    if (v > 0xFFFFFFFFull) throw ContainerError("wire id out of range in garbled container");
    return WireId(v);
  }
};

}  // namespace

std::vector<std::uint8_t> garbled_to_bytes(const GarbledCircuit& gc) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + 8 + gc.and_tables.size() * (8 + 3 * kLabelBytes) +
              (gc.input_labels.size() + gc.output_decode.size()) * (8 + 2 * kLabelBytes) + 64);
  out.insert(out.end(), kMagic, kMagic + 8);

  put_u64(out, gc.and_tables.size());
  for (const auto& [gate, table] : gc.and_tables) {
    put_u64(out, gate);
    for (const WireLabel& row : table.rows) put_label(out, row);
  }
  put_u64(out, gc.input_labels.size());
  for (const auto& [wire, pair] : gc.input_labels) {
    put_u64(out, wire);
    put_label(out, pair.first);
    put_label(out, pair.second);
  }
  put_u64(out, gc.output_decode.size());
  for (const auto& [wire, pair] : gc.output_decode) {
    put_u64(out, wire);
    put_label(out, pair.first);
    put_label(out, pair.second);
  }
  out.push_back(gc.const_label ? 1 : 0);
  if (gc.const_label) {
    put_u64(out, gc.const_label->first);
    put_label(out, gc.const_label->second);
  }
  return out;
}

GarbledCircuit garbled_from_bytes(std::span<const std::uint8_t> bytes) {
  Reader r{bytes};
  r.need(8);
  if (std::memcmp(bytes.data(), kMagic, 8) != 0)
    throw ContainerError("not a garbled circuit container (bad magic)");
  r.pos = 8;

  GarbledCircuit gc;
  std::uint64_t n_tables = r.u64();
  for (std::uint64_t i = 0; i < n_tables; ++i) {
    std::uint64_t gate = r.u64();
    if (gate > 0xFFFFFFFFull) throw ContainerError("gate id out of range in garbled container");
    GarbledAndTable t;
    for (WireLabel& row : t.rows) row = r.label();
    if (!gc.and_tables.emplace(GateId(gate), t).second)
      throw ContainerError("duplicate gate id in garbled container");
  }
  std::uint64_t n_inputs = r.u64();
  for (std::uint64_t i = 0; i < n_inputs; ++i) {
    WireId w = r.wire();
    WireLabel l0 = r.label();
    WireLabel l1 = r.label();
    if (!gc.input_labels.emplace(w, LabelPair{l0, l1}).second)
      throw ContainerError("duplicate input wire in garbled container");
  }
  std::uint64_t n_outputs = r.u64();
  for (std::uint64_t i = 0; i < n_outputs; ++i) {
    WireId w = r.wire();
    WireLabel l0 = r.label();
    WireLabel l1 = r.label();
    if (!gc.output_decode.emplace(w, LabelPair{l0, l1}).second)
      throw ContainerError("duplicate output wire in garbled container");
  }
  if (r.u8() != 0) {
    WireId w = r.wire();
    gc.const_label = {w, r.label()};
  }
  if (r.pos != bytes.size()) throw ContainerError("trailing bytes in garbled container");
  return gc;
}

void save_garbled(const GarbledCircuit& gc, const std::string& path) {
  auto bytes = garbled_to_bytes(gc);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open file for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!f) throw Error("failed writing garbled circuit to " + path);
}

GarbledCircuit load_garbled(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open garbled circuit file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return garbled_from_bytes(bytes);
}

nlohmann::json garbled_json(const GarbledCircuit& gc) {
  nlohmann::json j;
  auto tables = nlohmann::json::array();
  for (const auto& [gate, table] : gc.and_tables) {
    tables.push_back({{"gate", gate},
                      {"rows", {to_hex(table.rows[0]), to_hex(table.rows[1]),
                                to_hex(table.rows[2])}}});
  }
  j["and_tables"] = std::move(tables);
  auto ins = nlohmann::json::array();
  for (const auto& [wire, pair] : gc.input_labels)
    ins.push_back({{"wire", wire}, {"label0", to_hex(pair.first)}, {"label1", to_hex(pair.second)}});
  j["input_labels"] = std::move(ins);
  auto outs = nlohmann::json::array();
  for (const auto& [wire, pair] : gc.output_decode)
    outs.push_back({{"wire", wire}, {"label0", to_hex(pair.first)}, {"label1", to_hex(pair.second)}});
  j["output_decode"] = std::move(outs);
  if (gc.const_label)
    j["const_zero"] = {{"wire", gc.const_label->first}, {"label0", to_hex(gc.const_label->second)}};
  j["ciphertext_bits"] = gc.ciphertext_bits();
  return j;
}

}  // namespace sifo
