#include "sifo/trace.hpp"

#include <cstring>
#include <fstream>

#include "sifo/gc_io.hpp"

namespace sifo {
namespace {

constexpr char kMagic[8] = {'S', 'I', 'F', 'O', 'T', 'R', '1', '\0'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(std::uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(std::uint8_t(v >> (8 * i)));
}

struct Reader {
  const std::vector<std::uint8_t>& data;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > data.size()) throw ContainerError("truncated trace");
  }
  std::uint8_t u8() {
    need(1);
    return data[pos++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data[pos++];
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | data[pos++];
    return v;
  }
};

}  // namespace

DispatchTrace build_trace(const Circuit& circuit, const Schedule& schedule,
                          const MemoryMap& map) {
  if (map.by_slot.size() != circuit.slot_count()) {
    throw ConfigError("memory map does not cover the circuit");
  }
  DispatchTrace trace;
  trace.n_and_cells = schedule.n_and_cells;
  trace.n_xor_cells = schedule.n_xor_cells;
  auto push = [&](const GateSlot& gs, TraceRecord::Kind kind) {
    if (gs.cell > 0xff) throw ConfigError("cell index does not fit a byte");
    const Gate& g = circuit.gates[gs.gate];
    TraceRecord rec;
    rec.kind = kind;
    rec.cell = std::uint8_t(gs.cell);
    rec.addrs = pack_addresses(map.of(circuit, g.in0), map.of(circuit, g.in1),
                               map.of(circuit, g.out));
    trace.records.push_back(rec);
  };
  for (const LayerPlan& plan : schedule.layers) {
    for (const GateSlot& gs : plan.xor_stream) push(gs, TraceRecord::Xor);
    for (const auto& batch : plan.and_batches) {
      for (const GateSlot& gs : batch) push(gs, TraceRecord::And);
    }
    trace.records.push_back(TraceRecord{TraceRecord::LayerEnd, 0, {}});
  }
  return trace;
}

std::vector<std::uint8_t> trace_to_bytes(const DispatchTrace& trace) {
  std::vector<std::uint8_t> out;
  out.reserve(24 + trace.records.size() * 10);
  out.insert(out.end(), kMagic, kMagic + 8);
  put_u32(out, trace.n_and_cells);
  put_u32(out, trace.n_xor_cells);
  put_u64(out, trace.records.size());
  for (const TraceRecord& rec : trace.records) {
    out.push_back(rec.kind);
    if (rec.kind == TraceRecord::LayerEnd) continue;
    out.push_back(rec.cell);
    put_u32(out, rec.addrs.reg0);
    put_u32(out, rec.addrs.reg1);
  }
  return out;
}

DispatchTrace trace_from_bytes(const std::vector<std::uint8_t>& bytes) {
  Reader r{bytes};
  r.need(8);
  if (std::memcmp(bytes.data(), kMagic, 8) != 0) {
    throw ContainerError("bad trace magic");
  }
  r.pos = 8;
  DispatchTrace trace;
  trace.n_and_cells = r.u32();
  trace.n_xor_cells = r.u32();
  std::uint64_t count = r.u64();
  trace.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TraceRecord rec;
    std::uint8_t kind = r.u8();
    if (kind > TraceRecord::LayerEnd) throw ContainerError("bad record kind");
    rec.kind = TraceRecord::Kind(kind);
    if (rec.kind != TraceRecord::LayerEnd) {
      rec.cell = r.u8();
      rec.addrs.reg0 = r.u32();
      rec.addrs.reg1 = r.u32();
    }
    trace.records.push_back(rec);
  }
  if (r.pos != bytes.size()) throw ContainerError("trailing bytes in trace");
  return trace;
}

void save_trace(const DispatchTrace& trace, const std::string& path) {
  auto bytes = trace_to_bytes(trace);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContainerError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw ContainerError("write failed: " + path);
}

DispatchTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContainerError("cannot open " + path);
  std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  return trace_from_bytes(bytes);
}

}  // namespace sifo
