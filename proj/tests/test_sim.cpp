#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "sifo/gc_io.hpp"
#include "sifo/genlib.hpp"
#include "sifo/layering.hpp"
#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"
#include "sifo/packed_address.hpp"
#include "sifo/schedule.hpp"
#include "sifo/sim.hpp"
#include "sifo/trace.hpp"

using namespace sifo;

namespace {

SimReport run(const Circuit& c, MemoryPolicy policy, TimingParams p = {},
              SimOptions o = {}) {
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, p.n_and_cells, p.n_xor_cells);
  MemoryMap m = allocate(c, l, policy);
  o.policy = policy;
  return simulate(c, s, m, p, o);
}

Circuit one_and() { return parse_netlist("IN 0 1\nOUT 2\n0 AND 1 = 2\n"); }

Circuit wide_and_layer(std::uint32_t n) {
  std::string text = "IN";
  for (std::uint32_t i = 0; i < 2 * n; ++i) text += " " + std::to_string(i);
  text += "\nOUT";
  for (std::uint32_t i = 0; i < n; ++i) text += " " + std::to_string(2 * n + i);
  text += "\n";
  for (std::uint32_t i = 0; i < n; ++i) {
    text += std::to_string(2 * i) + " AND " + std::to_string(2 * i + 1) +
            " = " + std::to_string(2 * n + i) + "\n";
  }
  return parse_netlist(text);
}

// full xor reduction tree over 2^levels leaf inputs
Circuit xor_tree(std::uint32_t levels) {
  std::uint32_t n = 1u << levels;
  std::string text = "IN";
  for (std::uint32_t i = 0; i < n; ++i) text += " " + std::to_string(i);
  std::uint32_t next = n;
  std::vector<std::uint32_t> cur(n);
  for (std::uint32_t i = 0; i < n; ++i) cur[i] = i;
  std::string gates;
  while (cur.size() > 1) {
    std::vector<std::uint32_t> up;
    for (std::size_t i = 0; i + 1 < cur.size(); i += 2) {
      gates += std::to_string(cur[i]) + " XOR " + std::to_string(cur[i + 1]) +
               " = " + std::to_string(next) + "\n";
      up.push_back(next++);
    }
    cur = up;
  }
  text += "\nOUT " + std::to_string(cur[0]) + "\n";
  return parse_netlist(text + gates);
}

std::uint64_t ddr_accesses(const SimReport& r) {
  return r.mem_read_ddr + r.mem_write_ddr;
}

}  // namespace

TEST_CASE("gateless circuit takes no time") {
  Circuit c = parse_netlist("IN 0\nOUT 0\n");
  SimReport r = run(c, MemoryPolicy::AllDdr);
  CHECK(r.total_ns == 0);
  CHECK(r.pcie_ns == 0);
  CHECK(r.compute_ns == 0);
  CHECK(r.n_ands + r.n_xors == 0);
  CHECK(r.layers.empty());
}

TEST_CASE("frozen micro-case: one AND gate, all ddr, no overlap") {
  TimingParams p;
  SimOptions o;
  o.overlap_comm_compute = false;

  SimReport r = run(one_and(), MemoryPolicy::AllDdr, p, o);
  // 3 x 50 link, parallel 180 reads on two ports, 82 x 5 compute, 180 write
  CHECK(r.total_ns == 920.0);
  CHECK(r.pcie_ns == 150.0);
  CHECK(r.compute_ns == 410.0);

  o.packed_addresses = true;
  SimReport rp = run(one_and(), MemoryPolicy::AllDdr, p, o);
  // the link shrinks from 150 to 100, everything else shifts with it
  CHECK(rp.total_ns == 870.0);
  CHECK(rp.pcie_ns == 100.0);

  // one DDR port serializes the two operand reads: 180 more
  TimingParams one_port = p;
  one_port.ddr_ports = 1;
  SimReport r1 = run(one_and(), MemoryPolicy::AllDdr, one_port, o);
  CHECK(r1.total_ns == 870.0 + 180.0);
}

TEST_CASE("packed link cost is exactly two thirds") {
  TimingParams p;
  for (Circuit c : {gen_adder(6), gen_multiplier(8), gen_hamming(10),
                    gen_sorter(4, 3), gen_matmul(2, 2)}) {
    for (MemoryPolicy policy : {MemoryPolicy::AllDdr, MemoryPolicy::DirectlyUsed,
                                MemoryPolicy::MostFrequentlyUsed}) {
      SimOptions o;
      o.packed_addresses = false;
      SimReport plain = run(c, policy, p, o);
      o.packed_addresses = true;
      SimReport packed = run(c, policy, p, o);
      CHECK(packed.pcie_ns * 3 == plain.pcie_ns * 2);
    }
  }
}

TEST_CASE("per-gate work is conserved") {
  // 64 partial products plus 7 ripple rows of 8 five-gate full adders
  Circuit c = gen_multiplier(8);
  REQUIRE(c.gates.size() == 344);
  for (MemoryPolicy policy : {MemoryPolicy::AllDdr, MemoryPolicy::DirectlyUsed,
                              MemoryPolicy::MostFrequentlyUsed}) {
    SimReport r = run(c, policy);
    CHECK(r.n_ands == 120);
    CHECK(r.n_xors == 224);
    CHECK(r.mem_read_bram + r.mem_read_ddr == 2 * 344);
    CHECK(r.mem_write_bram + r.mem_write_ddr == 344);
    CHECK(r.pcie_ns == 344 * 150.0);
    CHECK(r.compute_ns == 120 * 410.0 + 224 * 5.0);
  }
}

TEST_CASE("memory access counts agree with the placement map") {
  Circuit c = gen_multiplier(8);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  MemoryMap m = allocate(c, l, MemoryPolicy::DirectlyUsed);

  std::uint64_t reads_bram = 0, writes_bram = 0;
  for (const Gate& g : c.gates) {
    reads_bram += m.of(c, g.in0).bram;
    reads_bram += m.of(c, g.in1).bram;
    writes_bram += m.of(c, g.out).bram;
  }
  SimReport r = simulate(c, s, m, TimingParams{}, SimOptions{});
  CHECK(r.mem_read_bram == reads_bram);
  CHECK(r.mem_write_bram == writes_bram);
  CHECK(r.mem_write_bram == m.bram_wires);  // every bram wire written once
}

TEST_CASE("overlap never hurts") {
  TimingParams p;
  for (Circuit c : {gen_adder(6), gen_multiplier(8), gen_hamming(10),
                    gen_sorter(4, 3)}) {
    for (MemoryPolicy policy : {MemoryPolicy::AllDdr,
                                MemoryPolicy::DirectlyUsed}) {
      for (bool packed : {false, true}) {
        SimOptions o;
        o.packed_addresses = packed;
        o.overlap_comm_compute = true;
        double with = run(c, policy, p, o).total_ns;
        o.overlap_comm_compute = false;
        double without = run(c, policy, p, o).total_ns;
        CHECK(with <= without);
      }
    }
  }
}

TEST_CASE("directly-used beats all-ddr on the adder") {
  auto runs = compare_policies(gen_adder(6), TimingParams{});
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].policy == MemoryPolicy::AllDdr);
  CHECK(runs[1].policy == MemoryPolicy::DirectlyUsed);
  CHECK(runs[2].policy == MemoryPolicy::MostFrequentlyUsed);
  CHECK(runs[1].report.total_ns <= runs[0].report.total_ns);
  CHECK(ddr_accesses(runs[1].report) < ddr_accesses(runs[0].report));
  // 12 bram wires, each written once and read once
  CHECK(ddr_accesses(runs[0].report) - ddr_accesses(runs[1].report) == 24);

  std::string table = policy_comparison_text(runs);
  CHECK(table.find("all-ddr") != std::string::npos);
  CHECK(table.find("directly-used") != std::string::npos);
  CHECK(table.find("mfu") != std::string::npos);
}

TEST_CASE("more cells never slow things down") {
  SimOptions o;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> steps = {
      {5, 5}, {10, 10}, {15, 15}};
  for (Circuit c : {gen_adder(6), gen_multiplier(8), gen_hamming(10)}) {
    for (MemoryPolicy policy : {MemoryPolicy::AllDdr,
                                MemoryPolicy::DirectlyUsed}) {
      o.policy = policy;
      auto pts = sweep_cells(c, TimingParams{}, o, steps);
      REQUIRE(pts.size() == 3);
      CHECK(pts[0].report.total_ns >= pts[1].report.total_ns);
      CHECK(pts[1].report.total_ns >= pts[2].report.total_ns);
    }
  }
  CHECK_THROWS_AS(sweep_cells(gen_adder(2), TimingParams{}, o, {}), ConfigError);
}

TEST_CASE("sweep csv") {
  SimOptions o;
  auto pts = sweep_cells(gen_adder(4), TimingParams{}, o, {{5, 5}, {10, 10}});
  std::string csv = sweep_csv(pts);
  CHECK(csv.rfind("n_and_cells,n_xor_cells,total_ns", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("xor streaming without sync never hurts and moves no extra data") {
  // the option targets the synchronized regime: absorbed gates ride the link
  // stream instead of waiting for the previous acknowledgement
  Circuit tree = xor_tree(4);
  TimingParams p;
  for (MemoryPolicy policy : {MemoryPolicy::AllDdr,
                              MemoryPolicy::DirectlyUsed}) {
    SimOptions o;
    o.overlap_comm_compute = false;
    o.xor_nosync = false;
    SimReport plain = run(tree, policy, p, o);
    o.xor_nosync = true;
    SimReport nosync = run(tree, policy, p, o);
    CHECK(nosync.total_ns <= plain.total_ns);
    CHECK(nosync.pcie_ns == plain.pcie_ns);
    CHECK(nosync.n_xors == plain.n_xors);
    CHECK(ddr_accesses(nosync) == ddr_accesses(plain));
  }

  // with every operand in ddr no xor fits inside its own link time, so the
  // option changes nothing at all
  SimOptions o;
  o.overlap_comm_compute = false;
  SimReport plain = run(tree, MemoryPolicy::AllDdr, p, o);
  o.xor_nosync = true;
  SimReport nosync = run(tree, MemoryPolicy::AllDdr, p, o);
  CHECK(nosync.total_ns == plain.total_ns);
}

TEST_CASE("frozen xor stream timing via a hand-built trace") {
  // ten independent xors, every operand in bram
  DispatchTrace t;
  t.n_and_cells = 10;
  t.n_xor_cells = 10;
  for (std::uint32_t i = 0; i < 10; ++i) {
    TraceRecord r;
    r.kind = TraceRecord::Xor;
    r.cell = std::uint8_t(i);
    r.addrs = pack_addresses(Placement{true, 2 * i}, Placement{true, 2 * i + 1},
                             Placement{true, 100 + i});
    t.records.push_back(r);
  }
  t.records.push_back(TraceRecord{TraceRecord::LayerEnd, 0, {}});

  TimingParams p;
  SimOptions o;
  o.overlap_comm_compute = false;
  o.policy = MemoryPolicy::MostFrequentlyUsed;

  // synchronized: each gate waits out the previous one: 10 x (150 + 15)
  SimReport sync = simulate_trace(t, p, o);
  CHECK(sync.total_ns == 1650.0);

  // streamed: links back to back, last gate lands at 1500 + 15
  o.xor_nosync = true;
  SimReport streamed = simulate_trace(t, p, o);
  CHECK(streamed.total_ns == 1515.0);

  // bram traffic identical either way
  CHECK(sync.mem_read_bram == 20);
  CHECK(sync.mem_write_bram == 10);
  CHECK(streamed.mem_read_bram == 20);
  // reads of never-written slots count as preloads under this policy
  CHECK(sync.peak_live_bram_slots == 30);

  // ping-pong reads consume their slot instead
  SimOptions du = o;
  du.xor_nosync = false;
  du.policy = MemoryPolicy::DirectlyUsed;
  CHECK(simulate_trace(t, p, du).peak_live_bram_slots == 10);
}

TEST_CASE("all-bram single gate timing") {
  DispatchTrace t;
  t.n_and_cells = 10;
  t.n_xor_cells = 10;
  TraceRecord r;
  r.kind = TraceRecord::And;
  r.cell = 0;
  r.addrs = pack_addresses(Placement{true, 0}, Placement{true, 1},
                           Placement{true, 2});
  t.records.push_back(r);
  t.records.push_back(TraceRecord{TraceRecord::LayerEnd, 0, {}});

  TimingParams p;
  SimOptions o;
  o.overlap_comm_compute = false;
  o.policy = MemoryPolicy::MostFrequentlyUsed;
  // 150 link + 5 read + 410 compute + 5 write
  CHECK(simulate_trace(t, p, o).total_ns == 570.0);
}

TEST_CASE("peak live bram slots stay within capacity") {
  Circuit c = gen_multiplier(8);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);

  MemoryMap du = allocate_directly_used(c, l, 16);
  SimReport r1 = simulate(c, s, du, TimingParams{}, SimOptions{});
  CHECK(r1.peak_live_bram_slots <= 16);
  CHECK(r1.bram_capacity_labels == 16);

  MemoryMap mfu = allocate_mfu(c, 100);
  SimReport r2 = simulate(c, s, mfu, TimingParams{}, SimOptions{});
  CHECK(r2.peak_live_bram_slots <= 100);

  MemoryMap ddr = allocate_all_ddr(c);
  SimReport r3 = simulate(c, s, ddr, TimingParams{}, SimOptions{});
  CHECK(r3.peak_live_bram_slots == 0);
}

TEST_CASE("layer timings tile the run") {
  Circuit c = gen_multiplier(8);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  MemoryMap m = allocate(c, l, MemoryPolicy::AllDdr);
  SimReport r = simulate(c, s, m, TimingParams{}, SimOptions{});

  REQUIRE(r.layers.size() == l.layers.size());
  for (std::size_t i = 0; i < r.layers.size(); ++i) {
    const LayerTiming& lt = r.layers[i];
    CHECK(lt.layer == i + 1);
    CHECK(lt.ands + lt.xors == l.layers[i].size());
    CHECK(lt.start_ns <= lt.end_ns);
    if (i > 0) CHECK(lt.start_ns == r.layers[i - 1].end_ns);
  }
  CHECK(r.layers.back().end_ns == r.total_ns);
}

TEST_CASE("the report echoes the effective configuration") {
  Circuit c = gen_adder(4);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  MemoryMap m = allocate(c, l, MemoryPolicy::DirectlyUsed);
  SimOptions o;
  o.policy = MemoryPolicy::AllDdr;  // wrong on purpose: the map wins
  SimReport r = simulate(c, s, m, TimingParams{}, o);
  CHECK(r.options.policy == MemoryPolicy::DirectlyUsed);
  CHECK(r.params.n_and_cells == 10);
  CHECK(r.bram_capacity_labels == m.bram_capacity_labels);
}

TEST_CASE("simulation is deterministic") {
  Circuit c = gen_multiplier(8);
  TimingParams p;
  SimOptions o;
  o.packed_addresses = true;
  o.xor_nosync = true;
  std::string a = sim_report_json(run(c, MemoryPolicy::DirectlyUsed, p, o));
  std::string b = sim_report_json(run(c, MemoryPolicy::DirectlyUsed, p, o));
  CHECK(a == b);
  CHECK(sim_report_text(run(c, MemoryPolicy::DirectlyUsed, p, o)) ==
        sim_report_text(run(c, MemoryPolicy::DirectlyUsed, p, o)));
}

TEST_CASE("trace round trip") {
  Circuit c = gen_multiplier(4);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  MemoryMap m = allocate(c, l, MemoryPolicy::DirectlyUsed);
  DispatchTrace t = build_trace(c, s, m);

  // one barrier per layer plus one record per gate
  std::uint64_t barriers = 0, gates = 0;
  for (const TraceRecord& rec : t.records) {
    (rec.kind == TraceRecord::LayerEnd ? barriers : gates) += 1;
  }
  CHECK(barriers == l.layers.size());
  CHECK(gates == c.gates.size());

  std::vector<std::uint8_t> bytes = trace_to_bytes(t);
  DispatchTrace back = trace_from_bytes(bytes);
  CHECK(back.n_and_cells == t.n_and_cells);
  CHECK(back.n_xor_cells == t.n_xor_cells);
  REQUIRE(back.records.size() == t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    CHECK(back.records[i].kind == t.records[i].kind);
    CHECK(back.records[i].cell == t.records[i].cell);
    CHECK(back.records[i].addrs == t.records[i].addrs);
  }

  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "sifo_trace_test.bin";
  save_trace(t, path.string());
  DispatchTrace loaded = load_trace(path.string());
  CHECK(trace_to_bytes(loaded) == bytes);
  fs::remove(path);
}

TEST_CASE("corrupt traces are rejected") {
  Circuit c = gen_adder(2);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  DispatchTrace t = build_trace(c, s, allocate_all_ddr(c));
  std::vector<std::uint8_t> bytes = trace_to_bytes(t);

  auto truncated = bytes;
  truncated.resize(bytes.size() / 2);
  CHECK_THROWS_AS(trace_from_bytes(truncated), ContainerError);

  auto bad_magic = bytes;
  bad_magic[1] ^= 0xFF;
  CHECK_THROWS_AS(trace_from_bytes(bad_magic), ContainerError);

  auto bad_kind = bytes;
  bad_kind[24] = 7;  // first record byte after the fixed header
  CHECK_THROWS_AS(trace_from_bytes(bad_kind), ContainerError);

  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(trace_from_bytes(trailing), ContainerError);

  CHECK_THROWS_AS(load_trace("/nonexistent/trace.bin"), ContainerError);
}

TEST_CASE("trace-driven simulation matches the in-memory run") {
  Circuit c = gen_multiplier(4);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  TimingParams p;
  for (MemoryPolicy policy : {MemoryPolicy::AllDdr, MemoryPolicy::DirectlyUsed,
                              MemoryPolicy::MostFrequentlyUsed}) {
    MemoryMap m = allocate(c, l, policy);
    for (bool overlap : {false, true}) {
      for (bool nosync : {false, true}) {
        SimOptions o;
        o.overlap_comm_compute = overlap;
        o.xor_nosync = nosync;
        o.policy = policy;
        SimReport direct = simulate(c, s, m, p, o);
        SimReport traced = simulate_trace(build_trace(c, s, m), p, o);
        CHECK(traced.total_ns == direct.total_ns);
        CHECK(traced.pcie_ns == direct.pcie_ns);
        CHECK(traced.compute_ns == direct.compute_ns);
        CHECK(traced.mem_read_bram == direct.mem_read_bram);
        CHECK(traced.mem_read_ddr == direct.mem_read_ddr);
        CHECK(traced.mem_write_bram == direct.mem_write_bram);
        CHECK(traced.mem_write_ddr == direct.mem_write_ddr);
        CHECK(traced.peak_live_bram_slots == direct.peak_live_bram_slots);
        CHECK(traced.n_ands == direct.n_ands);
        CHECK(traced.n_xors == direct.n_xors);
        CHECK(traced.layers.size() == direct.layers.size());
      }
    }
  }
}

TEST_CASE("configuration mismatches are rejected") {
  Circuit c = gen_adder(4);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 10, 10);
  MemoryMap m = allocate_all_ddr(c);
  TimingParams p;

  // schedule built for different cell counts
  Schedule s5 = make_schedule(c, l, 5, 5);
  CHECK_THROWS_AS(simulate(c, s5, m, p, SimOptions{}), ConfigError);

  // memory map of a different circuit
  Circuit other = gen_multiplier(4);
  MemoryMap mo = allocate_all_ddr(other);
  CHECK_THROWS_AS(simulate(c, s, mo, p, SimOptions{}), ConfigError);

  // schedule that lost a gate
  Schedule missing = s;
  for (auto it = missing.layers.rbegin(); it != missing.layers.rend(); ++it) {
    if (!it->and_batches.empty()) {
      it->and_batches.back().pop_back();
      break;
    }
  }
  CHECK_THROWS_AS(simulate(c, missing, m, p, SimOptions{}), ConfigError);

  // schedule that lists a gate twice
  Schedule doubled = s;
  doubled.layers[0].xor_stream.push_back(doubled.layers[0].xor_stream[0]);
  CHECK_THROWS_AS(simulate(c, doubled, m, p, SimOptions{}), ConfigError);

  // nonsense timing parameters
  TimingParams bad = p;
  bad.ddr_word_bits = 64;
  CHECK_THROWS_AS(simulate(c, s, m, bad, SimOptions{}), ConfigError);
  bad = p;
  bad.gxor_latency_cycles = 0;
  CHECK_THROWS_AS(simulate(c, s, m, bad, SimOptions{}), ConfigError);
  bad = p;
  bad.ddr_ports = 0;
  CHECK_THROWS_AS(simulate(c, s, m, bad, SimOptions{}), ConfigError);

  // trace with an impossible cell index
  DispatchTrace t;
  t.n_and_cells = 2;
  t.n_xor_cells = 2;
  TraceRecord r;
  r.kind = TraceRecord::And;
  r.cell = 5;
  t.records.push_back(r);
  CHECK_THROWS_AS(simulate_trace(t, p, SimOptions{}), ConfigError);

  // trace header with zero cells
  DispatchTrace t0;
  t0.n_and_cells = 0;
  t0.n_xor_cells = 2;
  CHECK_THROWS_AS(simulate_trace(t0, p, SimOptions{}), ConfigError);
}

TEST_CASE("cell indexes wider than a byte cannot be traced") {
  Circuit c = wide_and_layer(300);
  Layering l = extract_layers(c);
  Schedule s = make_schedule(c, l, 300, 10);
  MemoryMap m = allocate_all_ddr(c);
  CHECK_THROWS_AS(build_trace(c, s, m), ConfigError);
  // the simulator itself has no byte limit
  TimingParams p;
  p.n_and_cells = 300;
  CHECK_NOTHROW(simulate(c, s, m, p, SimOptions{}));
}
