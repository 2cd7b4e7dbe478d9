#include "sifo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "sifo/layering.hpp"

namespace sifo {

void TimingParams::validate() const {
  if (local_clock_hz <= 0 || main_clock_hz <= 0 || gand_latency_cycles == 0 ||
      gxor_latency_cycles == 0 || bram_access_cycles == 0 ||
      ddr_latency_ns <= 0 || reg_write_ns <= 0 || ddr_word_bits == 0 ||
      ddr_ports == 0 || n_and_cells == 0 || n_xor_cells == 0) {
    throw ConfigError("timing parameters must be strictly positive");
  }
  if (ddr_word_bits < 80) {
    throw ConfigError("ddr_word_bits must hold at least one 80-bit label");
  }
}

namespace {

struct Job {
  bool is_and = false;
  std::uint32_t cell = 0;
  Placement in0, in1, out;
};

struct Engine {
  const TimingParams& p;
  const SimOptions& opt;
  SimReport rep;

  double link_free = 0;
  double barrier = 0;
  double last_sync_done = 0;
  std::vector<double> and_cell_free;
  std::vector<double> xor_cell_free;
  std::vector<double> port_free;
  std::unordered_set<std::uint32_t> live_bram;

  double bram_ns, and_ns, xor_ns, link_ns;

  Engine(const TimingParams& params, const SimOptions& options)
      : p(params), opt(options) {
    p.validate();
    and_cell_free.assign(p.n_and_cells, 0.0);
    xor_cell_free.assign(p.n_xor_cells, 0.0);
    port_free.assign(p.ddr_ports, 0.0);
    bram_ns = p.bram_access_cycles * p.local_period_ns();
    and_ns = p.gand_latency_cycles * p.local_period_ns();
    xor_ns = p.gxor_latency_cycles * p.local_period_ns();
    link_ns = (opt.packed_addresses ? 2 : 3) * p.reg_write_ns;
    rep.params = params;
    rep.options = options;
  }

  std::size_t pick_port() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < port_free.size(); ++i) {
      if (port_free[i] < port_free[best]) best = i;
    }
    return best;
  }

  void touch_read(const Placement& pl) {
    if (pl.bram) {
      ++rep.mem_read_bram;
      if (opt.policy == MemoryPolicy::DirectlyUsed) {
        live_bram.erase(pl.addr);
      } else if (live_bram.insert(pl.addr).second) {
        // read before any write: the slot was preloaded (e.g. an input)
        bump_peak();
      }
    } else {
      ++rep.mem_read_ddr;
    }
  }

  void touch_write(const Placement& pl) {
    if (pl.bram) {
      ++rep.mem_write_bram;
      if (live_bram.insert(pl.addr).second) bump_peak();
    } else {
      ++rep.mem_write_ddr;
    }
  }

  void bump_peak() {
    rep.peak_live_bram_slots =
        std::max<std::uint64_t>(rep.peak_live_bram_slots, live_bram.size());
  }

  double nominal_service(const Job& j) const {
    auto read_ns = [&](const Placement& pl) {
      return pl.bram ? bram_ns : p.ddr_latency_ns;
    };
    double reads = std::max(read_ns(j.in0), read_ns(j.in1));
    double compute = j.is_and ? and_ns : xor_ns;
    return reads + compute + read_ns(j.out);
  }

  // Returns this gate's completion time.
  double run_job(const Job& j) {
    double compute = j.is_and ? and_ns : xor_ns;
    rep.pcie_ns += link_ns;
    rep.compute_ns += compute;
    (j.is_and ? rep.n_ands : rep.n_xors) += 1;
    touch_read(j.in0);
    touch_read(j.in1);

    bool absorbed =
        opt.xor_nosync && !j.is_and && nominal_service(j) <= link_ns;
    double completion;
    if (absorbed) {
      double link_start = std::max(link_free, barrier);
      link_free = link_start + link_ns;
      completion = link_free + nominal_service(j);
    } else {
      double link_start =
          opt.overlap_comm_compute
              ? link_free
              : std::max({link_free, last_sync_done, barrier});
      link_free = link_start + link_ns;
      double& cell = j.is_and ? and_cell_free[j.cell] : xor_cell_free[j.cell];
      double start = std::max({link_free, cell, barrier});
      double reads_done = start;
      for (const Placement* pl : {&j.in0, &j.in1}) {
        if (pl->bram) {
          reads_done = std::max(reads_done, start + bram_ns);
        } else {
          std::size_t port = pick_port();
          double rs = std::max(start, port_free[port]);
          port_free[port] = rs + p.ddr_latency_ns;
          reads_done = std::max(reads_done, rs + p.ddr_latency_ns);
        }
      }
      double compute_end = reads_done + compute;
      if (j.out.bram) {
        completion = compute_end + bram_ns;
      } else {
        std::size_t port = pick_port();
        double ws = std::max(compute_end, port_free[port]);
        port_free[port] = ws + p.ddr_latency_ns;
        completion = ws + p.ddr_latency_ns;
      }
      cell = completion;
      last_sync_done = completion;
    }
    touch_write(j.out);
    return completion;
  }

  void run_layer(std::uint32_t layer_no, const std::vector<Job>& jobs) {
    LayerTiming lt;
    lt.layer = layer_no;
    lt.start_ns = barrier;
    double layer_max = barrier;
    for (const Job& j : jobs) {
      layer_max = std::max(layer_max, run_job(j));
      (j.is_and ? lt.ands : lt.xors) += 1;
    }
    barrier = layer_max;
    lt.end_ns = layer_max;
    rep.layers.push_back(lt);
    rep.total_ns = barrier;
  }
};

Job make_job(bool is_and, std::uint32_t cell, const Placement& in0,
             const Placement& in1, const Placement& out) {
  return Job{is_and, cell, in0, in1, out};
}

}  // namespace

SimReport simulate(const Circuit& circuit, const Schedule& schedule,
                   const MemoryMap& map, const TimingParams& params,
                   const SimOptions& options) {
  if (map.by_slot.size() != circuit.slot_count()) {
    throw ConfigError("memory map does not cover the circuit");
  }
  if (schedule.n_and_cells != params.n_and_cells ||
      schedule.n_xor_cells != params.n_xor_cells) {
    throw ConfigError("schedule cell counts disagree with timing parameters");
  }
  std::vector<bool> seen(circuit.gates.size(), false);
  std::uint64_t scheduled = 0;
  auto check = [&](const GateSlot& gs) {
    if (gs.gate >= circuit.gates.size() || seen[gs.gate]) {
      throw ConfigError("schedule does not cover the circuit");
    }
    seen[gs.gate] = true;
    ++scheduled;
  };
  for (const LayerPlan& plan : schedule.layers) {
    for (const GateSlot& gs : plan.xor_stream) check(gs);
    for (const auto& batch : plan.and_batches) {
      for (const GateSlot& gs : batch) check(gs);
    }
  }
  if (scheduled != circuit.gates.size()) {
    throw ConfigError("schedule does not cover the circuit");
  }

  SimOptions opts = options;
  opts.policy = map.policy;
  Engine eng(params, opts);
  eng.rep.bram_capacity_labels = map.bram_capacity_labels;

  std::vector<Job> jobs;
  for (std::size_t li = 0; li < schedule.layers.size(); ++li) {
    const LayerPlan& plan = schedule.layers[li];
    jobs.clear();
    auto add = [&](const GateSlot& gs, bool is_and) {
      const Gate& g = circuit.gates[gs.gate];
      jobs.push_back(make_job(is_and, gs.cell, map.of(circuit, g.in0),
                              map.of(circuit, g.in1), map.of(circuit, g.out)));
    };
    for (const GateSlot& gs : plan.xor_stream) add(gs, false);
    for (const auto& batch : plan.and_batches) {
      for (const GateSlot& gs : batch) add(gs, true);
    }
    eng.run_layer(std::uint32_t(li + 1), jobs);
  }
  return eng.rep;
}

SimReport simulate_trace(const DispatchTrace& trace, const TimingParams& params,
                         const SimOptions& options) {
  TimingParams p = params;
  p.n_and_cells = trace.n_and_cells;
  p.n_xor_cells = trace.n_xor_cells;
  Engine eng(p, options);

  std::vector<Job> jobs;
  std::uint32_t layer_no = 1;
  for (const TraceRecord& rec : trace.records) {
    if (rec.kind == TraceRecord::LayerEnd) {
      eng.run_layer(layer_no++, jobs);
      jobs.clear();
      continue;
    }
    bool is_and = rec.kind == TraceRecord::And;
    if (rec.cell >= (is_and ? p.n_and_cells : p.n_xor_cells)) {
      throw ConfigError("trace cell index out of range");
    }
    auto pls = unpack_addresses(rec.addrs);
    jobs.push_back(make_job(is_and, rec.cell, pls[0], pls[1], pls[2]));
  }
  if (!jobs.empty()) eng.run_layer(layer_no, jobs);
  return eng.rep;
}

std::vector<PolicyRun> compare_policies(const Circuit& circuit,
                                        const TimingParams& params,
                                        SimOptions options) {
  Layering layering = extract_layers(circuit);
  Schedule schedule = make_schedule(circuit, layering, params.n_and_cells,
                                    params.n_xor_cells);
  std::vector<PolicyRun> runs;
  for (MemoryPolicy policy :
       {MemoryPolicy::AllDdr, MemoryPolicy::DirectlyUsed,
        MemoryPolicy::MostFrequentlyUsed}) {
    MemoryMap map = allocate(circuit, layering, policy);
    options.policy = policy;
    runs.push_back({policy, simulate(circuit, schedule, map, params, options)});
  }
  return runs;
}

std::vector<SweepPoint> sweep_cells(
    const Circuit& circuit, TimingParams params, const SimOptions& options,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& cell_counts) {
  if (cell_counts.empty()) throw ConfigError("empty cell sweep");
  Layering layering = extract_layers(circuit);
  MemoryMap map = allocate(circuit, layering, options.policy);
  std::vector<SweepPoint> points;
  for (auto [n_and, n_xor] : cell_counts) {
    params.n_and_cells = n_and;
    params.n_xor_cells = n_xor;
    Schedule schedule = make_schedule(circuit, layering, n_and, n_xor);
    points.push_back(
        {n_and, n_xor, simulate(circuit, schedule, map, params, options)});
  }
  return points;
}

namespace {

nlohmann::json params_json(const TimingParams& p) {
  return {{"local_clock_hz", p.local_clock_hz},
          {"main_clock_hz", p.main_clock_hz},
          {"gand_latency_cycles", p.gand_latency_cycles},
          {"gxor_latency_cycles", p.gxor_latency_cycles},
          {"bram_access_cycles", p.bram_access_cycles},
          {"ddr_latency_ns", p.ddr_latency_ns},
          {"reg_write_ns", p.reg_write_ns},
          {"ddr_word_bits", p.ddr_word_bits},
          {"ddr_ports", p.ddr_ports},
          {"n_and_cells", p.n_and_cells},
          {"n_xor_cells", p.n_xor_cells}};
}

nlohmann::json options_json(const SimOptions& o) {
  return {{"overlap_comm_compute", o.overlap_comm_compute},
          {"xor_nosync", o.xor_nosync},
          {"packed_addresses", o.packed_addresses},
          {"policy", policy_to_string(o.policy)}};
}

}  // namespace

std::string sim_report_json(const SimReport& r) {
  nlohmann::json j;
  j["total_ns"] = r.total_ns;
  j["pcie_ns"] = r.pcie_ns;
  j["compute_ns"] = r.compute_ns;
  j["mem_read_bram"] = r.mem_read_bram;
  j["mem_read_ddr"] = r.mem_read_ddr;
  j["mem_write_bram"] = r.mem_write_bram;
  j["mem_write_ddr"] = r.mem_write_ddr;
  j["peak_live_bram_slots"] = r.peak_live_bram_slots;
  j["bram_capacity_labels"] = r.bram_capacity_labels;
  j["n_ands"] = r.n_ands;
  j["n_xors"] = r.n_xors;
  j["params"] = params_json(r.params);
  j["options"] = options_json(r.options);
  auto& layers = j["layers"] = nlohmann::json::array();
  for (const LayerTiming& lt : r.layers) {
    layers.push_back({{"layer", lt.layer},
                      {"ands", lt.ands},
                      {"xors", lt.xors},
                      {"start_ns", lt.start_ns},
                      {"end_ns", lt.end_ns}});
  }
  return j.dump(2);
}

std::string sim_report_text(const SimReport& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << "total_ns             " << r.total_ns << "\n"
      << "pcie_ns              " << r.pcie_ns << "\n"
      << "compute_ns           " << r.compute_ns << "\n"
      << "gates                " << (r.n_ands + r.n_xors) << " (" << r.n_ands
      << " AND, " << r.n_xors << " XOR)\n"
      << "layers               " << r.layers.size() << "\n"
      << "mem reads  bram/ddr  " << r.mem_read_bram << " / " << r.mem_read_ddr
      << "\n"
      << "mem writes bram/ddr  " << r.mem_write_bram << " / "
      << r.mem_write_ddr << "\n"
      << "peak live bram slots " << r.peak_live_bram_slots << "\n"
      << "policy               " << policy_to_string(r.options.policy) << "\n"
      << "overlap/nosync/packed "
      << (r.options.overlap_comm_compute ? "on" : "off") << "/"
      << (r.options.xor_nosync ? "on" : "off") << "/"
      << (r.options.packed_addresses ? "on" : "off") << "\n"
      << "cells AND/XOR        " << r.params.n_and_cells << " / "
      << r.params.n_xor_cells << "\n";
  return out.str();
}

std::string policy_comparison_text(const std::vector<PolicyRun>& runs) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << "policy          total_ns        ddr_reads   ddr_writes  bram_peak\n";
  for (const PolicyRun& run : runs) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-15s %-15.1f %-11llu %-11llu %llu\n",
                  policy_to_string(run.policy).c_str(), run.report.total_ns,
                  (unsigned long long)run.report.mem_read_ddr,
                  (unsigned long long)run.report.mem_write_ddr,
                  (unsigned long long)run.report.peak_live_bram_slots);
    out << buf;
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << "n_and_cells,n_xor_cells,total_ns,pcie_ns,compute_ns\n";
  for (const SweepPoint& pt : points) {
    out << pt.n_and_cells << "," << pt.n_xor_cells << "," << pt.report.total_ns
        << "," << pt.report.pcie_ns << "," << pt.report.compute_ns << "\n";
  }
  return out.str();
}

}  // namespace sifo
