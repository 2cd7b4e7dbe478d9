#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sifo/analysis.hpp"
#include "sifo/garble.hpp"
#include "sifo/gc_io.hpp"
#include "sifo/genlib.hpp"
#include "sifo/layering.hpp"
#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"
#include "sifo/schedule.hpp"
#include "sifo/sim.hpp"
#include "sifo/trace.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct InputSource {
  std::string path;
  std::string kind;
  std::uint32_t width = 0;
  std::uint32_t count = 0;
  std::uint32_t dim = 0;

  bool has_spec() const { return !kind.empty(); }

  sifo::ProblemSpec spec() const {
    sifo::ProblemSpec s;
    s.kind = sifo::kind_from_string(kind);
    s.width = width;
    s.count = count;
    s.dim = dim;
    return s;
  }

  void validate() const {
    if (path.empty() == !has_spec()) {
      throw sifo::ConfigError(
          "give exactly one input: a netlist path or --kind with its sizes");
    }
  }

  sifo::Circuit circuit() const {
    validate();
    if (has_spec()) return sifo::generate(spec());
    return sifo::load_netlist(path);
  }

  std::string name() const {
    if (has_spec()) return sifo::display_name(spec());
    return std::filesystem::path(path).filename().string();
  }

  nlohmann::json json() const {
    if (has_spec()) {
      nlohmann::json j{{"kind", kind}};
      if (width) j["width"] = width;
      if (count) j["count"] = count;
      if (dim) j["dim"] = dim;
      return j;
    }
    return {{"path", path}};
  }
};

void add_input_flags(CLI::App* cmd, InputSource& in, bool allow_path = true) {
  if (allow_path) {
    cmd->add_option("input", in.path, "netlist (.gcn) path");
  }
  cmd->add_option("--kind", in.kind,
                  "generate instead of reading a file: "
                  "adder|multiplier|hamming|sorter|matmul");
  cmd->add_option("--width", in.width, "bit width per value");
  cmd->add_option("--count", in.count, "sorter: number of values");
  cmd->add_option("--dim", in.dim, "matmul: matrix dimension");
}

std::uint64_t parse_seed(const std::string& s) {
  if (s == "random") {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) | rd();
  }
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw sifo::ConfigError("seed must be a non-negative integer or 'random'");
  }
}

void add_timing_flags(CLI::App* cmd, sifo::TimingParams& p) {
  cmd->add_option("--local-clock-hz", p.local_clock_hz, "overlay clock");
  cmd->add_option("--main-clock-hz", p.main_clock_hz, "interface clock");
  cmd->add_option("--gand-cycles", p.gand_latency_cycles, "AND cell latency");
  cmd->add_option("--gxor-cycles", p.gxor_latency_cycles, "XOR cell latency");
  cmd->add_option("--bram-cycles", p.bram_access_cycles, "BRAM access cycles");
  cmd->add_option("--ddr-latency-ns", p.ddr_latency_ns, "DDR transaction ns");
  cmd->add_option("--reg-write-ns", p.reg_write_ns, "host register write ns");
  cmd->add_option("--ddr-word-bits", p.ddr_word_bits, "DDR word width");
  cmd->add_option("--ddr-ports", p.ddr_ports, "parallel DDR ports");
}

std::pair<std::uint32_t, std::uint32_t> parse_cells(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) {
      std::uint32_t n = std::uint32_t(std::stoul(s));
      return {n, n};
    }
    return {std::uint32_t(std::stoul(s.substr(0, comma))),
            std::uint32_t(std::stoul(s.substr(comma + 1)))};
  } catch (const std::exception&) {
    throw sifo::ConfigError("--cells expects A,X (e.g. 10,10)");
  }
}

nlohmann::json timing_json(const sifo::TimingParams& p) {
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

void maybe_print_config(bool enabled, nlohmann::json config) {
  if (enabled) std::cout << config.dump(2) << "\n";
}

int cmd_gen(const InputSource& in, const std::string& out_path,
            bool print_config) {
  sifo::ProblemSpec spec = in.spec();
  maybe_print_config(print_config, {{"subcommand", "gen"},
                                    {"input", in.json()},
                                    {"out", out_path}});
  sifo::Circuit c = sifo::generate(spec);
  std::string text = sifo::write_netlist(c, sifo::gen_comment(spec));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw sifo::ConfigError("cannot open " + out_path);
    out << text;
  }
  return 0;
}

int cmd_stats(const InputSource& in, const std::string& format,
              bool print_config) {
  maybe_print_config(print_config, {{"subcommand", "stats"},
                                    {"input", in.json()},
                                    {"format", format}});
  sifo::Circuit c = in.circuit();
  std::cout << sifo::stats_report(c, in.name(),
                                  sifo::format_from_string(format));
  return 0;
}

int cmd_verify(const InputSource& in, const std::string& seed_text,
               std::uint64_t trials, const std::string& garbled_path,
               bool print_config) {
  std::uint64_t seed = parse_seed(seed_text);
  maybe_print_config(print_config, {{"subcommand", "verify"},
                                    {"input", in.json()},
                                    {"seed", seed},
                                    {"trials", trials},
                                    {"garbled", garbled_path}});
  sifo::Circuit c = in.circuit();
  sifo::GarbledCircuit gc = garbled_path.empty()
                                ? sifo::garble_circuit(c, seed)
                                : sifo::load_garbled(garbled_path);

  std::uint64_t n_bits = c.inputs.size();
  bool exhaustive = n_bits <= 20;
  std::uint64_t n_trials = exhaustive ? (std::uint64_t(1) << n_bits) : trials;
  std::mt19937_64 rng(seed ^ 0x76657269667921ULL);

  std::uint64_t passed = 0;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    sifo::Assignment values;
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
      bool bit = exhaustive ? ((t >> i) & 1) : (rng() & 1);
      values[c.inputs[i]] = bit;
    }
    sifo::ActiveLabels active = sifo::encode_inputs(gc, values);
    sifo::ActiveLabels outs = sifo::evaluate_circuit(c, gc.and_tables, active);
    sifo::Assignment decoded = sifo::decode_outputs(gc, outs);
    if (decoded == sifo::cleartext_evaluate(c, values)) ++passed;
  }
  std::cout << "verify " << in.name() << ": " << passed << "/" << n_trials
            << (exhaustive ? " (exhaustive)" : " (random)") << " pass\n";
  return passed == n_trials ? 0 : 1;
}

int cmd_garble(const InputSource& in, const std::string& seed_text,
               const std::string& out_path, bool as_json, bool print_config) {
  std::uint64_t seed = parse_seed(seed_text);
  maybe_print_config(print_config, {{"subcommand", "garble"},
                                    {"input", in.json()},
                                    {"seed", seed},
                                    {"out", out_path},
                                    {"json", as_json}});
  sifo::Circuit c = in.circuit();
  sifo::GarbledCircuit gc = sifo::garble_circuit(c, seed);
  if (as_json) {
    std::string text = sifo::garbled_json(gc).dump(2);
    if (out_path.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream out(out_path);
      if (!out) throw sifo::ConfigError("cannot open " + out_path);
      out << text << "\n";
    }
  } else {
    if (out_path.empty()) {
      throw sifo::ConfigError("binary garble output needs -o PATH");
    }
    sifo::save_garbled(gc, out_path);
  }
  std::cerr << "garbled " << in.name() << ": " << gc.and_tables.size()
            << " AND tables, " << gc.ciphertext_bits() << " ciphertext bits\n";
  return 0;
}

int cmd_simulate(const InputSource& in, sifo::TimingParams params,
                 const std::string& cells, const std::string& policy,
                 bool overlap, bool xor_nosync, bool packed,
                 const std::string& sweep, const std::string& format,
                 const std::string& trace_out, bool print_config) {
  auto [n_and, n_xor] = parse_cells(cells);
  params.n_and_cells = n_and;
  params.n_xor_cells = n_xor;
  sifo::SimOptions options;
  options.overlap_comm_compute = overlap;
  options.xor_nosync = xor_nosync;
  options.packed_addresses = packed;
  options.policy = sifo::policy_from_string(policy);
  maybe_print_config(print_config,
                     {{"subcommand", "simulate"},
                      {"input", in.json()},
                      {"params", timing_json(params)},
                      {"policy", policy},
                      {"overlap", overlap},
                      {"xor_nosync", xor_nosync},
                      {"packed", packed},
                      {"sweep", sweep},
                      {"format", format}});
  sifo::Circuit c = in.circuit();

  if (!sweep.empty()) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> points;
    std::stringstream ss(sweep);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::uint32_t n = std::uint32_t(std::stoul(tok));
        points.emplace_back(n, n);
      } catch (const std::exception&) {
        throw sifo::ConfigError("--sweep-cells expects e.g. 5,10,15");
      }
    }
    std::cout << sifo::sweep_csv(sifo::sweep_cells(c, params, options, points));
    return 0;
  }

  sifo::Layering layering = sifo::extract_layers(c);
  sifo::Schedule schedule =
      sifo::make_schedule(c, layering, params.n_and_cells, params.n_xor_cells);
  sifo::MemoryMap map = sifo::allocate(c, layering, options.policy);
  if (!trace_out.empty()) {
    sifo::save_trace(sifo::build_trace(c, schedule, map), trace_out);
  }
  sifo::SimReport report = sifo::simulate(c, schedule, map, params, options);
  switch (sifo::format_from_string(format)) {
    case sifo::ReportFormat::Json:
      std::cout << sifo::sim_report_json(report) << "\n";
      break;
    case sifo::ReportFormat::Csv: {
      std::vector<sifo::SweepPoint> one{
          {params.n_and_cells, params.n_xor_cells, report}};
      std::cout << sifo::sweep_csv(one);
      break;
    }
    case sifo::ReportFormat::Table:
      std::cout << sifo::sim_report_text(report);
      break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"garbled-circuit engine and FPGA-overlay scheduling toolchain"};
  app.require_subcommand(1);

  InputSource gen_in, stats_in, verify_in, garble_in, sim_in;
  std::string gen_out;
  std::string stats_format = "table", sim_format = "table";
  std::string verify_seed = std::to_string(kDefaultSeed);
  std::string garble_seed = std::to_string(kDefaultSeed);
  std::uint64_t trials = 1000;
  std::string garbled_path, garble_out;
  bool garble_json = false;
  bool print_config = false;
  sifo::TimingParams params;
  std::string cells = "10,10", policy = "all-ddr", sweep, trace_out;
  bool overlap = true, xor_nosync = false, packed = false;

  app.add_flag("--print-config", print_config,
               "dump the effective run configuration as JSON");

  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark netlist");
  add_input_flags(gen, gen_in, false);
  gen->add_option("-o,--out", gen_out, "output .gcn path (default stdout)");

  CLI::App* stats = app.add_subcommand("stats", "circuit statistics tables");
  add_input_flags(stats, stats_in);
  stats->add_option("--format", stats_format, "table|csv|json");

  CLI::App* verify =
      app.add_subcommand("verify", "garbled round-trip vs cleartext oracle");
  add_input_flags(verify, verify_in);
  verify->add_option("--seed", verify_seed, "integer or 'random'");
  verify->add_option("--trials", trials, "random trials when inputs > 20 bits");
  verify->add_option("--garbled", garbled_path,
                     "verify an existing garbled container");

  CLI::App* garble = app.add_subcommand("garble", "garble to a binary container");
  add_input_flags(garble, garble_in);
  garble->add_option("--seed", garble_seed, "integer or 'random'");
  garble->add_option("-o,--out", garble_out, "output container path");
  garble->add_flag("--json", garble_json, "emit JSON debug form instead");

  CLI::App* simulate =
      app.add_subcommand("simulate", "overlay timing simulation");
  add_input_flags(simulate, sim_in);
  add_timing_flags(simulate, params);
  simulate->add_option("--cells", cells, "AND,XOR overlay cell counts");
  simulate->add_option("--policy", policy, "all-ddr|directly-used|mfu");
  simulate->add_flag("--overlap,!--no-overlap", overlap,
                     "overlap link transfers with computation");
  simulate->add_flag("--xor-nosync", xor_nosync,
                     "stream XOR layers without per-gate sync");
  simulate->add_flag("--packed", packed, "packed two-register addressing");
  simulate->add_option("--sweep-cells", sweep,
                       "simulate several cell counts, CSV output");
  simulate->add_option("--format", sim_format, "table|csv|json");
  simulate->add_option("--save-trace", trace_out,
                       "also write the binary dispatch trace");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_in, gen_out, print_config);
    if (stats->parsed()) return cmd_stats(stats_in, stats_format, print_config);
    if (verify->parsed()) {
      return cmd_verify(verify_in, verify_seed, trials, garbled_path,
                        print_config);
    }
    if (garble->parsed()) {
      return cmd_garble(garble_in, garble_seed, garble_out, garble_json,
                        print_config);
    }
    if (simulate->parsed()) {
      return cmd_simulate(sim_in, params, cells, policy, overlap, xor_nosync,
                          packed, sweep, sim_format, trace_out, print_config);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const sifo::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sifo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
