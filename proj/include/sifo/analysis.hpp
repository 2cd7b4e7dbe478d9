#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sifo/layering.hpp"
#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"

namespace sifo {

class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

struct GateStats {
  std::uint32_t layers = 0;
  std::uint64_t inputs = 0;
  std::uint64_t outputs = 0;
  std::uint64_t ands = 0;
  std::uint64_t xors = 0;
  std::uint64_t gates = 0;
  std::uint64_t reprogram10 = 0;
};

GateStats gate_stats(const Circuit& circuit, const Layering& layering);

struct WirePercent {
  double pct_one_to_one = 0;        // a_wires / total
  double pct_adjacent_of_a = 0;     // adjacent_a / a_wires
  double pct_adjacent_of_total = 0; // adjacent_a / total
};

WirePercent wire_percent(const WireStats& stats);  // total 0 -> error

inline constexpr std::uint32_t kBitsPerAndTable = 240;  // 3 rows x 80 bits

struct BandwidthEstimate {
  double gates_per_second = 0;
  double bits_per_second = 0;  // always gates_per_second * 240
};

BandwidthEstimate bandwidth(std::uint64_t n_ands, double garble_time_s);

// Reference characteristics bundled at build time. `exact` columns are ones
// our generators reproduce verbatim and are safe to assert on; `typo`
// columns carry a known-bad printed value; everything else is informational.
struct ReferenceRow {
  std::string name;
  std::map<std::string, double> values;
  std::set<std::string> exact;
  std::set<std::string> typo;
  std::string notes;
};

struct ThroughputRef {
  std::string name;
  std::uint64_t ands = 0;
  double microseconds = 0;
  double mgates_per_s = 0;
  double mbit_per_s = 0;
};

struct ReferenceTables {
  std::vector<ReferenceRow> gate_info;
  std::vector<ReferenceRow> wire_info;
  std::vector<ReferenceRow> wire_percent;
  std::vector<ThroughputRef> throughput;
};

const ReferenceTables& reference_tables();
const ReferenceRow* find_reference(const std::vector<ReferenceRow>& rows,
                                   const std::string& name);

enum class ReportFormat { Table, Csv, Json };
ReportFormat format_from_string(std::string_view s);  // throws ConfigError

// Computed stats for one circuit, with reference columns and match flags
// when `name` matches a bundled reference row.
std::string stats_report(const Circuit& circuit, const std::string& name,
                         ReportFormat format);

}  // namespace sifo
