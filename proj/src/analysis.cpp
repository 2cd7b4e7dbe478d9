#include "sifo/analysis.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sifo/schedule.hpp"

namespace sifo {

GateStats gate_stats(const Circuit& circuit, const Layering& layering) {
  GateStats s;
  s.layers = layering.depth;
  s.inputs = circuit.inputs.size();
  s.outputs = circuit.outputs.size();
  for (const Gate& g : circuit.gates) {
    (g.op == GateOp::And ? s.ands : s.xors) += 1;
  }
  s.gates = circuit.gates.size();
  s.reprogram10 = reprogram_count(circuit, 10);
  return s;
}

WirePercent wire_percent(const WireStats& stats) {
  if (stats.total == 0) {
    throw UndefinedRatioError("wire percentages need a nonempty circuit");
  }
  WirePercent p;
  p.pct_one_to_one = 100.0 * double(stats.a_wires) / double(stats.total);
  p.pct_adjacent_of_a =
      stats.a_wires == 0
          ? 0.0
          : 100.0 * double(stats.adjacent_a) / double(stats.a_wires);
  p.pct_adjacent_of_total =
      100.0 * double(stats.adjacent_a) / double(stats.total);
  return p;
}

BandwidthEstimate bandwidth(std::uint64_t n_ands, double garble_time_s) {
  if (garble_time_s <= 0) {
    throw ConfigError("garble time must be positive");
  }
  BandwidthEstimate e;
  e.gates_per_second = double(n_ands) / garble_time_s;
  e.bits_per_second = e.gates_per_second * kBitsPerAndTable;
  return e;
}

namespace {

const char* kEmbeddedReferenceJson =
#include "reference_tables.inc"
    ;

ReferenceRow parse_row(const nlohmann::json& j) {
  static const std::set<std::string> meta = {"name", "kind",  "width", "count",
                                             "dim",  "exact", "typo",  "notes"};
  ReferenceRow row;
  row.name = j.at("name").get<std::string>();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (meta.count(it.key())) continue;
    if (it.value().is_number()) row.values[it.key()] = it.value().get<double>();
  }
  if (j.contains("exact")) {
    for (const auto& e : j["exact"]) row.exact.insert(e.get<std::string>());
  }
  if (j.contains("typo")) {
    for (const auto& e : j["typo"]) row.typo.insert(e.get<std::string>());
  }
  if (j.contains("notes")) row.notes = j["notes"].get<std::string>();
  return row;
}

}  // namespace

const ReferenceTables& reference_tables() {
  static const ReferenceTables tables = [] {
    ReferenceTables t;
    nlohmann::json j = nlohmann::json::parse(kEmbeddedReferenceJson);
    for (const auto& row : j.at("gate_info")) {
      t.gate_info.push_back(parse_row(row));
    }
    for (const auto& row : j.at("wire_info")) {
      t.wire_info.push_back(parse_row(row));
    }
    for (const auto& row : j.at("wire_percent")) {
      t.wire_percent.push_back(parse_row(row));
    }
    for (const auto& row : j.at("throughput")) {
      ThroughputRef ref;
      ref.name = row.at("name").get<std::string>();
      ref.ands = row.at("ands").get<std::uint64_t>();
      ref.microseconds = row.at("microseconds").get<double>();
      ref.mgates_per_s = row.at("mgates_per_s").get<double>();
      ref.mbit_per_s = row.at("mbit_per_s").get<double>();
      t.throughput.push_back(ref);
    }
    return t;
  }();
  return tables;
}

const ReferenceRow* find_reference(const std::vector<ReferenceRow>& rows,
                                   const std::string& name) {
  for (const ReferenceRow& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

ReportFormat format_from_string(std::string_view s) {
  if (s == "table") return ReportFormat::Table;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ConfigError("unknown format: " + std::string(s));
}

namespace {

double round_to(double x, int digits) {
  double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

// The reference prints rounded figures at varying precision, so a computed
// value counts as matching when some standard rounding of it lands within
// 0.01 of the printed number.
bool value_matches(double computed, double ref) {
  for (double v : {computed, round_to(computed, 2), round_to(computed, 1)}) {
    if (std::abs(v - ref) <= 0.01 + 1e-9) return true;
  }
  return false;
}

struct Section {
  std::string title;
  // column name -> computed value, in fixed display order
  std::vector<std::pair<std::string, double>> computed;
  const ReferenceRow* ref = nullptr;
};

std::string fmt_value(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(std::int64_t(v));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string table_emit(const std::string& name,
                       const std::vector<Section>& sections) {
  std::ostringstream out;
  out << "circuit: " << name << "\n";
  for (const Section& sec : sections) {
    out << "\n[" << sec.title << "]\n";
    char buf[200];
    std::snprintf(buf, sizeof buf, "  %-22s %14s %14s %-6s %s\n", "column",
                  "computed", "reference", "prov", "match");
    out << buf;
    for (const auto& [col, val] : sec.computed) {
      std::string refv = "-", prov = "-", match = "-";
      if (sec.ref) {
        auto it = sec.ref->values.find(col);
        if (it != sec.ref->values.end()) {
          refv = fmt_value(it->second);
          prov = sec.ref->exact.count(col)  ? "exact"
                 : sec.ref->typo.count(col) ? "typo"
                                            : "info";
          match = value_matches(val, it->second) ? "ok" : "DIFF";
        }
      }
      std::snprintf(buf, sizeof buf, "  %-22s %14s %14s %-6s %s\n",
                    col.c_str(), fmt_value(val).c_str(), refv.c_str(),
                    prov.c_str(), match.c_str());
      out << buf;
    }
    if (sec.ref && !sec.ref->notes.empty()) {
      out << "  note: " << sec.ref->notes << "\n";
    }
  }
  return out.str();
}

std::string csv_emit(const std::string& name,
                     const std::vector<Section>& sections) {
  std::ostringstream out;
  out << "circuit,section,column,computed,reference,provenance,match\n";
  for (const Section& sec : sections) {
    for (const auto& [col, val] : sec.computed) {
      std::string refv, prov, match;
      if (sec.ref) {
        auto it = sec.ref->values.find(col);
        if (it != sec.ref->values.end()) {
          refv = fmt_value(it->second);
          prov = sec.ref->exact.count(col)  ? "exact"
                 : sec.ref->typo.count(col) ? "typo"
                                            : "info";
          match = value_matches(val, it->second) ? "ok" : "diff";
        }
      }
      out << name << "," << sec.title << "," << col << "," << fmt_value(val)
          << "," << refv << "," << prov << "," << match << "\n";
    }
  }
  return out.str();
}

std::string json_emit(const std::string& name,
                      const std::vector<Section>& sections) {
  nlohmann::json j;
  j["circuit"] = name;
  for (const Section& sec : sections) {
    nlohmann::json js;
    auto& computed = js["computed"];
    for (const auto& [col, val] : sec.computed) computed[col] = val;
    if (sec.ref) {
      nlohmann::json jr;
      for (const auto& [col, val] : sec.ref->values) jr["values"][col] = val;
      jr["exact"] = sec.ref->exact;
      jr["typo"] = sec.ref->typo;
      if (!sec.ref->notes.empty()) jr["notes"] = sec.ref->notes;
      js["reference"] = jr;
      auto& match = js["match"];
      for (const auto& [col, val] : sec.computed) {
        auto it = sec.ref->values.find(col);
        if (it != sec.ref->values.end()) {
          match[col] = value_matches(val, it->second);
        }
      }
    } else {
      js["reference"] = nullptr;
    }
    j[sec.title] = js;
  }
  return j.dump(2);
}

}  // namespace

std::string stats_report(const Circuit& circuit, const std::string& name,
                         ReportFormat format) {
  Layering layering = extract_layers(circuit);
  GateStats gs = gate_stats(circuit, layering);
  WireStats ws = wire_stats(circuit, layering);

  const ReferenceTables& refs = reference_tables();
  std::vector<Section> sections;
  sections.push_back(
      {"gate_info",
       {{"layers", double(gs.layers)},
        {"inputs", double(gs.inputs)},
        {"outputs", double(gs.outputs)},
        {"ands", double(gs.ands)},
        {"xors", double(gs.xors)},
        {"gates", double(gs.gates)},
        {"reprogram", double(gs.reprogram10)}},
       find_reference(refs.gate_info, name)});
  sections.push_back(
      {"wire_info",
       {{"wires", double(ws.total)},
        {"one_to_one", double(ws.a_wires)},
        {"adjacent_gates", double(ws.b_gates)},
        {"nonadjacent_gates", double(ws.c_gates)},
        {"max_per_layer", double(ws.max_d)},
        {"wires_per_layer", ws.wires_per_layer}},
       find_reference(refs.wire_info, name)});
  if (ws.total > 0) {
    WirePercent wp = wire_percent(ws);
    sections.push_back({"wire_percent",
                        {{"pct_one_to_one", wp.pct_one_to_one},
                         {"pct_adjacent_of_a", wp.pct_adjacent_of_a},
                         {"pct_adjacent_of_total", wp.pct_adjacent_of_total}},
                        find_reference(refs.wire_percent, name)});
  }
  switch (format) {
    case ReportFormat::Table: return table_emit(name, sections);
    case ReportFormat::Csv: return csv_emit(name, sections);
    case ReportFormat::Json: return json_emit(name, sections);
  }
  throw ConfigError("unknown format");
}

}  // namespace sifo
