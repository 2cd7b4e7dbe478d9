#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "sifo/analysis.hpp"
#include "sifo/genlib.hpp"
#include "sifo/layering.hpp"
#include "sifo/memmap.hpp"
#include "sifo/netlist.hpp"

using namespace sifo;

TEST_CASE("adder gate stats") {
  Circuit c = gen_adder(6);
  Layering l = extract_layers(c);
  GateStats gs = gate_stats(c, l);
  CHECK(gs.layers == 17);
  CHECK(gs.inputs == 12);
  CHECK(gs.outputs == 6);
  CHECK(gs.ands == 6);
  CHECK(gs.xors == 24);
  CHECK(gs.gates == 30);
  CHECK(gs.reprogram10 == 1);
}

TEST_CASE("multiplier gate stats") {
  Circuit c = gen_multiplier(16);
  Layering l = extract_layers(c);
  GateStats gs = gate_stats(c, l);
  CHECK(gs.inputs == 32);
  CHECK(gs.outputs == 32);
  CHECK(gs.ands == 496);
  CHECK(gs.reprogram10 == 50);
}

TEST_CASE("gateless circuit") {
  Circuit c = parse_netlist("IN 0 1\nOUT 0\n");
  Layering l = extract_layers(c);
  GateStats gs = gate_stats(c, l);
  CHECK(gs.layers == 0);
  CHECK(gs.inputs == 2);
  CHECK(gs.outputs == 1);
  CHECK(gs.gates == 0);
  CHECK(gs.reprogram10 == 0);
}

TEST_CASE("adder wire percents") {
  Circuit c = gen_adder(6);
  Layering l = extract_layers(c);
  WirePercent wp = wire_percent(wire_stats(c, l));
  CHECK(wp.pct_one_to_one == doctest::Approx(100.0 * 12 / 42).epsilon(1e-12));
  CHECK(wp.pct_adjacent_of_a == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(wp.pct_adjacent_of_total == doctest::Approx(100.0 * 12 / 42).epsilon(1e-12));
}

TEST_CASE("wire percent edge cases") {
  WireStats zero;
  CHECK_THROWS_AS(wire_percent(zero), UndefinedRatioError);

  WireStats no_a;
  no_a.total = 10;
  WirePercent wp = wire_percent(no_a);
  CHECK(wp.pct_one_to_one == 0);
  CHECK(wp.pct_adjacent_of_a == 0);  // defined as zero rather than 0/0
  CHECK(wp.pct_adjacent_of_total == 0);
}

TEST_CASE("bandwidth arithmetic on the published pairs") {
  BandwidthEstimate b1 = bandwidth(7526, 11286e-6);
  CHECK(b1.gates_per_second == doctest::Approx(666843.88).epsilon(1e-6));
  CHECK(std::abs(b1.gates_per_second - 0.67e6) / 0.67e6 < 0.01);
  CHECK(std::abs(b1.bits_per_second - 160.8e6) / 160.8e6 < 0.01);
  CHECK(b1.bits_per_second == b1.gates_per_second * 240);

  BandwidthEstimate b2 = bandwidth(254400, 340698e-6);
  CHECK(b2.gates_per_second == doctest::Approx(746702.36).epsilon(1e-6));
  CHECK(std::abs(b2.gates_per_second - 0.75e6) / 0.75e6 < 0.01);
  CHECK(std::abs(b2.bits_per_second - 180e6) / 180e6 < 0.01);

  CHECK(kBitsPerAndTable == 240);
}

TEST_CASE("bandwidth edge cases") {
  BandwidthEstimate z = bandwidth(0, 1.0);
  CHECK(z.gates_per_second == 0);
  CHECK(z.bits_per_second == 0);
  CHECK_THROWS_AS(bandwidth(100, 0.0), ConfigError);
  CHECK_THROWS_AS(bandwidth(100, -1.0), ConfigError);
}

TEST_CASE("bundled reference tables") {
  const ReferenceTables& refs = reference_tables();
  CHECK(refs.gate_info.size() == 14);
  CHECK(refs.wire_info.size() == 14);
  CHECK(refs.wire_percent.size() == 14);
  CHECK(refs.throughput.size() == 2);

  const ReferenceRow* adder = find_reference(refs.gate_info, "6-bit adder");
  REQUIRE(adder);
  CHECK(adder->values.at("layers") == 17);
  CHECK(adder->values.at("reprogram") == 1);
  CHECK(adder->exact.size() == 7);
  CHECK(adder->typo.empty());

  const ReferenceRow* m32 = find_reference(refs.gate_info, "32-bit mult");
  REQUIRE(m32);
  CHECK(m32->values.at("reprogram") == 201);
  CHECK(m32->typo.count("reprogram") == 1);
  CHECK(!m32->notes.empty());

  CHECK(find_reference(refs.gate_info, "no such circuit") == nullptr);

  CHECK(refs.throughput[0].ands == 7526);
  CHECK(refs.throughput[0].microseconds == 11286);
  CHECK(refs.throughput[1].ands == 254400);
}

TEST_CASE("format parsing") {
  CHECK(format_from_string("table") == ReportFormat::Table);
  CHECK(format_from_string("csv") == ReportFormat::Csv);
  CHECK(format_from_string("json") == ReportFormat::Json);
  CHECK_THROWS_AS(format_from_string("yaml"), ConfigError);
}

TEST_CASE("adder stats report marks every reference column ok") {
  Circuit c = gen_adder(6);
  std::string json_text = stats_report(c, "6-bit adder", ReportFormat::Json);
  auto j = nlohmann::json::parse(json_text);
  CHECK(j["circuit"] == "6-bit adder");
  for (const char* section : {"gate_info", "wire_info", "wire_percent"}) {
    REQUIRE(j.contains(section));
    REQUIRE(!j[section]["reference"].is_null());
    for (const auto& [col, ok] : j[section]["match"].items()) {
      INFO(section, "/", col);
      CHECK(ok == true);
    }
  }
  CHECK(j["gate_info"]["computed"]["layers"] == 17);
  CHECK(j["wire_info"]["computed"]["one_to_one"] == 12);
}

TEST_CASE("32-bit mult report flags the reprogram disagreement") {
  Circuit c = gen_multiplier(32);
  auto j = nlohmann::json::parse(stats_report(c, "32-bit mult", ReportFormat::Json));
  CHECK(j["gate_info"]["computed"]["reprogram"] == 202);
  CHECK(j["gate_info"]["reference"]["values"]["reprogram"] == 201);
  CHECK(j["gate_info"]["match"]["reprogram"] == false);

  std::string table = stats_report(c, "32-bit mult", ReportFormat::Table);
  CHECK(table.find("typo") != std::string::npos);
  CHECK(table.find("DIFF") != std::string::npos);
}

TEST_CASE("reports without a reference row still render") {
  Circuit c = gen_adder(3);
  std::string table = stats_report(c, "3-bit adder", ReportFormat::Table);
  CHECK(table.find("gate_info") != std::string::npos);

  auto j = nlohmann::json::parse(stats_report(c, "3-bit adder", ReportFormat::Json));
  CHECK(j["gate_info"]["reference"].is_null());

  std::string csv = stats_report(c, "3-bit adder", ReportFormat::Csv);
  CHECK(csv.rfind("circuit,section,column", 0) == 0);
}

TEST_CASE("reports are deterministic") {
  Circuit c = gen_adder(6);
  for (ReportFormat f : {ReportFormat::Table, ReportFormat::Csv, ReportFormat::Json}) {
    CHECK(stats_report(c, "6-bit adder", f) == stats_report(c, "6-bit adder", f));
  }
}
