#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sifo/garble.hpp"

namespace sifo {

struct ContainerError : Error {
  using Error::Error;
};

// Binary container, all integers big-endian:
//   magic "SIFOGC1\0",
//   u64 table count, then per AND gate: u64 gate id + 3 x 10-byte rows,
//   u64 input count, then per input: u64 wire id + 0-label + 1-label,
//   u64 output count, then per output: u64 wire id + 0-label + 1-label,
//   u8 constant-wire flag, then u64 wire id + 0-label when set.
// The global offset is a garbler secret and is never serialized.
std::vector<std::uint8_t> garbled_to_bytes(const GarbledCircuit& gc);
GarbledCircuit garbled_from_bytes(std::span<const std::uint8_t> bytes);

void save_garbled(const GarbledCircuit& gc, const std::string& path);
GarbledCircuit load_garbled(const std::string& path);

// Debug form with hex labels. Covers the same fields as the container.
nlohmann::json garbled_json(const GarbledCircuit& gc);

}  // namespace sifo
