#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sifo/netlist.hpp"

namespace sifo {

enum class ProblemKind { Adder, Multiplier, Hamming, Sorter, Matmul };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Adder;
  std::uint32_t width = 0;
  std::uint32_t count = 0;  // sorter: how many values
  std::uint32_t dim = 0;    // matmul: matrix dimension

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

// Ripple-carry adder of two n-bit values (lsb first). Uniform full-adder
// cells (1 AND + 4 XOR per bit) with a constant-zero carry-in; the final
// carry is produced but not declared an output. Exactly n AND gates.
Circuit gen_adder(std::uint32_t width);

// Shift-add array multiplier, full 2n-bit product. n*n partial-product ANDs
// plus n-1 ripple rows of n full-adder cells: n(2n-1) AND gates.
Circuit gen_multiplier(std::uint32_t width);

// Pairwise XOR then population count via a binary reduction tree of the same
// full-adder cells (narrower operands zero-extended with the constant wire).
// Output width is ceil(log2(n+1)).
Circuit gen_hamming(std::uint32_t width);

// Batcher odd-even merge network over `count` width-bit values, ascending.
// Each element is a borrow-chain comparator plus per-bit swap muxes.
Circuit gen_sorter(std::uint32_t count, std::uint32_t width);

// C = A*B over dim x dim matrices of width-bit values. dim=1 reduces exactly
// to gen_multiplier(width). Each element accumulates with widening adds and
// declares the low 2*width + ceil(log2(dim)) bits.
Circuit gen_matmul(std::uint32_t dim, std::uint32_t width);

Circuit generate(const ProblemSpec& spec);

std::string display_name(const ProblemSpec& spec);  // e.g. "6-bit adder"
std::string gen_comment(const ProblemSpec& spec);   // one-line .gcn header
std::string kind_to_string(ProblemKind kind);
ProblemKind kind_from_string(std::string_view s);   // throws ConfigError

// The benchmark set covered by the bundled reference tables.
const std::vector<ProblemSpec>& standard_benchmarks();

}  // namespace sifo
