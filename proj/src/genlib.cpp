#include "sifo/genlib.hpp"

#include <bit>
#include <cstdint>
#include <utility>

namespace sifo {
namespace {

std::uint32_t ceil_log2(std::uint32_t x) {
  return x <= 1 ? 0 : std::uint32_t(std::bit_width(x - 1));
}

// Emits wires in declaration order: inputs, then the shared constant-zero
// wire (if any), then one wire per gate.
class Builder {
 public:
  WireId input() {
    WireId w = next_++;
    circuit_.inputs.push_back(w);
    return w;
  }

  std::vector<WireId> inputs(std::uint32_t n) {
    std::vector<WireId> ws(n);
    for (auto& w : ws) w = input();
    return ws;
  }

  WireId const_zero() {
    if (!circuit_.const_zero) circuit_.const_zero = next_++;
    return *circuit_.const_zero;
  }

  WireId bxor(WireId a, WireId b) { return emit(GateOp::Xor, a, b); }
  WireId band(WireId a, WireId b) { return emit(GateOp::And, a, b); }

  Circuit take(std::vector<WireId> outputs) {
    circuit_.outputs = std::move(outputs);
    circuit_.finalize();
    return std::move(circuit_);
  }

 private:
  WireId emit(GateOp op, WireId a, WireId b) {
    WireId w = next_++;
    circuit_.gates.push_back(Gate{a, b, w, op});
    return w;
  }

  Circuit circuit_;
  WireId next_ = 0;
};

// sum = x^y^cin, cout = cin^((x^cin)&(y^cin)). One AND, four XOR.
std::pair<WireId, WireId> fa_cell(Builder& b, WireId x, WireId y, WireId cin) {
  WireId t1 = b.bxor(x, cin);
  WireId t2 = b.bxor(y, cin);
  WireId u = b.band(t1, t2);
  WireId cout = b.bxor(cin, u);
  WireId s = b.bxor(t1, y);
  return {s, cout};
}

// Adds two lsb-first values of possibly different widths; the narrower one
// is padded with the constant-zero wire. Returns max(w)+1 bits.
std::vector<WireId> add_widening(Builder& b, const std::vector<WireId>& x,
                                 const std::vector<WireId>& y) {
  const auto& wide = x.size() >= y.size() ? x : y;
  const auto& narrow = x.size() >= y.size() ? y : x;
  std::vector<WireId> out;
  out.reserve(wide.size() + 1);
  WireId carry = b.const_zero();
  for (std::size_t i = 0; i < wide.size(); ++i) {
    WireId yi = i < narrow.size() ? narrow[i] : b.const_zero();
    auto [s, c] = fa_cell(b, wide[i], yi, carry);
    out.push_back(s);
    carry = c;
  }
  out.push_back(carry);
  return out;
}

// Full 2n-bit product of two lsb-first n-bit values. Row 0 is the plain
// partial products; each later row j adds its partial products into the
// running sum with one ripple pass of n full-adder cells.
std::vector<WireId> emit_product(Builder& b, const std::vector<WireId>& a,
                                 const std::vector<WireId>& y) {
  const std::uint32_t n = std::uint32_t(a.size());
  std::vector<WireId> acc(2 * n);
  for (std::uint32_t i = 0; i < n; ++i) acc[i] = b.band(a[i], y[0]);
  acc[n] = b.const_zero();  // placeholder for row 0's missing carry
  for (std::uint32_t j = 1; j < n; ++j) {
    std::vector<WireId> pp(n);
    for (std::uint32_t i = 0; i < n; ++i) pp[i] = b.band(a[i], y[j]);
    WireId carry = b.const_zero();
    for (std::uint32_t i = 0; i < n; ++i) {
      auto [s, c] = fa_cell(b, acc[j + i], pp[i], carry);
      acc[j + i] = s;
      carry = c;
    }
    acc[j + n] = carry;
  }
  return acc;
}

// Compare-exchange: leaves min(x,y) in x and max in y, unsigned lsb-first.
// The swap condition x>y is the final borrow of y-x, computed without NOT
// gates via !p & q == (p^q) & q. Muxes share the x^y wires with the chain.
void compare_exchange(Builder& b, std::vector<WireId>& x,
                      std::vector<WireId>& y) {
  const std::size_t w = x.size();
  std::vector<WireId> d(w);
  for (std::size_t k = 0; k < w; ++k) d[k] = b.bxor(x[k], y[k]);
  WireId borrow = b.band(d[0], x[0]);
  for (std::size_t k = 1; k < w; ++k) {
    WireId t = b.bxor(x[k], borrow);
    WireId r = b.bxor(d[k], borrow);
    WireId v = b.band(r, t);
    WireId m = b.band(x[k], borrow);
    borrow = b.bxor(v, m);
  }
  for (std::size_t k = 0; k < w; ++k) {
    WireId e = b.band(borrow, d[k]);
    WireId lo = b.bxor(x[k], e);
    WireId hi = b.bxor(y[k], e);
    x[k] = lo;
    y[k] = hi;
  }
}

void oe_merge(std::uint32_t lo, std::uint32_t cnt, std::uint32_t r,
              std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
  std::uint32_t step = 2 * r;
  if (step < cnt) {
    oe_merge(lo, cnt, step, n, out);
    oe_merge(lo + r, cnt, step, n, out);
    for (std::uint32_t i = lo + r; i + r < lo + cnt; i += step) {
      if (i + r < n) out.emplace_back(i, i + r);
    }
  } else if (lo + r < n) {
    out.emplace_back(lo, lo + r);
  }
}

void oe_sort(std::uint32_t lo, std::uint32_t cnt, std::uint32_t n,
             std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
  if (cnt <= 1) return;
  std::uint32_t half = cnt / 2;
  oe_sort(lo, half, n, out);
  oe_sort(lo + half, half, n, out);
  oe_merge(lo, cnt, 1, n, out);
}

// Comparator schedule for n values. Built over the next power of two and
// pruned: dropped comparators would only ever touch the virtual +inf slots.
std::vector<std::pair<std::uint32_t, std::uint32_t>> batcher_network(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  oe_sort(0, std::bit_ceil(n), n, out);
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

Circuit gen_adder(std::uint32_t width) {
  require(width >= 1, "adder width must be at least 1");
  Builder b;
  auto a = b.inputs(width);
  auto y = b.inputs(width);
  WireId carry = b.const_zero();
  std::vector<WireId> sum(width);
  for (std::uint32_t i = 0; i < width; ++i) {
    auto [s, c] = fa_cell(b, a[i], y[i], carry);
    sum[i] = s;
    carry = c;  // final carry stays undeclared
  }
  return b.take(std::move(sum));
}

Circuit gen_multiplier(std::uint32_t width) {
  require(width >= 2, "multiplier width must be at least 2");
  Builder b;
  auto a = b.inputs(width);
  auto y = b.inputs(width);
  b.const_zero();
  return b.take(emit_product(b, a, y));
}

Circuit gen_hamming(std::uint32_t width) {
  require(width >= 1, "hamming width must be at least 1");
  Builder b;
  auto x = b.inputs(width);
  auto y = b.inputs(width);
  if (width >= 2) b.const_zero();
  std::vector<std::vector<WireId>> vals;
  vals.reserve(width);
  for (std::uint32_t i = 0; i < width; ++i) vals.push_back({b.bxor(x[i], y[i])});
  while (vals.size() > 1) {
    std::vector<std::vector<WireId>> next;
    next.reserve((vals.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < vals.size(); i += 2) {
      next.push_back(add_widening(b, vals[i], vals[i + 1]));
    }
    if (vals.size() % 2) next.push_back(std::move(vals.back()));
    vals = std::move(next);
  }
  std::uint32_t out_w = ceil_log2(width + 1);
  std::vector<WireId> outs(vals[0].begin(), vals[0].begin() + out_w);
  return b.take(std::move(outs));
}

Circuit gen_sorter(std::uint32_t count, std::uint32_t width) {
  require(count >= 2, "sorter needs at least 2 values");
  require(width >= 1, "sorter width must be at least 1");
  Builder b;
  std::vector<std::vector<WireId>> vals(count);
  for (auto& v : vals) v = b.inputs(width);
  for (auto [i, j] : batcher_network(count)) compare_exchange(b, vals[i], vals[j]);
  std::vector<WireId> outs;
  outs.reserve(std::size_t(count) * width);
  for (const auto& v : vals) outs.insert(outs.end(), v.begin(), v.end());
  return b.take(std::move(outs));
}

Circuit gen_matmul(std::uint32_t dim, std::uint32_t width) {
  require(dim >= 1, "matmul dimension must be at least 1");
  require(width >= 2, "matmul width must be at least 2");
  Builder b;
  std::vector<std::vector<std::vector<WireId>>> A(dim), B(dim);
  for (auto& row : A) {
    row.resize(dim);
    for (auto& elem : row) elem = b.inputs(width);
  }
  for (auto& row : B) {
    row.resize(dim);
    for (auto& elem : row) elem = b.inputs(width);
  }
  b.const_zero();
  std::uint32_t out_w = 2 * width + ceil_log2(dim);
  std::vector<WireId> outs;
  outs.reserve(std::size_t(dim) * dim * out_w);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      std::vector<WireId> acc;
      for (std::uint32_t k = 0; k < dim; ++k) {
        auto prod = emit_product(b, A[r][k], B[k][c]);
        acc = k == 0 ? std::move(prod) : add_widening(b, acc, prod);
      }
      outs.insert(outs.end(), acc.begin(), acc.begin() + out_w);
    }
  }
  return b.take(std::move(outs));
}

Circuit generate(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::Adder: return gen_adder(spec.width);
    case ProblemKind::Multiplier: return gen_multiplier(spec.width);
    case ProblemKind::Hamming: return gen_hamming(spec.width);
    case ProblemKind::Sorter: return gen_sorter(spec.count, spec.width);
    case ProblemKind::Matmul: return gen_matmul(spec.dim, spec.width);
  }
  throw ConfigError("unknown problem kind");
}

std::string display_name(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::Adder:
      return std::to_string(spec.width) + "-bit adder";
    case ProblemKind::Multiplier:
      return std::to_string(spec.width) + "-bit mult";
    case ProblemKind::Hamming:
      return std::to_string(spec.width) + "-bit HD";
    case ProblemKind::Sorter:
      return std::to_string(spec.count) + " " + std::to_string(spec.width) +
             "-bit sorting";
    case ProblemKind::Matmul:
      return std::to_string(spec.dim) + "x" + std::to_string(spec.dim) + " " +
             std::to_string(spec.width) + "-bit m_mult";
  }
  return "?";
}

std::string gen_comment(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::Adder:
      return display_name(spec) + ": a[0..n) then b[0..n) lsb-first, sum out";
    case ProblemKind::Multiplier:
      return display_name(spec) + ": a then b lsb-first, 2n-bit product out";
    case ProblemKind::Hamming:
      return display_name(spec) + ": x then y lsb-first, popcount(x^y) out";
    case ProblemKind::Sorter:
      return display_name(spec) + ": values lsb-first, ascending out";
    case ProblemKind::Matmul:
      return display_name(spec) + ": A row-major then B, C=A*B row-major out";
  }
  return "";
}

std::string kind_to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Adder: return "adder";
    case ProblemKind::Multiplier: return "multiplier";
    case ProblemKind::Hamming: return "hamming";
    case ProblemKind::Sorter: return "sorter";
    case ProblemKind::Matmul: return "matmul";
  }
  return "?";
}

ProblemKind kind_from_string(std::string_view s) {
  if (s == "adder") return ProblemKind::Adder;
  if (s == "multiplier" || s == "mult") return ProblemKind::Multiplier;
  if (s == "hamming" || s == "hd") return ProblemKind::Hamming;
  if (s == "sorter") return ProblemKind::Sorter;
  if (s == "matmul" || s == "m_mult") return ProblemKind::Matmul;
  throw ConfigError("unknown circuit kind: " + std::string(s));
}

const std::vector<ProblemSpec>& standard_benchmarks() {
  static const std::vector<ProblemSpec> specs = {
      {ProblemKind::Adder, 6, 0, 0},
      {ProblemKind::Hamming, 10, 0, 0},
      {ProblemKind::Hamming, 30, 0, 0},
      {ProblemKind::Hamming, 50, 0, 0},
      {ProblemKind::Multiplier, 8, 0, 0},
      {ProblemKind::Multiplier, 16, 0, 0},
      {ProblemKind::Multiplier, 32, 0, 0},
      {ProblemKind::Multiplier, 64, 0, 0},
      {ProblemKind::Sorter, 4, 10, 0},
      {ProblemKind::Matmul, 4, 0, 5},
      {ProblemKind::Matmul, 4, 0, 10},
      {ProblemKind::Matmul, 8, 0, 5},
      {ProblemKind::Matmul, 8, 0, 10},
      {ProblemKind::Matmul, 4, 0, 20},
  };
  return specs;
}

}  // namespace sifo
