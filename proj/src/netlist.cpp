#include "sifo/netlist.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace sifo {

std::uint32_t Circuit::slot(WireId w) const {
  auto it = slot_of_.find(w);
  if (it == slot_of_.end())
    throw Error("unknown wire id " + std::to_string(w));
  return it->second;
}

std::optional<GateId> Circuit::producer(WireId w) const {
  std::uint32_t s = slot(w);
  std::uint32_t first_gate = std::uint32_t(inputs.size() + (const_zero ? 1 : 0));
  if (s < first_gate) return std::nullopt;
  return GateId(s - first_gate);
}

namespace {

// Shared semantic checks. `line` maps each gate / declaration to its source
// line when coming from the parser; programmatic circuits get indexes instead.
struct SourceLines {
  std::vector<int> input_line;
  std::vector<int> output_line;
  std::vector<int> gate_line;
  int const_line = 0;
};

std::string loc_input(const SourceLines* src, std::size_t i) {
  return src ? "line " + std::to_string(src->input_line[i]) : "input " + std::to_string(i);
}
std::string loc_output(const SourceLines* src, std::size_t i) {
  return src ? "line " + std::to_string(src->output_line[i]) : "output " + std::to_string(i);
}
std::string loc_gate(const SourceLines* src, std::size_t i) {
  return src ? "line " + std::to_string(src->gate_line[i]) : "gate " + std::to_string(i);
}

std::vector<std::string> validate_impl(const Circuit& c, const SourceLines* src) {
  std::vector<std::string> problems;
  std::unordered_set<WireId> defined;
  defined.reserve(c.inputs.size() + c.gates.size() + 1);

  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    if (!defined.insert(c.inputs[i]).second)
      problems.push_back(loc_input(src, i) + ": duplicate input declaration for wire " +
                         std::to_string(c.inputs[i]));
  }
  if (c.const_zero) {
    if (!defined.insert(*c.const_zero).second)
      problems.push_back((src ? "line " + std::to_string(src->const_line) : std::string("CONST0")) +
                         ": constant wire " + std::to_string(*c.const_zero) +
                         " collides with an input");
  }

  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.out == g.in0 || g.out == g.in1) {
      problems.push_back(loc_gate(src, i) + ": gate output " + std::to_string(g.out) +
                         " is also one of its inputs (self-loop)");
      continue;
    }
    for (WireId in : {g.in0, g.in1}) {
      if (!defined.count(in))
        problems.push_back(loc_gate(src, i) + ": wire " + std::to_string(in) +
                           " used before definition");
    }
    if (!defined.insert(g.out).second)
      problems.push_back(loc_gate(src, i) + ": wire " + std::to_string(g.out) +
                         " assigned more than once");
  }

  std::unordered_set<WireId> seen_out;
  for (std::size_t i = 0; i < c.outputs.size(); ++i) {
    WireId w = c.outputs[i];
    if (!defined.count(w) || (c.const_zero && w == *c.const_zero))
      problems.push_back(loc_output(src, i) + ": output wire " + std::to_string(w) +
                         " is never defined");
    if (!seen_out.insert(w).second)
      problems.push_back(loc_output(src, i) + ": duplicate output declaration for wire " +
                         std::to_string(w));
  }
  return problems;
}

[[noreturn]] void throw_problems(const std::vector<std::string>& problems) {
  std::string msg;
  for (const auto& p : problems) {
    if (!msg.empty()) msg += '\n';
    msg += p;
  }
  throw ValidationError(msg);
}

}  // namespace

std::vector<std::string> validate(const Circuit& c) { return validate_impl(c, nullptr); }

void Circuit::finalize() {
  auto problems = validate_impl(*this, nullptr);
  if (!problems.empty()) throw_problems(problems);

  slot_of_.clear();
  wire_of_slot_.clear();
  wire_of_slot_.reserve(inputs.size() + gates.size() + 1);
  slot_of_.reserve(inputs.size() + gates.size() + 1);
  auto add = [&](WireId w) {
    slot_of_.emplace(w, std::uint32_t(wire_of_slot_.size()));
    wire_of_slot_.push_back(w);
  };
  for (WireId w : inputs) add(w);
  if (const_zero) add(*const_zero);
  for (const Gate& g : gates) add(g.out);
}

namespace {

WireId parse_wire_id(std::string_view tok, int line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": expected a wire id, got '" +
                     std::string(tok) + "'");
  if (v > 0xFFFFFFFFull)
    throw ParseError("line " + std::to_string(line) + ": wire id " + std::string(tok) +
                     " out of range");
  return WireId(v);
}

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) toks.push_back(s.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Circuit parse_netlist(std::string_view text, const ParseOptions& opt) {
  Circuit c;
  SourceLines src;
  bool saw_in = false, saw_out = false;

  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                         : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;

    if (toks[0] == "IN") {
      if (toks.size() < 2)
        throw ParseError("line " + std::to_string(line) + ": IN needs at least one wire id");
      saw_in = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        c.inputs.push_back(parse_wire_id(toks[i], line));
        src.input_line.push_back(line);
      }
    } else if (toks[0] == "OUT") {
      if (toks.size() < 2)
        throw ParseError("line " + std::to_string(line) + ": OUT needs at least one wire id");
      saw_out = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        c.outputs.push_back(parse_wire_id(toks[i], line));
        src.output_line.push_back(line);
      }
    } else if (toks[0] == "CONST0") {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(line) + ": CONST0 takes exactly one wire id");
      if (c.const_zero)
        throw ParseError("line " + std::to_string(line) + ": duplicate CONST0 declaration");
      c.const_zero = parse_wire_id(toks[1], line);
      src.const_line = line;
    } else if (toks.size() == 5 && toks[3] == "=" &&
               (toks[1] == "AND" || toks[1] == "XOR")) {
      Gate g;
      g.in0 = parse_wire_id(toks[0], line);
      g.op = (toks[1] == "AND") ? GateOp::And : GateOp::Xor;
      g.in1 = parse_wire_id(toks[2], line);
      g.out = parse_wire_id(toks[4], line);
      c.gates.push_back(g);
      src.gate_line.push_back(line);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unrecognized line '" +
                       std::string(raw.substr(0, 60)) + "'");
    }
  }

  bool bare = !saw_in && !saw_out && !c.const_zero && !c.gates.empty();
  if (opt.infer_io || bare) {
    std::unordered_set<WireId> produced;
    std::unordered_set<WireId> consumed;
    for (const Gate& g : c.gates) {
      produced.insert(g.out);
      consumed.insert(g.in0);
      consumed.insert(g.in1);
    }
    if (!saw_in) {
      std::set<WireId> ins;  // ascending
      for (const Gate& g : c.gates)
        for (WireId in : {g.in0, g.in1})
          if (!produced.count(in) && (!c.const_zero || in != *c.const_zero)) ins.insert(in);
      c.inputs.assign(ins.begin(), ins.end());
      src.input_line.assign(c.inputs.size(), 0);
    }
    if (!saw_out) {
      for (const Gate& g : c.gates)
        if (!consumed.count(g.out)) c.outputs.push_back(g.out);
      src.output_line.assign(c.outputs.size(), 0);
    }
  }

  auto problems = validate_impl(c, &src);
  if (!problems.empty()) throw_problems(problems);
  c.finalize();
  return c;
}

Circuit load_netlist(const std::string& path, const ParseOptions& opt) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open netlist file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_netlist(ss.str(), opt);
}

std::string write_netlist(const Circuit& c, std::string_view header_comment) {
  std::string s;
  s.reserve(32 * c.gates.size() + 16 * (c.inputs.size() + c.outputs.size()) + 64);
  if (!header_comment.empty()) {
    s += "# ";
    for (char ch : header_comment) {
      s += ch;
      if (ch == '\n') s += "# ";
    }
    s += '\n';
  }
  if (!c.inputs.empty()) {
    s += "IN";
    for (WireId w : c.inputs) {
      s += ' ';
      s += std::to_string(w);
    }
    s += '\n';
  }
  if (c.const_zero) {
    s += "CONST0 ";
    s += std::to_string(*c.const_zero);
    s += '\n';
  }
  if (!c.outputs.empty()) {
    s += "OUT";
    for (WireId w : c.outputs) {
      s += ' ';
      s += std::to_string(w);
    }
    s += '\n';
  }
  for (const Gate& g : c.gates) {
    s += std::to_string(g.in0);
    s += (g.op == GateOp::And) ? " AND " : " XOR ";
    s += std::to_string(g.in1);
    s += " = ";
    s += std::to_string(g.out);
    s += '\n';
  }
  return s;
}

void save_netlist(const Circuit& c, const std::string& path, std::string_view header_comment) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open file for writing: " + path);
  f << write_netlist(c, header_comment);
  if (!f) throw Error("failed writing netlist to " + path);
}

nlohmann::json netlist_json(const Circuit& c) {
  nlohmann::json j;
  j["inputs"] = c.inputs;
  j["outputs"] = c.outputs;
  if (c.const_zero)
    j["const_zero"] = *c.const_zero;
  else
    j["const_zero"] = nullptr;
  j["wire_count"] = c.wire_count();
  auto gates = nlohmann::json::array();
  for (const Gate& g : c.gates) {
    gates.push_back({{"op", g.op == GateOp::And ? "AND" : "XOR"},
                     {"in0", g.in0},
                     {"in1", g.in1},
                     {"out", g.out}});
  }
  j["gates"] = std::move(gates);
  return j;
}

}  // namespace sifo
