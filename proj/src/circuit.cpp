#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "helium/circuit.hpp"

namespace helium {

using json = nlohmann::ordered_json;

const char* opcode_name(Opcode op) {
  switch (op) {
    case Opcode::CONST: return "CONST";
    case Opcode::LOAD: return "LOAD";
    case Opcode::ADD_CC: return "ADD_CC";
    case Opcode::ADD_CP: return "ADD_CP";
    case Opcode::SUB_CC: return "SUB_CC";
    case Opcode::SUB_CP: return "SUB_CP";
    case Opcode::MUL_CC: return "MUL_CC";
    case Opcode::MUL_CP: return "MUL_CP";
    case Opcode::ROT_L: return "ROT_L";
    case Opcode::ROT_R: return "ROT_R";
    case Opcode::PRE: return "PRE";
    case Opcode::STORE: return "STORE";
  }
  return "?";
}

Opcode opcode_from_name(const std::string& name) {
  static const std::map<std::string, Opcode> table = {
      {"CONST", Opcode::CONST},   {"LOAD", Opcode::LOAD},
      {"ADD_CC", Opcode::ADD_CC}, {"ADD_CP", Opcode::ADD_CP},
      {"SUB_CC", Opcode::SUB_CC}, {"SUB_CP", Opcode::SUB_CP},
      {"MUL_CC", Opcode::MUL_CC}, {"MUL_CP", Opcode::MUL_CP},
      {"ROT_L", Opcode::ROT_L},   {"ROT_R", Opcode::ROT_R},
      {"PRE", Opcode::PRE},       {"STORE", Opcode::STORE},
  };
  auto it = table.find(name);
  if (it == table.end())
    throw CompileError(ErrorKind::Config, "unknown opcode '" + name + "'");
  return it->second;
}

namespace {

int bit_width(std::int64_t v) {
  std::uint64_t mag = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  int bits = 0;
  while (mag) {
    ++bits;
    mag >>= 1;
  }
  return std::max(bits, 1);
}

}  // namespace

int max_plain_bits(const CompGraph& g, int input_bits) {
  std::map<NodeId, int> width;
  int worst = 0;
  for (NodeId id : g.topo_order()) {
    const GraphNode& n = g.node(id);
    int w = 0;
    switch (n.kind) {
      case OpKind::Input: w = input_bits; break;
      case OpKind::Const: {
        for (std::int64_t v : n.value) w = std::max(w, bit_width(v));
        break;
      }
      case OpKind::Add:
      case OpKind::Sub:
        w = std::max(width[n.operands[0]], width[n.operands[1]]) + 1;
        break;
      case OpKind::Mul:
        w = width[n.operands[0]] + width[n.operands[1]];
        break;
      case OpKind::Pow: {
        std::int64_t e = std::max<std::int64_t>(g.node(n.operands[1]).value.at(0), 1);
        w = width[n.operands[0]] * static_cast<int>(e);
        break;
      }
      default:  // rotations, PRE, outputs keep the operand width
        w = width[n.operands[0]];
        break;
    }
    width[id] = w;
    worst = std::max(worst, w);
  }
  return worst;
}

Circuit emit(const CompGraph& g, int input_bits, std::vector<PassReport> reports) {
  g.verify();
  Circuit c;
  c.pass_reports = std::move(reports);

  std::map<NodeId, int> slot;
  std::set<KeyLabel> keys;
  for (NodeId id : g.topo_order()) {
    const GraphNode& n = g.node(id);
    Instruction ins;
    ins.id = static_cast<int>(c.instructions.size());
    ins.shape = n.vtype.len();
    ins.plain = n.vtype.secrecy != Secrecy::Cipher;
    for (NodeId op : n.operands) ins.args.push_back(slot.at(op));
    if (n.key) {
      ins.key = n.key;
      keys.insert(*n.key);
    }
    switch (n.kind) {
      case OpKind::Input:
        ins.opcode = Opcode::LOAD;
        ins.name = n.name;
        c.inputs.push_back(CircuitInput{n.name, n.party, n.key, n.vtype.len()});
        break;
      case OpKind::Const:
        ins.opcode = Opcode::CONST;
        ins.value = n.value;
        break;
      case OpKind::Output:
        ins.opcode = Opcode::STORE;
        ins.name = n.name;
        c.outputs.push_back(CircuitOutput{n.name, n.party, *n.key, ins.id});
        break;
      case OpKind::Pre: {
        ins.opcode = Opcode::PRE;
        const GraphNode& src = g.node(n.operands[0]);
        if (src.vtype.secrecy != Secrecy::Cipher || !src.key)
          throw CompileError(ErrorKind::Verify, "PRE of a non-ciphertext value");
        ins.from_key = src.key;
        keys.insert(*src.key);
        break;
      }
      case OpKind::RotL:
        ins.opcode = Opcode::ROT_L;
        break;
      case OpKind::RotR:
        ins.opcode = Opcode::ROT_R;
        break;
      case OpKind::Pow:
        throw CompileError(ErrorKind::Verify, "pow must be lowered before emission");
      default: {
        const GraphNode& a = g.node(n.operands[0]);
        const GraphNode& b = g.node(n.operands[1]);
        bool a_ct = a.vtype.secrecy == Secrecy::Cipher;
        bool b_ct = b.vtype.secrecy == Secrecy::Cipher;
        if (a_ct && b_ct) {
          if (!a.key || !b.key || *a.key != *b.key)
            throw CompileError(ErrorKind::Verify,
                               "ct-ct operation with unequal operand keys at %" +
                                   std::to_string(id));
        }
        bool cc = a_ct && b_ct;
        switch (n.kind) {
          case OpKind::Add: ins.opcode = cc ? Opcode::ADD_CC : Opcode::ADD_CP; break;
          case OpKind::Sub: ins.opcode = cc ? Opcode::SUB_CC : Opcode::SUB_CP; break;
          default: ins.opcode = cc ? Opcode::MUL_CC : Opcode::MUL_CP; break;
        }
        break;
      }
    }
    slot[id] = ins.id;
    c.instructions.push_back(std::move(ins));
  }

  for (NodeId id : g.outputs()) {
    const GraphNode& out = g.node(id);
    const GraphNode& operand = g.node(out.operands[0]);
    if (operand.vtype.secrecy == Secrecy::Cipher && operand.key != out.key)
      throw CompileError(ErrorKind::Verify, "output '" + out.name + "' not under its declared key");
  }

  c.metrics.mult_depth = g.multiplicative_depth();
  c.metrics.node_count = static_cast<int>(g.size());
  c.metrics.max_plain_bits = max_plain_bits(g, input_bits);
  for (const auto& ins : c.instructions)
    if (ins.opcode == Opcode::PRE) ++c.metrics.pre_count;
  c.suggested_params.plain_modulus_bits = c.metrics.max_plain_bits;
  c.suggested_params.depth_budget = c.metrics.mult_depth;
  c.keys.assign(keys.begin(), keys.end());
  return c;
}

namespace {

json report_to_json(const PassReport& r) {
  return json{{"pass", r.pass},
              {"nodes_removed", r.nodes_removed},
              {"nodes_added", r.nodes_added},
              {"pre_inserted", r.pre_inserted},
              {"warnings", r.warnings}};
}

PassReport report_from_json(const json& j) {
  PassReport r;
  r.pass = j.at("pass").get<std::string>();
  r.nodes_removed = j.at("nodes_removed").get<int>();
  r.nodes_added = j.at("nodes_added").get<int>();
  r.pre_inserted = j.at("pre_inserted").get<int>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace

std::string write_circuit(const Circuit& c) {
  json j;
  j["version"] = c.version;
  j["metrics"] = {{"mult_depth", c.metrics.mult_depth},
                  {"pre_count", c.metrics.pre_count},
                  {"max_plain_bits", c.metrics.max_plain_bits},
                  {"node_count", c.metrics.node_count}};
  j["suggested_params"] = {{"plain_modulus_bits", c.suggested_params.plain_modulus_bits},
                           {"depth_budget", c.suggested_params.depth_budget}};
  j["keys"] = c.keys;
  j["pass_reports"] = json::array();
  for (const auto& r : c.pass_reports) j["pass_reports"].push_back(report_to_json(r));
  j["inputs"] = json::array();
  for (const auto& in : c.inputs) {
    json ji{{"name", in.name}, {"party", in.party}};
    ji["key"] = in.key ? json(*in.key) : json(nullptr);
    ji["shape"] = in.shape;
    j["inputs"].push_back(std::move(ji));
  }
  j["outputs"] = json::array();
  for (const auto& out : c.outputs)
    j["outputs"].push_back(json{{"name", out.name},
                                {"party", out.party},
                                {"key", out.key},
                                {"instr_ref", out.instr_ref}});
  j["instructions"] = json::array();
  for (const auto& ins : c.instructions) {
    json ji{{"id", ins.id}, {"opcode", opcode_name(ins.opcode)}, {"args", ins.args}};
    if (ins.key) ji["key"] = *ins.key;
    if (ins.from_key) ji["from_key"] = *ins.from_key;
    if (!ins.name.empty()) ji["name"] = ins.name;
    if (ins.opcode == Opcode::CONST) ji["value"] = ins.value;
    ji["shape"] = ins.shape;
    ji["plain"] = ins.plain;
    j["instructions"].push_back(std::move(ji));
  }
  return j.dump(2) + "\n";
}

Circuit read_circuit(const std::string& json_text) {
  json j = json::parse(json_text);
  Circuit c;
  c.version = j.at("version").get<int>();
  const auto& m = j.at("metrics");
  c.metrics = {m.at("mult_depth").get<int>(), m.at("pre_count").get<int>(),
               m.at("max_plain_bits").get<int>(), m.at("node_count").get<int>()};
  const auto& p = j.at("suggested_params");
  c.suggested_params = {p.at("plain_modulus_bits").get<int>(), p.at("depth_budget").get<int>()};
  c.keys = j.at("keys").get<std::vector<std::string>>();
  for (const auto& jr : j.at("pass_reports")) c.pass_reports.push_back(report_from_json(jr));
  for (const auto& ji : j.at("inputs")) {
    CircuitInput in;
    in.name = ji.at("name").get<std::string>();
    in.party = ji.at("party").get<std::string>();
    if (!ji.at("key").is_null()) in.key = ji.at("key").get<std::string>();
    in.shape = ji.at("shape").get<std::int64_t>();
    c.inputs.push_back(std::move(in));
  }
  for (const auto& jo : j.at("outputs"))
    c.outputs.push_back(CircuitOutput{jo.at("name").get<std::string>(),
                                      jo.at("party").get<std::string>(),
                                      jo.at("key").get<std::string>(),
                                      jo.at("instr_ref").get<int>()});
  for (const auto& ji : j.at("instructions")) {
    Instruction ins;
    ins.id = ji.at("id").get<int>();
    ins.opcode = opcode_from_name(ji.at("opcode").get<std::string>());
    ins.args = ji.at("args").get<std::vector<int>>();
    if (ji.contains("key")) ins.key = ji.at("key").get<std::string>();
    if (ji.contains("from_key")) ins.from_key = ji.at("from_key").get<std::string>();
    if (ji.contains("name")) ins.name = ji.at("name").get<std::string>();
    if (ji.contains("value")) ins.value = ji.at("value").get<std::vector<std::int64_t>>();
    ins.shape = ji.at("shape").get<std::int64_t>();
    ins.plain = ji.at("plain").get<bool>();
    c.instructions.push_back(std::move(ins));
  }
  return c;
}

KeyInterface key_interface(const Circuit& c) {
  KeyInterface ki;
  for (const auto& in : c.inputs) {
    if (in.key) {
      ki.k_in.insert(*in.key);
      ++ki.p_naive;
    }
  }
  for (const auto& out : c.outputs) ki.k_out.insert(out.key);
  for (const auto& ins : c.instructions) {
    if (ins.opcode == Opcode::PRE) {
      ++ki.pre_count;
      ki.required_rekeys.insert({*ins.from_key, *ins.key});
    }
  }
  for (const auto& k : ki.k_in)
    if (!ki.k_out.count(k)) ++ki.p_min;
  return ki;
}

bool operator==(const Instruction& a, const Instruction& b) {
  return a.id == b.id && a.opcode == b.opcode && a.args == b.args && a.key == b.key &&
         a.from_key == b.from_key && a.name == b.name && a.value == b.value &&
         a.shape == b.shape && a.plain == b.plain;
}
bool operator==(const CircuitInput& a, const CircuitInput& b) {
  return a.name == b.name && a.party == b.party && a.key == b.key && a.shape == b.shape;
}
bool operator==(const CircuitOutput& a, const CircuitOutput& b) {
  return a.name == b.name && a.party == b.party && a.key == b.key && a.instr_ref == b.instr_ref;
}
bool operator==(const CircuitMetrics& a, const CircuitMetrics& b) {
  return a.mult_depth == b.mult_depth && a.pre_count == b.pre_count &&
         a.max_plain_bits == b.max_plain_bits && a.node_count == b.node_count;
}
bool operator==(const SuggestedParams& a, const SuggestedParams& b) {
  return a.plain_modulus_bits == b.plain_modulus_bits && a.depth_budget == b.depth_budget;
}
bool operator==(const PassReport& a, const PassReport& b) {
  return a.pass == b.pass && a.nodes_removed == b.nodes_removed &&
         a.nodes_added == b.nodes_added && a.pre_inserted == b.pre_inserted &&
         a.warnings == b.warnings;
}

}  // namespace helium
