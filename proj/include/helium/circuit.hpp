#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "helium/graph.hpp"
#include "helium/passes.hpp"

namespace helium {

enum class Opcode {
  CONST,
  LOAD,
  ADD_CC,
  ADD_CP,
  SUB_CC,
  SUB_CP,
  MUL_CC,
  MUL_CP,
  ROT_L,
  ROT_R,
  PRE,
  STORE,
};

const char* opcode_name(Opcode op);
Opcode opcode_from_name(const std::string& name);

struct Instruction {
  int id = 0;
  Opcode opcode = Opcode::CONST;
  std::vector<int> args;                 // earlier instruction ids only
  std::optional<KeyLabel> key;           // result key for ciphertext results
  std::optional<KeyLabel> from_key;      // PRE source key
  std::string name;                      // LOAD / STORE symbol
  std::vector<std::int64_t> value;       // CONST payload
  std::int64_t shape = 1;                // result vector length
  bool plain = false;                    // result is plaintext/const
};

struct CircuitInput {
  std::string name;
  PartyId party;
  std::optional<KeyLabel> key;  // absent for plain inputs
  std::int64_t shape = 1;
};

struct CircuitOutput {
  std::string name;
  PartyId party;
  KeyLabel key;
  int instr_ref = 0;
};

struct CircuitMetrics {
  int mult_depth = 0;
  int pre_count = 0;
  int max_plain_bits = 0;
  int node_count = 0;
};

struct SuggestedParams {
  int plain_modulus_bits = 0;
  int depth_budget = 0;
};

struct Circuit {
  int version = 1;
  CircuitMetrics metrics;
  SuggestedParams suggested_params;
  std::vector<KeyLabel> keys;  // every key label referenced anywhere
  std::vector<PassReport> pass_reports;
  std::vector<CircuitInput> inputs;
  std::vector<CircuitOutput> outputs;
  std::vector<Instruction> instructions;

  bool operator==(const Circuit&) const = default;
};

bool operator==(const Instruction&, const Instruction&);
bool operator==(const CircuitInput&, const CircuitInput&);
bool operator==(const CircuitOutput&, const CircuitOutput&);
bool operator==(const CircuitMetrics&, const CircuitMetrics&);
bool operator==(const SuggestedParams&, const SuggestedParams&);
bool operator==(const PassReport&, const PassReport&);

// Worst-case magnitude bit width across all nodes, assuming `input_bits`
// per ciphertext/plaintext input: add/sub -> max+1, mul -> sum, rotations
// and PRE unchanged, consts their own width.
int max_plain_bits(const CompGraph& g, int input_bits = 1);

// Lowers the optimized graph, one instruction per node in topo order.
// Throws CompileError(Verify) if key invariants do not hold.
Circuit emit(const CompGraph& g, int input_bits = 1,
             std::vector<PassReport> reports = {});

std::string write_circuit(const Circuit& c);           // canonical JSON text
Circuit read_circuit(const std::string& json_text);    // inverse of write

struct KeyInterface {
  std::set<KeyLabel> k_in;
  std::set<KeyLabel> k_out;
  std::set<std::pair<KeyLabel, KeyLabel>> required_rekeys;
  int pre_count = 0;
  int p_min = 0;    // |K_I \ K_O|
  int p_naive = 0;  // ciphertext input count
};

KeyInterface key_interface(const Circuit& c);

}  // namespace helium
