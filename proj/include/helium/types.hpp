#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace helium {

using KeyLabel = std::string;
using PartyId = std::string;

enum class Secrecy { Const, Plain, Cipher };

// Scalar or fixed-size integer vector, with a secrecy qualifier. Key labels
// live on graph nodes, not in the type: they are assigned by the PRE pass.
struct ValueType {
  std::optional<std::int64_t> vec_len;  // nullopt => scalar
  Secrecy secrecy = Secrecy::Cipher;

  bool is_scalar() const { return !vec_len.has_value(); }
  bool is_vector() const { return vec_len.has_value(); }
  // Payload length: scalars evaluate as length-1 vectors.
  std::int64_t len() const { return vec_len.value_or(1); }

  bool operator==(const ValueType&) const = default;

  static ValueType scalar(Secrecy s) { return {std::nullopt, s}; }
  static ValueType vector(std::int64_t n, Secrecy s) { return {n, s}; }
};

std::string to_string(const ValueType& t);

enum class BinOpKind { Add, Sub, Mul, Pow, RotL, RotR };

// Shape/secrecy promotion per the built-in operation table: scalars broadcast
// against vectors, vector lengths must match, rotations take a vector lhs and
// a Const rhs, exponents must be Const. Throws CompileError(Type).
ValueType promote(const ValueType& lhs, const ValueType& rhs, BinOpKind op);

}  // namespace helium
