#include "helium/types.hpp"

#include "helium/diagnostics.hpp"

namespace helium {

std::string to_string(const ValueType& t) {
  std::string s;
  switch (t.secrecy) {
    case Secrecy::Const: s = "const int"; break;
    case Secrecy::Plain: s = "plain int"; break;
    case Secrecy::Cipher: s = "int"; break;
  }
  if (t.is_vector()) s += "[" + std::to_string(*t.vec_len) + "]";
  return s;
}

namespace {

Secrecy combine(Secrecy a, Secrecy b) {
  if (a == Secrecy::Cipher || b == Secrecy::Cipher) return Secrecy::Cipher;
  if (a == Secrecy::Plain || b == Secrecy::Plain) return Secrecy::Plain;
  return Secrecy::Const;
}

}  // namespace

ValueType promote(const ValueType& lhs, const ValueType& rhs, BinOpKind op) {
  Secrecy sec = combine(lhs.secrecy, rhs.secrecy);

  if (op == BinOpKind::RotL || op == BinOpKind::RotR) {
    if (!lhs.is_vector())
      throw CompileError(ErrorKind::Type, "rotation requires a vector operand");
    if (!rhs.is_scalar() || rhs.secrecy != Secrecy::Const)
      throw CompileError(ErrorKind::Type, "rotation amount must be a constant scalar");
    return ValueType::vector(*lhs.vec_len, sec);
  }
  if (op == BinOpKind::Pow) {
    if (!rhs.is_scalar() || rhs.secrecy != Secrecy::Const)
      throw CompileError(ErrorKind::Type, "exponent must be a non-negative constant");
    return ValueType{lhs.vec_len, sec};
  }

  if (lhs.is_vector() && rhs.is_vector()) {
    if (*lhs.vec_len != *rhs.vec_len)
      throw CompileError(ErrorKind::Type,
                         "vector length mismatch: " + std::to_string(*lhs.vec_len) +
                             " vs " + std::to_string(*rhs.vec_len));
    return ValueType::vector(*lhs.vec_len, sec);
  }
  if (lhs.is_vector()) return ValueType::vector(*lhs.vec_len, sec);
  if (rhs.is_vector()) return ValueType::vector(*rhs.vec_len, sec);
  return ValueType::scalar(sec);
}

}  // namespace helium
