#include "cohlab/vm/godel.hpp"

#include <optional>

#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"

namespace cohlab::vm {

namespace {

constexpr u64 kAuxCap = 65536;            // jump targets and HALT immediates
constexpr u64 kOperandCap = 16;           // register / flag / halt kind
constexpr u64 kDigitBase = 6 * kOperandCap * kAuxCap;
constexpr u64 kLengthCap = kAuxCap - 1;  // keeps one-past-end targets encodable

std::optional<u64> instruction_digit(const Instruction& ins, u64 program_len) {
  u64 op = static_cast<u64>(ins.op);
  u64 a = ins.a;
  u64 b = ins.b;
  switch (ins.op) {
    case Opcode::Inc:
    case Opcode::Dec:
      if (a >= kRegisterCount || b != 0) return std::nullopt;
      break;
    case Opcode::Jz:
      if (a > kFlagOperand || b > program_len) return std::nullopt;
      break;
    case Opcode::Jmp:
      if (a != 0 || b > program_len) return std::nullopt;
      break;
    case Opcode::Query:
      if (a > kFlagOperand || b != 0) return std::nullopt;
      break;
    case Opcode::Halt:
      switch (static_cast<HaltSrc>(ins.a)) {
        case HaltSrc::Imm:
          if (b >= kAuxCap) return std::nullopt;
          break;
        case HaltSrc::Reg:
          if (b >= kRegisterCount) return std::nullopt;
          break;
        case HaltSrc::Flag:
          if (b != 0) return std::nullopt;
          break;
        default:
          return std::nullopt;
      }
      break;
  }
  return op + 6 * (a + kOperandCap * b);
}

std::optional<Instruction> instruction_from_digit(u64 d, u64 program_len) {
  if (d >= kDigitBase) return std::nullopt;
  Instruction ins;
  u64 op = d % 6;
  u64 rest = d / 6;
  u64 a = rest % kOperandCap;
  u64 b = rest / kOperandCap;
  ins.op = static_cast<Opcode>(op);
  ins.a = static_cast<u8>(a);
  ins.b = b;
  switch (ins.op) {
    case Opcode::Inc:
    case Opcode::Dec:
      if (a >= kRegisterCount || b != 0) return std::nullopt;
      break;
    case Opcode::Jz:
      if (a > kFlagOperand || b > program_len) return std::nullopt;
      break;
    case Opcode::Jmp:
      if (a != 0 || b > program_len) return std::nullopt;
      break;
    case Opcode::Query:
      if (a > kFlagOperand || b != 0) return std::nullopt;
      break;
    case Opcode::Halt:
      if (a > static_cast<u64>(HaltSrc::Flag)) return std::nullopt;
      if (static_cast<HaltSrc>(ins.a) == HaltSrc::Reg && b >= kRegisterCount)
        return std::nullopt;
      if (static_cast<HaltSrc>(ins.a) == HaltSrc::Flag && b != 0) return std::nullopt;
      break;
  }
  return ins;
}

std::optional<Program> decode_valid(const Nat& index) {
  if (index <= 0) return std::nullopt;
  Nat m = index - 1;
  auto [digits, rest] = unpair_nat(m);
  auto [len_nat, arity_nat] = unpair_nat(rest);
  if (len_nat < 1 || len_nat > kLengthCap) return std::nullopt;
  if (arity_nat > kRegisterCount) return std::nullopt;
  u64 len = static_cast<u64>(len_nat);
  u64 arity = static_cast<u64>(arity_nat);

  Program p;
  p.arity = static_cast<u32>(arity);
  Nat d = digits;
  for (u64 i = 0; i < len; ++i) {
    u64 digit = static_cast<u64>(d % kDigitBase);
    d /= kDigitBase;
    auto ins = instruction_from_digit(digit, len);
    if (!ins) return std::nullopt;
    p.instructions.push_back(*ins);
  }
  if (d != 0) return std::nullopt;  // digits must fit the declared length
  return p;
}

}  // namespace

Nat encode(const Program& p) {
  if (p.instructions.empty() || p.instructions.size() > kLengthCap)
    throw EncodeError("program length out of the index space");
  Nat digits = 0;
  Nat base = 1;
  for (const auto& ins : p.instructions) {
    auto d = instruction_digit(ins, p.instructions.size());
    if (!d) throw EncodeError("instruction operand exceeds the index space caps");
    digits += Nat(*d) * base;
    base *= kDigitBase;
  }
  return 1 + pair_nat(digits, pair_nat(Nat(p.instructions.size()), Nat(p.arity)));
}

Program decode(const Nat& index) {
  auto p = decode_valid(index);
  return p ? *p : canonical_diverger();
}

bool is_valid_index(const Nat& index) { return decode_valid(index).has_value(); }

}  // namespace cohlab::vm
