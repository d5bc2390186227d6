#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cohlab/nat.hpp"

namespace cohlab::vm {

/// Register machine with 8 registers r0..r7 plus a query flag. QUERY asks the
/// oracle about the value of its register and writes 0/1 into the flag. The
/// flag is readable (JZ, HALT, QUERY) but only QUERY writes it.
enum class Opcode : u8 { Inc, Dec, Jz, Jmp, Query, Halt };

enum class HaltSrc : u8 { Imm, Reg, Flag };

inline constexpr int kRegisterCount = 8;
inline constexpr u8 kFlagOperand = 8;  // pseudo register index for "flag"

struct Instruction {
  Opcode op{Opcode::Halt};
  // Inc/Dec/Query: a = register (Query may also name the flag).
  // Jz: a = register or flag, b = target instruction index.
  // Jmp: b = target.
  // Halt: a = HaltSrc as u8; b = immediate (Imm) or register (Reg), 0 for Flag.
  u8 a{0};
  u64 b{0};

  bool operator==(const Instruction&) const = default;
};

struct Program {
  std::vector<Instruction> instructions;
  u32 arity{0};

  bool operator==(const Program&) const = default;
  size_t size() const { return instructions.size(); }
};

/// Parses the line-oriented assembly format:
///   # comment
///   ARITY n
///   label: OPCODE operand[, operand]
/// Inputs arrive in r0..r(arity-1); all other registers and the flag start 0.
/// Throws ParseError with a line number on malformed input, out-of-range
/// registers, or undefined labels.
Program parse_program(std::string_view text);

/// Canonical text form: "ARITY n" header, one instruction per line, a "Lk:"
/// label prefix exactly on jump targets, single-space separators, LF endings.
/// parse_program(pretty_print(p)) is structurally equal to p.
std::string pretty_print(const Program& p);

/// The program every invalid index decodes to: a one-instruction self-loop.
Program canonical_diverger();

}  // namespace cohlab::vm
