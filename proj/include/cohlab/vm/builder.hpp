#pragma once

#include <string>
#include <vector>

#include "cohlab/vm/program.hpp"

namespace cohlab::vm {

/// Emits instructions with symbolic labels resolved at build().
class ProgramBuilder {
 public:
  explicit ProgramBuilder(u32 arity) { program_.arity = arity; }

  using LabelId = size_t;

  LabelId fresh_label();
  void bind(LabelId label);  // label points at the next emitted instruction

  void inc(u8 reg);
  void dec(u8 reg);
  void jz(u8 reg_or_flag, LabelId target);
  void jmp(LabelId target);
  void query(u8 reg_or_flag);
  void halt_imm(u64 value);
  void halt_reg(u8 reg);
  void halt_flag();

  /// r[dst] += value via unrolled INCs.
  void add_const(u8 reg, u64 value);
  /// r[dst] := 0 (drain loop).
  void clear(u8 reg);
  /// r[dst] := r[src], r[src] := 0. dst must already be 0.
  void move(u8 src, u8 dst);
  /// r[dst] := r[src], preserving r[src], clobbering r[tmp]. dst and tmp must be 0.
  void copy(u8 src, u8 dst, u8 tmp);

  /// Appends another program's instructions, remapping its registers by
  /// `reg_map` (size kRegisterCount, flag maps to itself) and its jump targets
  /// into the emitted range. Each HALT is replaced by a jump to on_zero or
  /// on_nonzero depending on the halt value (tested at runtime for register
  /// and flag sources). Used to run a subprogram for its accept/reject bit.
  void inline_with_halt_dispatch(const Program& sub, const std::vector<u8>& reg_map,
                                 LabelId on_zero, LabelId on_nonzero);

  Program build();  // resolves labels; throws Error on unbound labels

  size_t next_index() const { return program_.instructions.size(); }

 private:
  void emit(Instruction ins, LabelId pending = kNoLabel);

  static constexpr LabelId kNoLabel = static_cast<LabelId>(-1);
  Program program_;
  std::vector<size_t> label_pos_;       // label -> instruction index
  std::vector<std::pair<size_t, LabelId>> fixups_;
};

/// Largest register index an instruction of p touches (flag ignored), or -1
/// if none. Register conventions for composable programs are validated with
/// this.
int max_register_used(const Program& p);

}  // namespace cohlab::vm
