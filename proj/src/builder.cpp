#include "cohlab/vm/builder.hpp"

#include "cohlab/errors.hpp"

namespace cohlab::vm {

ProgramBuilder::LabelId ProgramBuilder::fresh_label() {
  label_pos_.push_back(static_cast<size_t>(-1));
  return label_pos_.size() - 1;
}

void ProgramBuilder::bind(LabelId label) {
  label_pos_[label] = program_.instructions.size();
}

void ProgramBuilder::emit(Instruction ins, LabelId pending) {
  if (pending != kNoLabel) fixups_.emplace_back(program_.instructions.size(), pending);
  program_.instructions.push_back(ins);
}

void ProgramBuilder::inc(u8 reg) { emit({Opcode::Inc, reg, 0}); }
void ProgramBuilder::dec(u8 reg) { emit({Opcode::Dec, reg, 0}); }
void ProgramBuilder::jz(u8 r, LabelId t) { emit({Opcode::Jz, r, 0}, t); }
void ProgramBuilder::jmp(LabelId t) { emit({Opcode::Jmp, 0, 0}, t); }
void ProgramBuilder::query(u8 r) { emit({Opcode::Query, r, 0}); }
void ProgramBuilder::halt_imm(u64 v) {
  emit({Opcode::Halt, static_cast<u8>(HaltSrc::Imm), v});
}
void ProgramBuilder::halt_reg(u8 reg) {
  emit({Opcode::Halt, static_cast<u8>(HaltSrc::Reg), reg});
}
void ProgramBuilder::halt_flag() {
  emit({Opcode::Halt, static_cast<u8>(HaltSrc::Flag), 0});
}

void ProgramBuilder::add_const(u8 reg, u64 value) {
  for (u64 i = 0; i < value; ++i) inc(reg);
}

void ProgramBuilder::clear(u8 reg) {
  LabelId top = fresh_label();
  LabelId done = fresh_label();
  bind(top);
  jz(reg, done);
  dec(reg);
  jmp(top);
  bind(done);
}

void ProgramBuilder::move(u8 src, u8 dst) {
  LabelId top = fresh_label();
  LabelId done = fresh_label();
  bind(top);
  jz(src, done);
  dec(src);
  inc(dst);
  jmp(top);
  bind(done);
}

void ProgramBuilder::copy(u8 src, u8 dst, u8 tmp) {
  LabelId top = fresh_label();
  LabelId done = fresh_label();
  bind(top);
  jz(src, done);
  dec(src);
  inc(dst);
  inc(tmp);
  jmp(top);
  bind(done);
  move(tmp, src);
}

void ProgramBuilder::inline_with_halt_dispatch(const Program& sub,
                                               const std::vector<u8>& reg_map,
                                               LabelId on_zero, LabelId on_nonzero) {
  size_t base = program_.instructions.size();
  // Local labels for each instruction index of sub (and one past its end).
  std::vector<LabelId> local(sub.instructions.size() + 1);
  for (auto& l : local) l = fresh_label();

  auto mapped = [&](u8 a) -> u8 {
    return a == kFlagOperand ? kFlagOperand : reg_map[a];
  };

  for (size_t i = 0; i < sub.instructions.size(); ++i) {
    bind(local[i]);
    const Instruction& ins = sub.instructions[i];
    switch (ins.op) {
      case Opcode::Inc: inc(mapped(ins.a)); break;
      case Opcode::Dec: dec(mapped(ins.a)); break;
      case Opcode::Jz: jz(mapped(ins.a), local[ins.b]); break;
      case Opcode::Jmp: jmp(local[ins.b]); break;
      case Opcode::Query: query(mapped(ins.a)); break;
      case Opcode::Halt:
        switch (static_cast<HaltSrc>(ins.a)) {
          case HaltSrc::Imm:
            jmp(ins.b == 0 ? on_zero : on_nonzero);
            break;
          case HaltSrc::Reg:
            jz(mapped(static_cast<u8>(ins.b)), on_zero);
            jmp(on_nonzero);
            break;
          case HaltSrc::Flag:
            jz(kFlagOperand, on_zero);
            jmp(on_nonzero);
            break;
        }
        break;
    }
  }
  // Falling off sub's end is a stuck (diverging) configuration; reproduce it.
  bind(local[sub.instructions.size()]);
  LabelId self = fresh_label();
  bind(self);
  jmp(self);
  (void)base;
}

Program ProgramBuilder::build() {
  for (auto& [index, label] : fixups_) {
    size_t pos = label_pos_[label];
    if (pos == static_cast<size_t>(-1)) throw Error("unbound label in builder");
    program_.instructions[index].b = pos;
  }
  fixups_.clear();
  if (program_.instructions.empty()) throw Error("builder produced an empty program");
  return program_;
}

int max_register_used(const Program& p) {
  int m = -1;
  for (const auto& ins : p.instructions) {
    switch (ins.op) {
      case Opcode::Inc:
      case Opcode::Dec:
        m = std::max(m, static_cast<int>(ins.a));
        break;
      case Opcode::Jz:
      case Opcode::Query:
        if (ins.a != kFlagOperand) m = std::max(m, static_cast<int>(ins.a));
        break;
      case Opcode::Jmp:
        break;
      case Opcode::Halt:
        if (static_cast<HaltSrc>(ins.a) == HaltSrc::Reg)
          m = std::max(m, static_cast<int>(ins.b));
        break;
    }
  }
  return m;
}

}  // namespace cohlab::vm
