#include "cohlab/vm/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cohlab/errors.hpp"
#include "cohlab/vm/builder.hpp"

namespace cohlab::vm {

namespace {

std::vector<u32> remaining_positions(u32 arity, const std::vector<std::pair<u32, u64>>& fixed) {
  std::set<u32> fixed_pos;
  for (auto& [pos, value] : fixed) {
    (void)value;
    if (pos >= arity) throw Error("specialize: position out of range");
    if (!fixed_pos.insert(pos).second) throw Error("specialize: duplicate position");
  }
  std::vector<u32> rest;
  for (u32 i = 0; i < arity; ++i)
    if (!fixed_pos.count(i)) rest.push_back(i);
  return rest;
}

}  // namespace

Program specialize(const Program& p, const std::vector<std::pair<u32, u64>>& fixed) {
  std::vector<u32> rest = remaining_positions(p.arity, fixed);
  u32 new_arity = static_cast<u32>(rest.size());

  Program out;
  out.arity = new_arity;
  auto& pro = out.instructions;
  auto emit_move = [&](u8 src, u8 dst) {
    u64 top = pro.size();
    pro.push_back({Opcode::Jz, src, top + 4});
    pro.push_back({Opcode::Dec, src, 0});
    pro.push_back({Opcode::Inc, dst, 0});
    pro.push_back({Opcode::Jmp, 0, top});
  };
  // Shuffle incoming arguments up to their true positions, highest first so
  // every move lands in an already-vacated (or never-used) register.
  for (size_t i = rest.size(); i-- > 0;) {
    if (rest[i] != i) emit_move(static_cast<u8>(i), static_cast<u8>(rest[i]));
  }
  for (auto& [pos, value] : fixed)
    for (u64 v = 0; v < value; ++v)
      pro.push_back({Opcode::Inc, static_cast<u8>(pos), 0});

  u64 off = pro.size();
  for (const auto& ins : p.instructions) {
    Instruction copy = ins;
    if (ins.op == Opcode::Jz || ins.op == Opcode::Jmp) copy.b += off;
    pro.push_back(copy);
  }
  return out;
}

Program make_rejection_searcher(const Program& psi, u64 quant_range) {
  if (psi.arity != 3) throw Error("matrix program must have arity 3");
  if (max_register_used(psi) > 4)
    throw Error("matrix program may only use registers r0..r4");

  constexpr u8 rx = 5, ry1 = 6, ry2 = 7;
  ProgramBuilder b(2);
  auto loop_top = b.fresh_label();
  auto bound_reached = b.fresh_label();
  auto in_range = b.fresh_label();
  auto found = b.fresh_label();
  auto next = b.fresh_label();

  b.move(0, rx);
  b.move(1, ry1);

  b.bind(loop_top);
  for (u8 r = 0; r <= 4; ++r) b.clear(r);
  // Bound check: park forever once y2 reaches the declared range.
  b.copy(ry2, 3, 4);
  b.add_const(0, quant_range);
  {
    auto cmp = b.fresh_label();
    b.bind(cmp);
    b.jz(0, bound_reached);
    b.jz(3, in_range);
    b.dec(0);
    b.dec(3);
    b.jmp(cmp);
  }
  b.bind(in_range);
  b.clear(0);
  // Matrix inputs: r0 = x, r1 = y1, r2 = y2.
  b.copy(ry2, 2, 3);
  b.copy(rx, 0, 3);
  b.copy(ry1, 1, 3);
  b.inline_with_halt_dispatch(psi, {0, 1, 2, 3, 4, 5, 6, 7}, found, next);

  b.bind(found);
  b.halt_imm(1);

  b.bind(next);
  b.inc(ry2);
  b.jmp(loop_top);

  b.bind(bound_reached);
  {
    auto self = b.fresh_label();
    b.bind(self);
    b.jmp(self);
  }
  return b.build();
}

namespace {

struct FlagDiscipline {
  // query site index -> consumer instruction (JZ flag or HALT flag) at +1
  std::set<size_t> query_sites;
};

FlagDiscipline check_flag_discipline(const Program& p, const char* what) {
  FlagDiscipline d;
  const auto& ins = p.instructions;
  std::set<u64> targets;
  for (const auto& i : ins)
    if (i.op == Opcode::Jz || i.op == Opcode::Jmp) targets.insert(i.b);

  for (size_t i = 0; i < ins.size(); ++i) {
    if (ins[i].op == Opcode::Query) {
      if (ins[i].a == kFlagOperand)
        throw Error(std::string(what) + ": QUERY flag is not allowed here");
      bool consumed =
          i + 1 < ins.size() &&
          ((ins[i + 1].op == Opcode::Jz && ins[i + 1].a == kFlagOperand) ||
           (ins[i + 1].op == Opcode::Halt &&
            static_cast<HaltSrc>(ins[i + 1].a) == HaltSrc::Flag));
      if (!consumed)
        throw Error(std::string(what) +
                    ": every QUERY must be followed by JZ flag or HALT flag");
      if (targets.count(i + 1))
        throw Error(std::string(what) + ": a jump lands between QUERY and its consumer");
      d.query_sites.insert(i);
    } else {
      bool reads_flag = (ins[i].op == Opcode::Jz && ins[i].a == kFlagOperand) ||
                        (ins[i].op == Opcode::Halt &&
                         static_cast<HaltSrc>(ins[i].a) == HaltSrc::Flag);
      if (reads_flag && (i == 0 || ins[i - 1].op != Opcode::Query))
        throw Error(std::string(what) + ": flag read without an immediately preceding QUERY");
    }
  }
  return d;
}

}  // namespace

void validate_decider(const Program& p) {
  if (p.arity != 1) throw Error("decider must have arity 1");
  if (max_register_used(p) > 2) throw Error("decider may only use registers r0..r2");
  check_flag_discipline(p, "decider");
}

void validate_consumer(const Program& p) {
  if (p.arity != 1) throw Error("consumer must have arity 1");
  if (max_register_used(p) > 1) throw Error("consumer may only use registers r0..r1");
  check_flag_discipline(p, "consumer");
}

namespace {

// Dovetailing product of the two deciders, emitted as a flat automaton over
// pairs (i, j) of their instruction pointers. One "step" is one instruction,
// except a QUERY and its flag consumer execute atomically so the shared flag
// never has to survive an interleaving boundary.
class DeciderProduct {
 public:
  DeciderProduct(ProgramBuilder& b, const Program& yes, const Program& no,
                 ProgramBuilder::LabelId yes_halted, ProgramBuilder::LabelId no_halted)
      : b_(b), yes_(yes), no_(no), yes_halted_(yes_halted), no_halted_(no_halted) {}

  // Emits the whole automaton starting at (0,0); returns its entry label.
  ProgramBuilder::LabelId emit() {
    auto entry = state_label(0, 0);
    while (!work_.empty()) {
      auto [i, j] = work_.back();
      work_.pop_back();
      emit_state(i, j);
    }
    return entry;
  }

 private:
  using LabelId = ProgramBuilder::LabelId;

  LabelId state_label(size_t i, size_t j) {
    auto key = std::make_pair(i, j);
    auto it = labels_.find(key);
    if (it != labels_.end()) return it->second;
    LabelId l = b_.fresh_label();
    labels_[key] = l;
    work_.push_back(key);
    return l;
  }

  static u8 map_yes(u8 r) { return r; }
  static u8 map_no(u8 r) { return static_cast<u8>(r + 4); }

  // Emits the j-step of the "no" decider, ending with jumps to (i_next, j').
  void emit_no_step(size_t i_next, size_t j) {
    const auto& ins = no_.instructions;
    if (j >= ins.size()) {  // stuck side never acts again
      b_.jmp(state_label(i_next, j));
      return;
    }
    const Instruction& c = ins[j];
    switch (c.op) {
      case Opcode::Inc:
        b_.inc(map_no(c.a));
        b_.jmp(state_label(i_next, j + 1));
        break;
      case Opcode::Dec:
        b_.dec(map_no(c.a));
        b_.jmp(state_label(i_next, j + 1));
        break;
      case Opcode::Jmp:
        b_.jmp(state_label(i_next, c.b));
        break;
      case Opcode::Jz:
        b_.jz(map_no(c.a), state_label(i_next, c.b));
        b_.jmp(state_label(i_next, j + 1));
        break;
      case Opcode::Query: {
        b_.query(map_no(c.a));
        const Instruction& consumer = ins[j + 1];
        if (consumer.op == Opcode::Jz) {
          b_.jz(kFlagOperand, state_label(i_next, consumer.b));
          b_.jmp(state_label(i_next, j + 2));
        } else {
          b_.jmp(no_halted_);
        }
        break;
      }
      case Opcode::Halt:
        b_.jmp(no_halted_);
        break;
    }
  }

  void emit_state(size_t i, size_t j) {
    b_.bind(labels_[{i, j}]);
    const auto& ins = yes_.instructions;
    if (i >= ins.size()) {
      if (j >= no_.instructions.size()) {  // both stuck: diverge
        auto self = b_.fresh_label();
        b_.bind(self);
        b_.jmp(self);
        return;
      }
      emit_no_step(i, j);
      return;
    }
    const Instruction& c = ins[i];
    switch (c.op) {
      case Opcode::Inc:
        b_.inc(map_yes(c.a));
        emit_no_step(i + 1, j);
        break;
      case Opcode::Dec:
        b_.dec(map_yes(c.a));
        emit_no_step(i + 1, j);
        break;
      case Opcode::Jmp:
        emit_no_step(c.b, j);
        break;
      case Opcode::Jz: {
        auto taken = b_.fresh_label();
        b_.jz(map_yes(c.a), taken);
        emit_no_step(i + 1, j);
        b_.bind(taken);
        emit_no_step(c.b, j);
        break;
      }
      case Opcode::Query: {
        b_.query(map_yes(c.a));
        const Instruction& consumer = ins[i + 1];
        if (consumer.op == Opcode::Jz) {
          auto taken = b_.fresh_label();
          b_.jz(kFlagOperand, taken);
          emit_no_step(i + 2, j);
          b_.bind(taken);
          emit_no_step(consumer.b, j);
        } else {
          b_.jmp(yes_halted_);
        }
        break;
      }
      case Opcode::Halt:
        b_.jmp(yes_halted_);
        break;
    }
  }

  ProgramBuilder& b_;
  const Program& yes_;
  const Program& no_;
  LabelId yes_halted_;
  LabelId no_halted_;
  std::map<std::pair<size_t, size_t>, LabelId> labels_;
  std::vector<std::pair<size_t, size_t>> work_;
};

}  // namespace

Program compose_through_deciders(const Program& consumer, const Program& b_yes,
                                 const Program& b_no) {
  validate_consumer(consumer);
  validate_decider(b_yes);
  validate_decider(b_no);

  constexpr u8 save0 = 3, save1 = 7;
  ProgramBuilder b(1);

  const auto& ins = consumer.instructions;
  std::vector<ProgramBuilder::LabelId> at(ins.size() + 1);
  for (auto& l : at) l = b.fresh_label();

  for (size_t i = 0; i < ins.size(); ++i) {
    b.bind(at[i]);
    const Instruction& c = ins[i];
    switch (c.op) {
      case Opcode::Inc: b.inc(c.a); break;
      case Opcode::Dec: b.dec(c.a); break;
      case Opcode::Jmp: b.jmp(at[c.b]); continue;
      case Opcode::Jz: b.jz(c.a, at[c.b]); break;
      case Opcode::Halt:
        switch (static_cast<HaltSrc>(c.a)) {
          case HaltSrc::Imm: b.halt_imm(c.b); break;
          case HaltSrc::Reg: b.halt_reg(static_cast<u8>(c.b)); break;
          case HaltSrc::Flag: throw Error("unreachable: flag discipline");
        }
        break;
      case Opcode::Query: {
        // Replace the query about B with a dovetailed run of both deciders.
        const Instruction& cons = ins[i + 1];
        auto yes_halted = b.fresh_label();
        auto no_halted = b.fresh_label();

        b.move(0, save0);
        b.move(1, save1);
        u8 save_of_queried = c.a == 0 ? save0 : save1;
        b.copy(save_of_queried, 0, 1);  // decider input (yes side)
        b.copy(0, 4, 1);                // decider input (no side)

        DeciderProduct product(b, b_yes, b_no, yes_halted, no_halted);
        auto entry = product.emit();
        // product.emit() emits states after this point; enter explicitly.
        (void)entry;

        auto emit_restore = [&]() {
          for (u8 r : {u8{0}, u8{1}, u8{2}, u8{4}, u8{5}, u8{6}}) b.clear(r);
          b.move(save0, 0);
          b.move(save1, 1);
        };

        b.bind(yes_halted);
        emit_restore();
        if (cons.op == Opcode::Jz) {
          b.jmp(at[i + 2]);  // flag would be 1: fall through the JZ
        } else {
          b.halt_imm(1);
        }
        b.bind(no_halted);
        emit_restore();
        if (cons.op == Opcode::Jz) {
          b.jmp(at[cons.b]);  // flag would be 0: take the jump
        } else {
          b.halt_imm(0);
        }
        ++i;  // the consumer is fused into the gadget
        continue;
      }
    }
  }
  b.bind(at[ins.size()]);
  {
    auto self = b.fresh_label();
    b.bind(self);
    b.jmp(self);
  }
  return b.build();
}

}  // namespace cohlab::vm
