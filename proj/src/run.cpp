#include "cohlab/vm/run.hpp"

#include <cassert>

#include "cohlab/errors.hpp"

namespace cohlab::vm {

namespace {

bool never(u64) { return false; }
const FnOracleView kEmptyView{&never};

enum class StepOutcome : u8 { Running, Halted, Blocked, UseCap };

struct Machine {
  const Program& p;
  const OracleView& oracle;
  MachineConfig cfg;
  u64 steps = 0;
  u64 max_query = 0;
  bool queried = false;
  u64 halt_value = 0;
  u64 blocked_value = 0;
  u64 query_value_cap = kNoQueryCap;
  std::vector<u64>* query_log = nullptr;

  Machine(const Program& prog, std::span<const u64> args, const OracleView& o)
      : p(prog), oracle(o) {
    assert(args.size() == p.arity);
    for (size_t i = 0; i < args.size(); ++i) cfg.regs[i] = args[i];
  }

  u64 read_operand_reg(u8 a) const {
    return a == kFlagOperand ? cfg.flag : cfg.regs[a];
  }

  StepOutcome step() {
    if (cfg.pc >= p.instructions.size()) {
      // Stuck configuration: never halts, costs steps, never changes.
      ++steps;
      return StepOutcome::Running;
    }
    const Instruction& ins = p.instructions[cfg.pc];
    ++steps;
    switch (ins.op) {
      case Opcode::Inc:
        ++cfg.regs[ins.a];
        ++cfg.pc;
        break;
      case Opcode::Dec:
        if (cfg.regs[ins.a] > 0) --cfg.regs[ins.a];
        ++cfg.pc;
        break;
      case Opcode::Jz:
        cfg.pc = read_operand_reg(ins.a) == 0 ? ins.b : cfg.pc + 1;
        break;
      case Opcode::Jmp:
        cfg.pc = ins.b;
        break;
      case Opcode::Query: {
        u64 v = read_operand_reg(ins.a);
        if (v >= query_value_cap) {
          blocked_value = v;
          return StepOutcome::UseCap;
        }
        auto ans = oracle.ask(v);
        if (ans == OracleView::Answer::Blocked) {
          blocked_value = v;
          return StepOutcome::Blocked;
        }
        if (query_log) query_log->push_back(v);
        queried = true;
        if (v > max_query) max_query = v;
        cfg.flag = ans == OracleView::Answer::Yes ? 1 : 0;
        ++cfg.pc;
        break;
      }
      case Opcode::Halt:
        switch (static_cast<HaltSrc>(ins.a)) {
          case HaltSrc::Imm: halt_value = ins.b; break;
          case HaltSrc::Reg: halt_value = cfg.regs[ins.b]; break;
          case HaltSrc::Flag: halt_value = cfg.flag; break;
        }
        return StepOutcome::Halted;
    }
    return StepOutcome::Running;
  }

  u64 use() const { return queried ? max_query + 1 : 0; }
};

RunResult finish(Machine& m, StepOutcome last, u64 budget_left) {
  RunResult r;
  r.steps = m.steps;
  r.use = m.use();
  if (m.query_log) r.query_log = std::move(*m.query_log);
  switch (last) {
    case StepOutcome::Halted:
      r.status = RunStatus::Halted;
      r.value = m.halt_value;
      break;
    case StepOutcome::Blocked:
      r.status = RunStatus::Blocked;
      r.blocked_value = m.blocked_value;
      break;
    case StepOutcome::UseCap:
      r.status = RunStatus::UseCapExceeded;
      r.blocked_value = m.blocked_value;
      break;
    case StepOutcome::Running:
      r.status = RunStatus::StillRunning;
      r.steps = m.steps + budget_left;  // stuck runs still consume the budget
      break;
  }
  return r;
}

}  // namespace

const OracleView& empty_oracle_view() { return kEmptyView; }

RunResult run_ex(const Program& p, std::span<const u64> args, const OracleView& oracle,
                 const RunLimits& limits) {
  Machine m(p, args, oracle);
  m.query_value_cap = limits.query_value_cap;
  std::vector<u64> log;
  if (limits.log_queries) m.query_log = &log;

  for (u64 i = 0; i < limits.step_budget; ++i) {
    StepOutcome out = m.step();
    if (out != StepOutcome::Running) return finish(m, out, 0);
    if (m.cfg.pc >= p.instructions.size()) {
      // The configuration can no longer change; drain the budget in one go.
      u64 left = limits.step_budget - (i + 1);
      return finish(m, StepOutcome::Running, left);
    }
  }
  RunResult r = finish(m, StepOutcome::Running, 0);
  r.steps = limits.step_budget;
  return r;
}

RunResult run(const Program& p, std::span<const u64> args, const OracleView& oracle,
              u64 step_budget) {
  return run_ex(p, args, oracle, RunLimits{step_budget});
}

RunResult run_detecting(const Program& p, std::span<const u64> args,
                        const OracleView& oracle, u64 step_budget) {
  // Brent's cycle finding over the deterministic configuration sequence.
  Machine hare(p, args, oracle);
  MachineConfig tortoise_cfg = hare.cfg;
  u64 power = 1, lam = 0;
  bool found = false;

  StepOutcome out = StepOutcome::Running;
  while (hare.steps < step_budget) {
    if (lam == power) {
      tortoise_cfg = hare.cfg;
      power *= 2;
      lam = 0;
    }
    out = hare.step();
    ++lam;
    if (out == StepOutcome::Halted) {
      return finish(hare, out, 0);
    }
    if (out == StepOutcome::Blocked || out == StepOutcome::UseCap) {
      return finish(hare, out, 0);
    }
    if (hare.cfg == tortoise_cfg) {
      found = true;
      break;
    }
  }
  if (!found) {
    RunResult r;
    r.status = RunStatus::StillRunning;
    r.steps = step_budget;
    r.use = hare.use();
    return r;
  }

  // Cycle of length lam exists. Find its first step mu by walking two copies
  // lam steps apart.
  Machine front(p, args, oracle);
  for (u64 i = 0; i < lam; ++i) front.step();
  Machine back(p, args, oracle);
  u64 mu = 0;
  while (!(front.cfg == back.cfg)) {
    front.step();
    back.step();
    ++mu;
  }

  RunResult r;
  r.status = RunStatus::Diverges;
  r.steps = hare.steps;
  r.use = hare.use();
  r.loop = LoopCertificate{mu, mu + lam, back.cfg};
  return r;
}

bool validate_loop_certificate(const Program& p, std::span<const u64> args,
                               const OracleView& oracle, const LoopCertificate& cert) {
  if (cert.step_a >= cert.step_b) return false;
  Machine m(p, args, oracle);
  for (u64 i = 0; i < cert.step_a; ++i) {
    if (m.step() != StepOutcome::Running) return false;
  }
  if (!(m.cfg == cert.repeated)) return false;
  for (u64 i = cert.step_a; i < cert.step_b; ++i) {
    if (m.step() != StepOutcome::Running) return false;
  }
  return m.cfg == cert.repeated;
}

}  // namespace cohlab::vm
