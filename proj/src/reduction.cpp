#include "cohlab/sets/reduction.hpp"

#include <map>

#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"
#include "cohlab/vm/builder.hpp"
#include "cohlab/vm/godel.hpp"
#include "cohlab/vm/transform.hpp"

namespace cohlab::sets {

u64 WttReduction::bound(u64 x) const {
  u64 args[1] = {x};
  auto r = vm::run(bound_program, args, vm::empty_oracle_view(), bound_eval_budget);
  if (!r.halted()) throw Error("bound program did not halt on " + std::to_string(x));
  return r.value;
}

WttAnswer wtt_apply(const WttReduction& r, const Oracle& oracle, u64 x) {
  u64 b = r.bound(x);
  vm::RunLimits limits;
  limits.step_budget = b;
  limits.query_value_cap = b;
  limits.log_queries = true;
  u64 args[1] = {x};
  auto res = vm::run_ex(r.program, args, oracle.view(), limits);
  switch (res.status) {
    case vm::RunStatus::Halted: {
      WttAnswer a;
      a.bit = res.value != 0 ? 1 : 0;
      a.queries = std::move(res.query_log);
      a.steps = res.steps;
      return a;
    }
    case vm::RunStatus::UseCapExceeded:
      throw BoundViolation("query value " + std::to_string(*res.blocked_value) +
                           " reached the bound " + std::to_string(b) + " on input " +
                           std::to_string(x));
    default:
      throw BoundViolation("run exceeded " + std::to_string(b) + " steps on input " +
                           std::to_string(x));
  }
}

Sigma2Descriptor Sigma2Descriptor::from_program(vm::Program psi, Oracle env,
                                                u64 step_budget, u64 x_range,
                                                u64 quant_range) {
  if (psi.arity != 3) throw Error("Sigma2 matrix must have arity 3");
  if (vm::max_register_used(psi) > 4)
    throw Error("Sigma2 matrix may only use registers r0..r4");
  Sigma2Descriptor d;
  d.prog_ = ProgBacking{psi, env, step_budget};
  d.fn_ = [psi = std::move(psi), env = std::move(env), step_budget](u64 x, u64 y1,
                                                                    u64 y2) -> bool {
    u64 args[3] = {x, y1, y2};
    auto r = vm::run(psi, args, env.view(), step_budget);
    if (!r.halted())
      throw OracleBudgetError("Sigma2 matrix did not settle within its budget");
    return r.value != 0;
  };
  d.x_range_ = x_range;
  d.quant_range_ = quant_range;
  return d;
}

Sigma2Descriptor Sigma2Descriptor::from_fn(MatrixFn fn, u64 x_range, u64 quant_range) {
  Sigma2Descriptor d;
  d.fn_ = std::move(fn);
  d.x_range_ = x_range;
  d.quant_range_ = quant_range;
  return d;
}

bool Sigma2Descriptor::matrix(u64 x, u64 y1, u64 y2) const { return fn_(x, y1, y2); }

bool Sigma2Descriptor::brute_force_member(u64 x) const {
  for (u64 y1 = 0; y1 < quant_range_; ++y1) {
    bool all = true;
    for (u64 y2 = 0; y2 < quant_range_; ++y2) {
      if (!matrix(x, y1, y2)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

namespace {

// Reduction program for the Sigma1(jump) form: on input x, walk y1 through
// the quantifier range keeping r3 = pair(x, y1) (Cantor successor step:
// pair(x, y1+1) = pair(x, y1) + x + y1 + 1) and ask the keyed jump view. A
// "no" answer means the searcher for (x, y1) diverges, i.e. the inner block
// holds, so accept.
vm::Program build_keyed_reduction(u64 quant_range) {
  using vm::ProgramBuilder;
  ProgramBuilder b(1);
  auto accept = b.fresh_label();

  // r3 = pair(x, 0) = x(x+1)/2 + x: triangle via r1 countdown, then + x.
  b.copy(0, 1, 2);
  {
    auto top = b.fresh_label();
    auto done = b.fresh_label();
    b.bind(top);
    b.jz(1, done);
    b.copy(1, 3, 2);
    b.dec(1);
    b.jmp(top);
    b.bind(done);
  }
  b.copy(0, 3, 2);

  for (u64 y1 = 0; y1 < quant_range; ++y1) {
    if (y1 > 0) {
      // pair(x, y1) = pair(x, y1 - 1) + x + y1
      b.copy(0, 3, 2);
      b.add_const(3, y1);
    }
    b.query(3);
    b.jz(vm::kFlagOperand, accept);
  }
  b.halt_imm(0);
  b.bind(accept);
  b.halt_imm(1);
  return b.build();
}

// Step-and-use bound k * (x + shift)^2, computed in-machine. Quadratic so it
// dominates the reduction's triangle-number arithmetic at every x.
vm::Program build_quadratic_bound(u64 k, u64 shift) {
  using vm::ProgramBuilder;
  ProgramBuilder b(1);
  b.move(0, 1);
  b.add_const(1, shift);  // r1 = x + shift
  b.copy(1, 2, 3);        // r2 = r1 (outer counter)
  {
    auto top = b.fresh_label();
    auto done = b.fresh_label();
    b.bind(top);
    b.jz(2, done);
    b.dec(2);
    b.copy(1, 4, 3);  // r4 += r1
    b.jmp(top);
    b.bind(done);
  }
  // r5 = k * r4
  {
    auto top = b.fresh_label();
    auto done = b.fresh_label();
    b.bind(top);
    b.jz(4, done);
    b.dec(4);
    b.add_const(5, k);
    b.jmp(top);
    b.bind(done);
  }
  b.halt_reg(5);
  return b.build();
}

}  // namespace

bool PostReduction::member(u64 x) const {
  return wtt_apply(reduction, keyed_jump_view, x).bit != 0;
}

PostReduction post_reduce(const Sigma2Descriptor& phi, u64 jump_cap) {
  if (!phi.is_program_backed())
    throw Error("post_reduce needs a program-backed Sigma2 descriptor");

  vm::Program searcher = vm::make_rejection_searcher(phi.psi(), phi.quant_range());

  PostReduction out;
  out.x_range = phi.x_range();
  out.quant_range = phi.quant_range();
  out.jump_cap = jump_cap;

  std::map<u64, bool> keyed_bits;
  out.searcher_indices.resize(phi.x_range());
  for (u64 x = 0; x < phi.x_range(); ++x) {
    for (u64 y1 = 0; y1 < phi.quant_range(); ++y1) {
      vm::Program inst = vm::specialize(
          searcher, {{0u, x}, {1u, y1}});
      Nat idx = vm::encode(inst);
      out.searcher_indices[x].push_back(idx);
      HaltDecision d = decide_halting(idx, phi.env(), jump_cap);
      if (d.status == HaltStatus::Unknown)
        throw UndecidableAtCap("searcher for (" + std::to_string(x) + ", " +
                               std::to_string(y1) + ") undecided at cap " +
                               std::to_string(jump_cap));
      keyed_bits[pair_u64(x, y1)] = d.status == HaltStatus::Halts;
    }
  }
  out.keyed_jump_view = Oracle::table(std::move(keyed_bits), false);

  out.reduction.program = build_keyed_reduction(phi.quant_range());
  u64 q = phi.quant_range();
  out.reduction.bound_program = build_quadratic_bound(40, q + 2);
  out.reduction.bound_eval_budget = 8'000'000;
  return out;
}

vm::Program compose_reduction(const vm::Program& b_yes_from_a,
                              const vm::Program& b_no_from_a,
                              const vm::Program& c_from_b, const Oracle& a,
                              u64 check_range, u64 check_budget) {
  for (u64 x = 0; x < check_range; ++x) {
    u64 args[1] = {x};
    bool yes = vm::run_detecting(b_yes_from_a, args, a.view(), check_budget).halted();
    bool no = vm::run_detecting(b_no_from_a, args, a.view(), check_budget).halted();
    if (yes == no)
      throw Error("B-programs are not complementary at " + std::to_string(x) +
                  (yes ? " (both halt)" : " (neither settles at the check budget)"));
  }
  return vm::compose_through_deciders(c_from_b, b_yes_from_a, b_no_from_a);
}

}  // namespace cohlab::sets
