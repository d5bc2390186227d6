#include "cohlab/catalog.hpp"

#include "cohlab/vm/builder.hpp"

namespace cohlab::catalog {

namespace programs {

using vm::kFlagOperand;
using vm::Program;
using vm::ProgramBuilder;

Program halt_const(u64 n) {
  ProgramBuilder b(0);
  b.halt_imm(n);
  return b.build();
}

Program diverger() { return vm::canonical_diverger(); }

Program growing_loop() {
  ProgramBuilder b(0);
  auto top = b.fresh_label();
  b.bind(top);
  b.inc(0);
  b.jmp(top);
  return b.build();
}

Program identity() {
  ProgramBuilder b(1);
  b.halt_reg(0);
  return b.build();
}

Program membership_tester() {
  ProgramBuilder b(1);
  b.query(0);
  b.halt_flag();
  return b.build();
}

Program adder() {
  ProgramBuilder b(2);
  b.move(1, 0);
  b.halt_reg(0);
  return b.build();
}

namespace {

// Emits a parity test on reg: jumps to on_even / on_odd, consuming reg.
void emit_parity(ProgramBuilder& b, u8 reg, ProgramBuilder::LabelId on_even,
                 ProgramBuilder::LabelId on_odd) {
  auto top = b.fresh_label();
  b.bind(top);
  b.jz(reg, on_even);
  b.dec(reg);
  b.jz(reg, on_odd);
  b.dec(reg);
  b.jmp(top);
}

// Emits r[reg] := floor(r[reg] / 2) using tmp (must be 0); the dropped bit
// routes control through on_odd_bit if it was 1 (fall-through when 0).
void emit_halve(ProgramBuilder& b, u8 reg, u8 tmp, ProgramBuilder::LabelId on_done,
                ProgramBuilder::LabelId on_odd_bit) {
  auto top = b.fresh_label();
  auto even_finish = b.fresh_label();
  b.bind(top);
  b.jz(reg, even_finish);
  b.dec(reg);
  b.jz(reg, on_odd_bit);
  b.dec(reg);
  b.inc(tmp);
  b.jmp(top);
  b.bind(even_finish);
  b.move(tmp, reg);
  b.jmp(on_done);
}

}  // namespace

Program evens() {
  ProgramBuilder b(1);
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  emit_parity(b, 0, yes, no);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program family_const1() {
  ProgramBuilder b(2);
  b.halt_imm(1);
  return b.build();
}

Program family_bit() {
  // k in r0, x in r1; halve x k times, then answer its parity.
  ProgramBuilder b(2);
  auto outer = b.fresh_label();
  auto parity = b.fresh_label();
  auto zero = b.fresh_label();
  auto one = b.fresh_label();
  b.bind(outer);
  b.jz(0, parity);
  {
    auto done = b.fresh_label();
    auto odd = b.fresh_label();
    emit_halve(b, 1, 2, done, odd);
    b.bind(odd);  // dropped bit was 1: finish the halving move
    b.move(2, 1);
    b.bind(done);
    b.dec(0);
    b.jmp(outer);
  }
  b.bind(parity);
  emit_parity(b, 1, zero, one);
  b.bind(zero);
  b.halt_imm(0);
  b.bind(one);
  b.halt_imm(1);
  return b.build();
}

Program family_mod(const std::vector<std::pair<u64, u64>>& mod_residue) {
  // k in r0 dispatches to its (modulus, residue) test on x in r1.
  ProgramBuilder b(2);
  std::vector<ProgramBuilder::LabelId> handlers;
  for (size_t i = 0; i < mod_residue.size(); ++i) handlers.push_back(b.fresh_label());
  for (size_t i = 0; i < mod_residue.size(); ++i) {
    b.jz(0, handlers[i]);
    b.dec(0);
  }
  b.halt_imm(1);  // padding beyond the family count
  for (size_t i = 0; i < mod_residue.size(); ++i) {
    auto [m, r] = mod_residue[i];
    b.bind(handlers[i]);
    auto top = b.fresh_label();
    std::vector<ProgramBuilder::LabelId> rem(m);
    for (u64 j = 0; j < m; ++j) rem[j] = b.fresh_label();
    b.bind(top);
    for (u64 j = 0; j < m; ++j) {
      b.jz(1, rem[j]);
      b.dec(1);
    }
    b.jmp(top);
    for (u64 j = 0; j < m; ++j) {
      b.bind(rem[j]);
      b.halt_imm(j == r ? 1 : 0);
    }
  }
  return b.build();
}

Program family_threshold(u64 step) {
  // x >= step * k, with k in r0 and x in r1.
  ProgramBuilder b(2);
  auto outer = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.bind(outer);
  b.jz(0, yes);
  for (u64 j = 0; j < step; ++j) {
    b.jz(1, no);
    b.dec(1);
  }
  b.dec(0);
  b.jmp(outer);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program family_query_shift() {
  ProgramBuilder b(2);
  b.move(0, 1);
  b.query(1);
  b.halt_flag();
  return b.build();
}

Program approx_const(u64 bit) {
  ProgramBuilder b(2);
  b.halt_imm(bit);
  return b.build();
}

Program approx_pattern(const std::vector<u8>& pattern, u64 settle_stage) {
  // 0 before the settle stage, then the per-k pattern bit (1 beyond it).
  ProgramBuilder b(2);
  auto early = b.fresh_label();
  for (u64 j = 0; j < settle_stage; ++j) {
    b.jz(1, early);
    b.dec(1);
  }
  std::vector<ProgramBuilder::LabelId> slots;
  for (size_t i = 0; i < pattern.size(); ++i) slots.push_back(b.fresh_label());
  for (size_t i = 0; i < pattern.size(); ++i) {
    b.jz(0, slots[i]);
    b.dec(0);
  }
  b.halt_imm(1);
  for (size_t i = 0; i < pattern.size(); ++i) {
    b.bind(slots[i]);
    b.halt_imm(pattern[i]);
  }
  b.bind(early);
  b.halt_imm(0);
  return b.build();
}

Program psi_const(u64 bit) {
  ProgramBuilder b(3);
  b.halt_imm(bit);
  return b.build();
}

Program psi_y1_ge_x_plus(u64 c) {
  ProgramBuilder b(3);
  auto top = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.add_const(0, c);
  b.bind(top);
  b.jz(0, yes);
  b.jz(1, no);
  b.dec(0);
  b.dec(1);
  b.jmp(top);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program psi_y1_eq_x() {
  ProgramBuilder b(3);
  auto top = b.fresh_label();
  auto x_done = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.bind(top);
  b.jz(0, x_done);
  b.jz(1, no);
  b.dec(0);
  b.dec(1);
  b.jmp(top);
  b.bind(x_done);
  b.jz(1, yes);
  b.jmp(no);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program psi_y2_lt_x() {
  ProgramBuilder b(3);
  auto top = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.bind(top);
  b.jz(0, no);
  b.jz(2, yes);
  b.dec(0);
  b.dec(2);
  b.jmp(top);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program psi_sum_even() {
  ProgramBuilder b(3);
  auto even = b.fresh_label();
  auto odd = b.fresh_label();
  b.move(2, 1);
  emit_parity(b, 1, even, odd);
  b.bind(even);
  b.halt_imm(1);
  b.bind(odd);
  b.halt_imm(0);
  return b.build();
}

Program psi_x_le_y1_plus_y2() {
  ProgramBuilder b(3);
  auto top = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.move(2, 1);
  b.bind(top);
  b.jz(0, yes);
  b.jz(1, no);
  b.dec(0);
  b.dec(1);
  b.jmp(top);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program psi_bit0_match() {
  ProgramBuilder b(3);
  auto x_even = b.fresh_label();
  auto x_odd = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  emit_parity(b, 0, x_even, x_odd);
  b.bind(x_even);
  emit_parity(b, 1, yes, no);
  b.bind(x_odd);
  emit_parity(b, 1, no, yes);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program psi_env_y1() {
  ProgramBuilder b(3);
  b.query(1);
  b.halt_flag();
  return b.build();
}

Program psi_env_all_y2() {
  ProgramBuilder b(3);
  b.query(2);
  b.halt_flag();
  return b.build();
}

Program psi_y2_ne_y1() {
  ProgramBuilder b(3);
  auto top = b.fresh_label();
  auto y1_done = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.bind(top);
  b.jz(1, y1_done);
  b.jz(2, yes);
  b.dec(1);
  b.dec(2);
  b.jmp(top);
  b.bind(y1_done);
  b.jz(2, no);
  b.jmp(yes);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program formula_halt() {
  ProgramBuilder b(0);
  b.halt_imm(1);
  return b.build();
}

Program formula_diverge() {
  ProgramBuilder b(0);
  auto self = b.fresh_label();
  b.bind(self);
  b.jmp(self);
  return b.build();
}

namespace {

void emit_flag_gate(ProgramBuilder& b, u8 wanted) {
  auto on_zero = b.fresh_label();
  auto div = b.fresh_label();
  b.jz(kFlagOperand, on_zero);
  if (wanted == 1) {
    b.halt_imm(1);
  } else {
    b.jmp(div);
  }
  b.bind(on_zero);
  if (wanted == 0) {
    b.halt_imm(1);
  } else {
    b.jmp(div);
  }
  b.bind(div);
  b.jmp(div);
}

}  // namespace

Program formula_path_bit_is(u64 i, u8 wanted) {
  ProgramBuilder b(0);
  b.add_const(0, 2 * i + 1);
  b.query(0);
  emit_flag_gate(b, wanted);
  return b.build();
}

Program formula_base_bit_is(u64 j, u8 wanted) {
  ProgramBuilder b(0);
  b.add_const(0, 2 * j);
  b.query(0);
  emit_flag_gate(b, wanted);
  return b.build();
}

Program formula_arg_path_bit_is(u8 wanted) {
  ProgramBuilder b(1);
  // r0 := 2*r0 + 1, then query.
  b.move(0, 1);
  auto top = b.fresh_label();
  auto done = b.fresh_label();
  b.bind(top);
  b.jz(1, done);
  b.dec(1);
  b.inc(0);
  b.inc(0);
  b.jmp(top);
  b.bind(done);
  b.inc(0);
  b.query(0);
  emit_flag_gate(b, wanted);
  return b.build();
}

Program tree_full() {
  ProgramBuilder b(1);
  b.halt_imm(1);
  return b.build();
}

namespace {

// Counts the 1 bits of r0 into r2 (clobbers r0, r1); falls through when done.
void emit_popcount(ProgramBuilder& b) {
  auto outer = b.fresh_label();
  auto compare = b.fresh_label();
  b.bind(outer);
  b.jz(0, compare);
  {
    auto done = b.fresh_label();
    auto odd = b.fresh_label();
    emit_halve(b, 0, 1, done, odd);
    b.bind(odd);
    b.inc(2);
    b.move(1, 0);
    b.bind(done);
    b.jmp(outer);
  }
  b.bind(compare);
}

}  // namespace

Program tree_max_ones(u64 max_ones) {
  // The prepend-1 code carries one extra 1; allow max_ones + 1 total.
  ProgramBuilder b(1);
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  emit_popcount(b);
  for (u64 j = 0; j < max_ones + 1; ++j) {
    b.jz(2, yes);
    b.dec(2);
  }
  b.jz(2, yes);
  b.jmp(no);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program tree_jump_gated(u64 index, u64 fallback_max_ones) {
  ProgramBuilder b(1);
  auto restricted = b.fresh_label();
  auto yes = b.fresh_label();
  auto no = b.fresh_label();
  b.add_const(3, index);
  b.query(3);
  b.jz(kFlagOperand, restricted);
  b.halt_imm(1);
  b.bind(restricted);
  emit_popcount(b);
  for (u64 j = 0; j < fallback_max_ones + 1; ++j) {
    b.jz(2, yes);
    b.dec(2);
  }
  b.jz(2, yes);
  b.jmp(no);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(no);
  b.halt_imm(0);
  return b.build();
}

Program decider_in_oracle() {
  ProgramBuilder b(1);
  auto div = b.fresh_label();
  b.query(0);
  b.jz(kFlagOperand, div);
  b.halt_imm(1);
  b.bind(div);
  b.jmp(div);
  return b.build();
}

Program decider_out_oracle() {
  ProgramBuilder b(1);
  auto yes = b.fresh_label();
  auto div = b.fresh_label();
  b.query(0);
  b.jz(kFlagOperand, yes);
  b.bind(div);
  b.jmp(div);
  b.bind(yes);
  b.halt_imm(1);
  return b.build();
}

Program decider_even() {
  ProgramBuilder b(1);
  auto yes = b.fresh_label();
  auto div = b.fresh_label();
  emit_parity(b, 0, yes, div);
  b.bind(div);
  b.jmp(div);
  b.bind(yes);
  b.halt_imm(1);
  return b.build();
}

Program decider_odd() {
  ProgramBuilder b(1);
  auto yes = b.fresh_label();
  auto div = b.fresh_label();
  emit_parity(b, 0, div, yes);
  b.bind(div);
  b.jmp(div);
  b.bind(yes);
  b.halt_imm(1);
  return b.build();
}

Program consumer_adjacent_members() {
  // Halts iff both the input and its successor are members.
  ProgramBuilder b(1);
  auto div = b.fresh_label();
  b.query(0);
  b.jz(kFlagOperand, div);
  b.inc(0);
  b.query(0);
  b.jz(kFlagOperand, div);
  b.halt_imm(1);
  b.bind(div);
  b.jmp(div);
  return b.build();
}

Program consumer_member_below(u64 bound) {
  ProgramBuilder b(1);
  auto div = b.fresh_label();
  auto cmp = b.fresh_label();
  auto yes = b.fresh_label();
  b.query(0);
  b.jz(kFlagOperand, div);
  b.add_const(1, bound);
  b.bind(cmp);
  b.jz(1, div);  // countdown exhausted first: x >= bound
  b.jz(0, yes);
  b.dec(0);
  b.dec(1);
  b.jmp(cmp);
  b.bind(yes);
  b.halt_imm(1);
  b.bind(div);
  b.jmp(div);
  return b.build();
}

Program bound_linear(u64 add) {
  ProgramBuilder b(1);
  b.add_const(0, add);
  b.halt_reg(0);
  return b.build();
}

}  // namespace programs

namespace {

using io::json;
using programs::Program;

json table_oracle(const std::vector<u64>& members, bool default_bit = false) {
  json entries = json::array();
  for (u64 m : members) entries.push_back({m, 1});
  return json{{"kind", "table"}, {"entries", entries}, {"default", default_bit ? 1 : 0}};
}

json empty_oracle() { return table_oracle({}); }

json program_oracle(const Program& p, const json& base, u64 budget) {
  return json{{"kind", "program"},
              {"program", vm::pretty_print(p)},
              {"base", base},
              {"stepBudget", budget}};
}

json evens_oracle() { return program_oracle(programs::evens(), empty_oracle(), 200000); }

json program_family(const Program& p, u64 count, u64 budget = 200000,
                    json base = empty_oracle()) {
  return json{{"kind", "program"},
              {"program", vm::pretty_print(p)},
              {"base", base},
              {"stepBudget", budget},
              {"count", count}};
}

json program_approx(const Program& p, u64 budget = 200000) {
  return json{{"kind", "program"},
              {"program", vm::pretty_print(p)},
              {"base", empty_oracle()},
              {"stepBudget", budget}};
}

json settled_approx(const Program& p, u64 modulus, u64 budget = 200000) {
  json j = program_approx(p, budget);
  j["modulus"] = modulus;
  return j;
}

json instance(const std::string& name, const std::string& kind, json payload) {
  return json{{"schemaVersion", io::kSchemaVersion},
              {"kind", kind},
              {"name", name},
              {"payload", payload}};
}

json cohesive_instance(const std::string& name, json family, json f, u64 count,
                       u64 search_bound, u64 horizon) {
  return instance(name, "cohesive",
                  json{{"family", family},
                       {"f", f},
                       {"count", count},
                       {"searchBound", search_bound},
                       {"horizon", horizon}});
}

// A staged tree growing along `spine`, the sibling cone at each level going
// quiet `gap` stages before the spine side grows past it. Each stage is a
// tree; growth is monotone.
json staged_spine_tree(const std::string& name, const std::string& spine, u64 depth,
                       u64 gap, u64 search_bound) {
  using trees::BinaryString;
  BinaryString sp = BinaryString::from_text(spine);
  u64 stages = gap * (depth + 2);
  json stage_lists = json::array();
  for (u64 s = 0; s < stages; ++s) {
    std::vector<u64> codes{1};
    // Spine prefixes appear progressively, one level per `gap` stages.
    u64 spine_height = std::min<u64>(depth, s / gap + 1);
    for (u64 l = 1; l <= spine_height; ++l)
      codes.push_back(sp.prefix(l).code());
    // Sibling cones: the sibling of spine level l carries a small subtree
    // that stops growing at stage l*gap.
    for (u64 l = 0; l < depth; ++l) {
      BinaryString sibling = sp.prefix(l).extended(1 - sp.bit(l));
      u64 entered = std::min<u64>(s + 1, l * gap + 1);
      // The sibling cone grows one node per stage until its stop stage, as a
      // chain of zeros below the sibling.
      BinaryString node = sibling;
      for (u64 g = 0; g < entered && node.length() <= depth; ++g) {
        codes.push_back(node.code());
        if (node.length() == depth) break;
        node = node.extended(0);
      }
    }
    json arr = json::array();
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (u64 c : codes) arr.push_back(c);
    stage_lists.push_back(arr);
  }
  json tree = json{{"kind", "nodes"},
                   {"nodes", stage_lists.back()},
                   {"depth", depth},
                   {"stages", stage_lists}};
  return instance(name, "triangle",
                  json{{"tree", tree}, {"searchBound", search_bound}, {"extraElements", 8}});
}

json superlow_instance(const std::string& name, json tree, json base,
                       const std::vector<Program>& formulas, u64 cap,
                       const std::vector<u64>& annotated) {
  json fl = json::array();
  for (const auto& f : formulas) fl.push_back(vm::pretty_print(f));
  return instance(name, "superlow",
                  json{{"tree", tree},
                       {"base", base},
                       {"formulas", fl},
                       {"formulaStepCap", cap},
                       {"annotated", annotated}});
}

json inversion_instance(const std::string& name, json a, json c, u64 stages,
                        u64 coded_range) {
  return instance(name, "inversion",
                  json{{"a", a},
                       {"c", c},
                       {"budgets", json{{"stages", stages},
                                        {"widthCap", 256},
                                        {"extLenCap", 5},
                                        {"timeCap", 160}}},
                       {"codedRange", coded_range}});
}

json post_instance(const std::string& name, const Program& psi, json env, u64 x_range,
                   u64 quant_range) {
  return instance(name, "post",
                  json{{"psi", vm::pretty_print(psi)},
                       {"env", env},
                       {"stepBudget", 100000},
                       {"xRange", x_range},
                       {"quantRange", quant_range},
                       {"jumpCap", 400000}});
}

u64 xorshift(u64& state) {
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return state;
}

}  // namespace

std::vector<Entry> instances() {
  using namespace programs;
  std::vector<Entry> out;
  auto add = [&](json j) { out.push_back(Entry{j["name"].get<std::string>(), j}); };

  // --- cohesive suite ------------------------------------------------------
  add(cohesive_instance("cohesive_trivial_full", program_family(family_const1(), 3),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  for (u64 count = 2; count <= 5; ++count) {
    add(cohesive_instance("cohesive_bit_ones_" + std::to_string(count),
                          program_family(family_bit(), count),
                          program_approx(approx_const(1)), 32, 10000, 10000));
  }
  add(cohesive_instance("cohesive_bit_pattern_101",
                        program_family(family_bit(), 3),
                        settled_approx(approx_pattern({1, 0, 1}, 0), 0), 32, 10000, 10000));
  add(cohesive_instance("cohesive_bit_pattern_011",
                        program_family(family_bit(), 3),
                        settled_approx(approx_pattern({0, 1, 1}, 0), 0), 32, 10000, 10000));
  add(cohesive_instance("cohesive_bit_late_settle",
                        program_family(family_bit(), 3),
                        settled_approx(approx_pattern({1, 1, 0}, 24), 24), 36, 10000, 10000));
  add(cohesive_instance("cohesive_bit_late_settle_4",
                        program_family(family_bit(), 4),
                        settled_approx(approx_pattern({0, 1, 0, 1}, 20), 20), 32, 10000,
                        10000));
  add(cohesive_instance("cohesive_mod_2_3",
                        program_family(family_mod({{2, 0}, {3, 0}}), 2),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  add(cohesive_instance("cohesive_mod_2_3_5",
                        program_family(family_mod({{2, 0}, {3, 0}, {5, 0}}), 3),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  add(cohesive_instance("cohesive_mod_mixed",
                        program_family(family_mod({{2, 0}, {3, 1}, {4, 2}}), 3),
                        settled_approx(approx_pattern({1, 0, 1}, 0), 0), 32, 10000, 10000));
  add(cohesive_instance("cohesive_mod_pattern_10",
                        program_family(family_mod({{2, 0}, {3, 0}}), 2),
                        settled_approx(approx_pattern({1, 0}, 0), 0), 32, 10000, 10000));
  add(cohesive_instance("cohesive_threshold_6",
                        program_family(family_threshold(5), 6),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  add(cohesive_instance("cohesive_threshold_8",
                        program_family(family_threshold(5), 8),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  add(cohesive_instance("cohesive_threshold_8_wide",
                        program_family(family_threshold(9), 8),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  add(cohesive_instance("cohesive_query_shift",
                        program_family(family_query_shift(), 3, 400000, evens_oracle()),
                        settled_approx(approx_pattern({1, 0, 1}, 0), 0), 32, 10000,
                        10000));
  {
    // Grid families with periodic columns.
    std::vector<u8> bits;
    u64 seed = 0x9e3779b97f4a7c15ull;
    for (u64 i = 0; i < 4 * 16; ++i) bits.push_back((xorshift(seed) >> 33) & 1);
    // Make the all-ones column recur so a stable pattern has witnesses.
    for (u64 k = 0; k < 4; ++k) bits[k * 16 + 7] = 1, bits[k * 16 + 15] = 1;
    json fam{{"kind", "grid"},
             {"count", 4},
             {"width", 16},
             {"bits", std::string(bits.begin(), bits.end())}};
    std::string text;
    for (u8 b : bits) text.push_back(b ? '1' : '0');
    fam["bits"] = text;
    add(cohesive_instance("cohesive_grid_4", fam, program_approx(approx_const(1)), 32,
                          10000, 10000));
  }
  add(cohesive_instance("cohesive_padded_beyond_count",
                        program_family(family_mod({{3, 2}}), 1),
                        program_approx(approx_const(1)), 40, 10000, 10000));
  add(cohesive_instance("cohesive_osc_then_settle",
                        program_family(family_bit(), 2),
                        settled_approx(approx_pattern({1, 1}, 16), 16), 32, 10000, 10000));
  add(cohesive_instance("cohesive_bit_ones_wide_horizon",
                        program_family(family_bit(), 4),
                        program_approx(approx_const(1)), 34, 10000, 10000));
  add(cohesive_instance("cohesive_mod_7",
                        program_family(family_mod({{7, 3}, {2, 1}}), 2),
                        program_approx(approx_const(1)), 32, 10000, 10000));
  // The full route: elements follow the leftmost path of the family's own
  // pattern tree, approximated stagewise under a witness bound.
  add(cohesive_instance("cohesive_family_path_bit",
                        program_family(family_bit(), 3),
                        json{{"kind", "familyPath"}, {"witnessBound", 256}, {"depth", 3}},
                        32, 10000, 10000));
  add(cohesive_instance("cohesive_family_path_mod",
                        program_family(family_mod({{2, 1}, {3, 2}}), 2),
                        json{{"kind", "familyPath"}, {"witnessBound", 200}, {"depth", 2}},
                        32, 10000, 10000));
  // A run-level negative control: the settled pattern has no witnesses.
  add(cohesive_instance("cohesive_exhausted_control",
                        program_family(family_mod({{2, 0}, {2, 1}}), 2),
                        program_approx(approx_const(1)), 8, 2000, 2000));

  // --- triangle suite ------------------------------------------------------
  add(staged_spine_tree("triangle_spine_000000", "000000", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_111111", "111111", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_010101", "010101", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_101010", "101010", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_001100", "001100", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_110011", "110011", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_011110", "011110", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_100001", "100001", 6, 3, 6000));
  add(staged_spine_tree("triangle_spine_010010", "010010", 6, 4, 6000));
  add(staged_spine_tree("triangle_spine_101101", "101101", 6, 4, 6000));

  // --- superlow suite ------------------------------------------------------
  {
    json full8{{"kind", "program"},
               {"program", vm::pretty_print(tree_full())},
               {"base", empty_oracle()},
               {"stepBudget", 1000},
               {"depth", 8}};
    add(superlow_instance("superlow_full_path_bits", full8, evens_oracle(),
                          {formula_path_bit_is(0, 1), formula_halt(),
                           formula_path_bit_is(2, 0), formula_diverge()},
                          3000, {0, 1, 2, 3}));
    add(superlow_instance("superlow_full_base_bits", full8, evens_oracle(),
                          {formula_base_bit_is(2, 1), formula_base_bit_is(3, 1),
                           formula_path_bit_is(1, 1)},
                          3000, {0, 1, 2}));
    json ones10{{"kind", "program"},
                {"program", vm::pretty_print(tree_max_ones(2))},
                {"base", empty_oracle()},
                {"stepBudget", 60000},
                {"depth", 10}};
    add(superlow_instance("superlow_maxones_10", ones10, empty_oracle(),
                          {formula_path_bit_is(0, 1), formula_path_bit_is(1, 0),
                           formula_halt(), formula_diverge(),
                           formula_path_bit_is(4, 1)},
                          4000, {0, 1, 2, 3, 4}));
    json ones12{{"kind", "program"},
                {"program", vm::pretty_print(tree_max_ones(1))},
                {"base", empty_oracle()},
                {"stepBudget", 200000},
                {"depth", 12}};
    add(superlow_instance("superlow_maxones_12", ones12, evens_oracle(),
                          {formula_path_bit_is(0, 0), formula_base_bit_is(1, 1),
                           formula_path_bit_is(3, 0), formula_halt(),
                           formula_diverge(), formula_base_bit_is(4, 1)},
                          4000, {0, 1, 2, 3, 4, 5}));
    json full6{{"kind", "program"},
               {"program", vm::pretty_print(tree_full())},
               {"base", empty_oracle()},
               {"stepBudget", 1000},
               {"depth", 6}};
    add(superlow_instance("superlow_budget_zero", full6, empty_oracle(), {}, 1000, {}));
    std::vector<u64> chain_nodes;
    {
      // Explicit tree: the all-zeros path plus a one-step detour per level.
      trees::BinaryString cur;
      chain_nodes.push_back(cur.code());
      for (u64 l = 0; l < 9; ++l) {
        chain_nodes.push_back(cur.extended(1).code());
        cur = cur.extended(0);
        chain_nodes.push_back(cur.code());
      }
    }
    json explicit9{{"kind", "nodes"}, {"nodes", chain_nodes}, {"depth", 9}};
    add(superlow_instance("superlow_explicit_chain", explicit9, empty_oracle(),
                          {formula_path_bit_is(0, 1), formula_diverge(),
                           formula_path_bit_is(5, 1)},
                          3000, {0, 1, 2}));
  }

  // --- inversion suite -----------------------------------------------------
  {
    u64 stages = 70;
    add(inversion_instance("inversion_empty_empty", empty_oracle(), empty_oracle(),
                           stages, 16));
    add(inversion_instance("inversion_empty_evens", empty_oracle(), evens_oracle(),
                           stages, 16));
    add(inversion_instance("inversion_evens_empty", evens_oracle(), empty_oracle(),
                           stages, 16));
    add(inversion_instance("inversion_evens_evens", evens_oracle(), evens_oracle(),
                           stages, 16));
    add(inversion_instance("inversion_table_c",
                           empty_oracle(), table_oracle({1, 2, 3, 5, 8, 13}), stages, 16));
    add(inversion_instance("inversion_table_a",
                           table_oracle({0, 2, 3, 7, 9, 11, 14}), evens_oracle(), stages,
                           16));
    u64 seed = 0x2545f4914f6cdd1dull;
    for (int i = 0; i < 4; ++i) {
      std::vector<u64> ca, cc;
      for (u64 v = 0; v < 24; ++v) {
        if (xorshift(seed) & 2) ca.push_back(v);
        if (xorshift(seed) & 4) cc.push_back(v);
      }
      add(inversion_instance("inversion_random_" + std::to_string(i), table_oracle(ca),
                             table_oracle(cc), stages, 16));
    }
  }

  // --- post suite ----------------------------------------------------------
  add(post_instance("post_always_accept", psi_const(1), empty_oracle(), 16, 32));
  add(post_instance("post_always_reject", psi_const(0), empty_oracle(), 16, 32));
  add(post_instance("post_y1_ge_x", psi_y1_ge_x_plus(0), empty_oracle(), 16, 32));
  add(post_instance("post_y1_gt_x", psi_y1_ge_x_plus(1), empty_oracle(), 16, 16));
  add(post_instance("post_y1_ge_x_plus4", psi_y1_ge_x_plus(4), empty_oracle(), 16, 12));
  add(post_instance("post_y1_eq_x", psi_y1_eq_x(), empty_oracle(), 16, 16));
  add(post_instance("post_y1_eq_x_small", psi_y1_eq_x(), empty_oracle(), 16, 8));
  add(post_instance("post_y2_lt_x", psi_y2_lt_x(), empty_oracle(), 16, 8));
  add(post_instance("post_y2_lt_x_wide", psi_y2_lt_x(), empty_oracle(), 16, 12));
  add(post_instance("post_sum_even", psi_sum_even(), empty_oracle(), 16, 8));
  add(post_instance("post_x_le_y1_plus_y2", psi_x_le_y1_plus_y2(), empty_oracle(), 16,
                    8));
  add(post_instance("post_bit0_match", psi_bit0_match(), empty_oracle(), 16, 16));
  add(post_instance("post_env_y1", psi_env_y1(), evens_oracle(), 16, 8));
  add(post_instance("post_env_all_y2", psi_env_all_y2(), evens_oracle(), 16, 8));
  add(post_instance("post_y2_ne_y1", psi_y2_ne_y1(), empty_oracle(), 16, 8));
  add(post_instance("post_y2_ne_y1_wide", psi_y2_ne_y1(), empty_oracle(), 16, 12));

  // --- regularize suite ----------------------------------------------------
  {
    u64 seed = 0x853c49e6748fea9bull;
    for (int i = 0; i < 20; ++i) {
      std::vector<u64> members;
      for (u64 v = 0; v < 32; ++v)
        if (xorshift(seed) & 1) members.push_back(v);
      json anchors = json::array();
      u64 s_off = 1 + (xorshift(seed) % 5);
      for (u64 n = 0; n < 24; ++n) anchors.push_back({n, n + s_off});
      add(instance("regularize_random_" + std::to_string(i), "regularize",
                   json{{"c", table_oracle(members)}, {"anchors", anchors}}));
    }
  }

  // --- spector suite -------------------------------------------------------
  add(instance("spector_single_empty", "spector",
               json{{"sets", json::array({empty_oracle()})},
                    {"q", {0}},
                    {"colBound", 64},
                    {"stageBudget", 200},
                    {"extLen", 5}}));
  add(instance("spector_evens_empty", "spector",
               json{{"sets", json::array({evens_oracle(), empty_oracle()})},
                    {"q", {0, 8}},
                    {"colBound", 64},
                    {"stageBudget", 200},
                    {"extLen", 5}}));
  add(instance("spector_three_sets", "spector",
               json{{"sets", json::array({evens_oracle(),
                                          table_oracle({1, 3, 5, 7, 9, 21}),
                                          table_oracle({4, 8, 15, 16, 23, 42})})},
                    {"q", {0, 4, 9}},
                    {"colBound", 64},
                    {"stageBudget", 200},
                    {"extLen", 5}}));

  // --- pipeline demo -------------------------------------------------------
  {
    json spec0{{"treeProgram", vm::pretty_print(tree_jump_gated(34, 0))},
               {"depth", 6},
               {"formulas",
                json::array({json{{"program",
                                   vm::pretty_print(formula_arg_path_bit_is(1))},
                                  {"argument", 0}}})},
               {"jumpCap", 4000},
               {"treeStepBudget", 20000},
               {"formulaStepCap", 400},
               {"inversion", json{{"stages", 20},
                                  {"widthCap", 256},
                                  {"extLenCap", 4},
                                  {"timeCap", 80}}}};
    json spec1{{"treeProgram", vm::pretty_print(tree_jump_gated(19, 1))},
               {"depth", 6},
               {"formulas", json::array()},
               {"jumpCap", 4000},
               {"treeStepBudget", 20000},
               {"formulaStepCap", 400},
               {"inversion", json{{"stages", 20},
                                  {"widthCap", 256},
                                  {"extLenCap", 4},
                                  {"timeCap", 80}}}};
    add(instance("pipeline_two_trees", "pipeline",
                 json{{"start", empty_oracle()},
                      {"treeSpecs", json::array({spec0, spec1})}}));
  }

  return out;
}

std::vector<std::string> failing_run_names() {
  return {"cohesive_exhausted_control"};
}

}  // namespace cohlab::catalog
