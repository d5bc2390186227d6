#pragma once

#include <string>
#include <vector>

#include "cohlab/io/documents.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::catalog {

/// The bundled program library. Everything here is built with the program
/// builder and shipped as assembly text inside instance documents.
namespace programs {

vm::Program halt_const(u64 n);
vm::Program diverger();           // JMP to itself
vm::Program growing_loop();       // INC then JMP back: never repeats a configuration
vm::Program identity();           // arity 1, halts with its argument
vm::Program membership_tester();  // arity 1: QUERY r0; HALT flag
vm::Program adder();              // arity 2, halts with r0 + r1
vm::Program evens();              // arity 1 membership: 1 iff even

/// family (k, x) programs, arity 2
vm::Program family_const1();
vm::Program family_bit();                 // bit k of x
vm::Program family_mod(const std::vector<std::pair<u64, u64>>& mod_residue);
vm::Program family_threshold(u64 step);   // x >= step * k
vm::Program family_query_shift();         // oracle(x + k)

/// approximation (x, s) programs, arity 2
vm::Program approx_const(u64 bit);
vm::Program approx_pattern(const std::vector<u8>& pattern, u64 settle_stage);

/// Sigma2 matrices, arity 3 over r0..r4
vm::Program psi_const(u64 bit);
vm::Program psi_y1_ge_x_plus(u64 c);
vm::Program psi_y1_eq_x();
vm::Program psi_y2_lt_x();
vm::Program psi_sum_even();
vm::Program psi_x_le_y1_plus_y2();
vm::Program psi_bit0_match();   // bit0(y1) == bit0(x)
vm::Program psi_env_y1();       // oracle(y1)
vm::Program psi_env_all_y2();   // oracle(y2)
vm::Program psi_y2_ne_y1();

/// superlow / generic-path formulas (oracle = base joined with the path)
vm::Program formula_halt();
vm::Program formula_diverge();
vm::Program formula_path_bit_is(u64 i, u8 wanted);  // arity 0
vm::Program formula_base_bit_is(u64 j, u8 wanted);  // arity 0
vm::Program formula_arg_path_bit_is(u8 wanted);     // arity 1: bit at the argument

/// tree membership programs, arity 1 on string codes
vm::Program tree_full();
vm::Program tree_max_ones(u64 max_ones);  // at most that many 1 bits in the code
vm::Program tree_jump_gated(u64 index, u64 fallback_max_ones);

/// reduction pieces
vm::Program decider_in_oracle();    // halts iff the oracle holds the input
vm::Program decider_out_oracle();   // halts iff it does not
vm::Program decider_even();         // halts iff the input is even
vm::Program decider_odd();
vm::Program consumer_member_below(u64 bound);  // halts iff queried and < bound
vm::Program consumer_adjacent_members();       // halts iff input and input+1 queried
vm::Program bound_linear(u64 add);  // arity 1: x + add

}  // namespace programs

struct Entry {
  std::string name;
  io::json instance;
};

/// Every bundled instance, in a stable order.
std::vector<Entry> instances();

/// Names of the negative-control instances whose *runs* are expected to fail
/// (as opposed to tampered certificates, which catgen derives).
std::vector<std::string> failing_run_names();

}  // namespace cohlab::catalog
