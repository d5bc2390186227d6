#include "cohlab/sets/oracle.hpp"

#include <mutex>
#include <unordered_map>

#include "cohlab/errors.hpp"
#include "cohlab/sets/jump.hpp"

namespace cohlab::sets {

struct Oracle::Node : vm::OracleView {
  Kind kind;
  // Table
  std::map<u64, bool> entries;
  bool default_bit = false;
  // Program
  vm::Program prog;
  std::shared_ptr<const Node> base;
  u64 budget = 0;
  // Join
  std::shared_ptr<const Node> lhs, rhs;
  // CappedJump
  u64 cap = 0;
  mutable std::unordered_map<u64, bool> cache;
  mutable std::mutex cache_mu;

  bool member(u64 x) const {
    switch (kind) {
      case Kind::Table: {
        auto it = entries.find(x);
        return it == entries.end() ? default_bit : it->second;
      }
      case Kind::Program: {
        u64 args[1] = {x};
        auto r = vm::run(prog, args, *base, budget);
        if (!r.halted())
          throw OracleBudgetError("program-backed oracle exceeded its budget on value " +
                                  std::to_string(x));
        return r.value != 0;
      }
      case Kind::Join:
        return x % 2 == 0 ? lhs->member(x / 2) : rhs->member(x / 2);
      case Kind::CappedJump: {
        {
          std::lock_guard<std::mutex> lock(cache_mu);
          auto it = cache.find(x);
          if (it != cache.end()) return it->second;
        }
        HaltDecision d = decide_halting(Nat(x), Oracle(base), cap);
        if (d.status == HaltStatus::Unknown)
          throw UndecidableAtCap("jump view: index " + std::to_string(x) +
                                 " undecided at cap " + std::to_string(cap));
        bool b = d.status == HaltStatus::Halts;
        std::lock_guard<std::mutex> lock(cache_mu);
        cache.emplace(x, b);
        return b;
      }
    }
    return false;
  }

  Answer ask(u64 x) const override { return member(x) ? Answer::Yes : Answer::No; }
};

Oracle::Oracle() : Oracle(empty_set()) {}

Oracle Oracle::empty_set() { return table({}, false); }

Oracle Oracle::table(std::map<u64, bool> entries, bool default_bit) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Table;
  n->entries = std::move(entries);
  n->default_bit = default_bit;
  return Oracle(std::move(n));
}

Oracle Oracle::from_members(const std::vector<u64>& members) {
  std::map<u64, bool> t;
  for (u64 m : members) t[m] = true;
  return table(std::move(t), false);
}

Oracle Oracle::program(vm::Program p, Oracle base, u64 step_budget) {
  if (p.arity != 1) throw Error("oracle program must have arity 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Program;
  n->prog = std::move(p);
  n->base = base.node_;
  n->budget = step_budget;
  return Oracle(std::move(n));
}

Oracle Oracle::join(Oracle evens_side, Oracle odds_side) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Join;
  n->lhs = evens_side.node_;
  n->rhs = odds_side.node_;
  return Oracle(std::move(n));
}

Oracle Oracle::capped_jump(Oracle base, u64 cap) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CappedJump;
  n->base = base.node_;
  n->cap = cap;
  return Oracle(std::move(n));
}

bool Oracle::contains(u64 x) const { return node_->member(x); }

const vm::OracleView& Oracle::view() const { return *node_; }

Oracle::Kind Oracle::kind() const { return node_->kind; }
const std::map<u64, bool>& Oracle::table_entries() const { return node_->entries; }
bool Oracle::table_default() const { return node_->default_bit; }
const vm::Program& Oracle::backing_program() const { return node_->prog; }
Oracle Oracle::base() const { return Oracle(node_->base); }
u64 Oracle::step_budget() const { return node_->budget; }
u64 Oracle::jump_cap() const { return node_->cap; }
Oracle Oracle::left() const { return Oracle(node_->lhs); }
Oracle Oracle::right() const { return Oracle(node_->rhs); }

}  // namespace cohlab::sets
