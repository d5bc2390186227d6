#include "cohlab/trees/tree.hpp"

#include <algorithm>

#include "cohlab/errors.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::trees {

TreeSnapshot::TreeSnapshot(std::vector<u64> sorted_codes, u64 depth)
    : codes_(std::move(sorted_codes)), depth_(depth) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  recompute_viability();
}

TreeSnapshot TreeSnapshot::full(u64 depth) {
  std::vector<u64> codes;
  codes.reserve((u64{2} << depth) - 1);
  for (u64 c = 1; c < (u64{2} << depth); ++c) codes.push_back(c);
  return TreeSnapshot(std::move(codes), depth);
}

bool TreeSnapshot::contains(u64 code) const {
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

void TreeSnapshot::recompute_viability() {
  viable_marks_.clear();
  // Walk codes from largest to smallest: a node is marked when it has depth
  // length or a marked child.
  for (auto it = codes_.rbegin(); it != codes_.rend(); ++it) {
    u64 c = *it;
    u64 len = 63 - static_cast<u64>(__builtin_clzll(c));
    if (len == depth_ || viable_marks_.count(c * 2) || viable_marks_.count(c * 2 + 1))
      viable_marks_.insert(c);
  }
}

bool TreeSnapshot::viable() const { return viable_marks_.count(1) > 0; }

bool TreeSnapshot::viable_above(const BinaryString& s) const {
  return viable_marks_.count(s.code()) > 0;
}

BinaryString TreeSnapshot::leftmost_viable_extension(const BinaryString& s) const {
  if (!contains(s)) throw DeadEnd("node " + s.text() + " is not in the tree");
  if (s.length() >= depth_) throw DeadEnd("node " + s.text() + " is at max depth");
  for (u8 b : {u8{0}, u8{1}}) {
    BinaryString child = s.extended(b);
    if (viable_marks_.count(child.code())) return child;
  }
  throw DeadEnd("no viable extension above " + s.text());
}

BinaryString TreeSnapshot::leftmost_path() const {
  BinaryString cur;
  if (!viable()) throw DeadEnd("tree has no node at its depth");
  while (cur.length() < depth_) cur = leftmost_viable_extension(cur);
  return cur;
}

TreeSnapshot TreeSnapshot::filtered(
    const std::function<bool(const BinaryString&)>& keep) const {
  std::vector<u64> kept;
  for (u64 c : codes_) {
    if (keep(BinaryString::from_code(c))) kept.push_back(c);
  }
  // Prune anything whose parent was dropped, root-down.
  std::vector<u64> closed;
  std::set<u64> present;
  for (u64 c : kept) {
    if (c == 1 || present.count(c / 2)) {
      closed.push_back(c);
      present.insert(c);
    }
  }
  return TreeSnapshot(std::move(closed), depth_);
}

TreeSnapshot TreeSnapshot::restricted_above(const BinaryString& s) const {
  u64 sc = s.code();
  u64 slen = s.length();
  std::vector<u64> kept;
  for (u64 c : codes_) {
    u64 len = 63 - static_cast<u64>(__builtin_clzll(c));
    if (len <= slen) {
      // c must be a prefix of s
      if (sc >> (slen - len) == c) kept.push_back(c);
    } else {
      if (c >> (len - slen) == sc) kept.push_back(c);
    }
  }
  return TreeSnapshot(std::move(kept), depth_);
}

TruncatedTree TruncatedTree::from_program(vm::Program p, sets::Oracle env,
                                          u64 step_budget, u64 depth) {
  if (p.arity != 1) throw Error("tree membership program must have arity 1");
  TruncatedTree t;
  t.prog_ = ProgBacking{p, env, step_budget};
  t.pred_ = [p = std::move(p), env = std::move(env), step_budget](const BinaryString& s) {
    u64 args[1] = {s.code()};
    auto r = vm::run(p, args, env.view(), step_budget);
    if (!r.halted())
      throw OracleBudgetError("tree membership program exceeded its budget on " +
                              s.text());
    return r.value != 0;
  };
  t.depth_ = depth;
  return t;
}

TruncatedTree TruncatedTree::from_predicate(Predicate pred, u64 depth) {
  TruncatedTree t;
  t.pred_ = std::move(pred);
  t.depth_ = depth;
  return t;
}

TruncatedTree TruncatedTree::from_nodes(std::vector<u64> codes, u64 depth) {
  TruncatedTree t;
  std::sort(codes.begin(), codes.end());
  t.explicit_ = true;
  t.explicit_nodes_ = codes;
  t.pred_ = [codes = std::move(codes)](const BinaryString& s) {
    return std::binary_search(codes.begin(), codes.end(), s.code());
  };
  t.depth_ = depth;
  return t;
}

TruncatedTree TruncatedTree::with_stage_snapshots(std::vector<TreeSnapshot> stages) const {
  if (stages.empty()) throw Error("stage family must have at least one stage");
  TruncatedTree t = *this;
  t.stages_ = std::move(stages);
  return t;
}

const TreeSnapshot& TruncatedTree::stage(u64 s) const {
  if (stages_.empty()) throw Error("tree has no stage family");
  return stages_[std::min<u64>(s, stages_.size() - 1)];
}

bool TruncatedTree::member(const BinaryString& s) const { return pred_(s); }

TreeSnapshot TruncatedTree::materialize(u64 node_budget) const {
  u64 total = (u64{2} << depth_) - 1;
  if (total > node_budget)
    throw BudgetExceeded("materializing depth " + std::to_string(depth_) +
                         " needs " + std::to_string(total) + " membership checks");
  std::vector<u64> nodes;
  std::vector<u8> in(total + 1, 0);
  for (u64 c = 1; c <= total; ++c) {
    BinaryString s = BinaryString::from_code(c);
    if (pred_(s)) {
      in[c] = 1;
      if (c != 1 && !in[c / 2])
        throw NotATree(BinaryString::from_code(c / 2).text(),
                       "membership accepts " + s.text() + " but not its parent " +
                           BinaryString::from_code(c / 2).text());
      nodes.push_back(c);
    }
  }
  return TreeSnapshot(std::move(nodes), depth_);
}

bool viable(const TruncatedTree& t, u64 node_budget) {
  return t.materialize(node_budget).viable();
}

}  // namespace cohlab::trees
