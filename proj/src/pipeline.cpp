#include "cohlab/constructions/pipeline.hpp"

#include "cohlab/errors.hpp"
#include "cohlab/trees/tree.hpp"

namespace cohlab::constructions {

namespace {

sets::Oracle prefix_oracle(const std::vector<u8>& bits) {
  std::map<u64, bool> t;
  for (size_t i = 0; i < bits.size(); ++i) t[i] = bits[i] != 0;
  return sets::Oracle::table(std::move(t), false);
}

sets::Oracle link_top(const sets::Oracle& top, const PipelineLink& link) {
  return sets::Oracle::join(top, prefix_oracle(link.next_top_prefix));
}

}  // namespace

PipelineChain ideal_pipeline(const sets::Oracle& start,
                             const std::vector<PipelineTreeSpec>& specs) {
  PipelineChain chain;
  sets::Oracle top = start;
  for (const auto& spec : specs) {
    try {
      sets::Oracle jump_view = sets::Oracle::capped_jump(top, spec.jump_cap);
      trees::TruncatedTree tree = trees::TruncatedTree::from_program(
          spec.tree_program, jump_view, spec.tree_step_budget, spec.depth);
      PipelineLink link;
      link.path =
          simpson_smith_path(tree, spec.formulas, jump_view, spec.formula_step_cap);

      sets::Oracle path_set = prefix_oracle(link.path.path_prefix.bits());
      link.inversion = friedberg_invert(top, path_set, spec.inversion);
      auto fragment = coded_fragment(link.inversion);
      if (fragment.size() < link.path.path_prefix.length())
        throw Error("inversion coded only " + std::to_string(fragment.size()) +
                    " bits, path needs " +
                    std::to_string(link.path.path_prefix.length()));
      for (size_t k = 0; k < link.path.path_prefix.length(); ++k)
        if (fragment[k] != link.path.path_prefix.bit(k))
          throw Error("coded fragment disagrees with the path at " + std::to_string(k));

      for (u8 b : link.inversion.b_prefix.bits()) link.next_top_prefix.push_back(b);
      top = link_top(top, link);
      chain.links.push_back(std::move(link));
    } catch (const Error& e) {
      chain.completed = false;
      chain.abort_reason = e.what();
      break;
    }
  }
  return chain;
}

sets::Oracle chain_top(const sets::Oracle& start, const PipelineChain& chain,
                       size_t upto) {
  sets::Oracle top = start;
  for (size_t i = 0; i < upto && i < chain.links.size(); ++i)
    top = link_top(top, chain.links[i]);
  return top;
}

}  // namespace cohlab::constructions
